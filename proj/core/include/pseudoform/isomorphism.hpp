#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "pseudoform/complex.hpp"

namespace pseudoform {

struct IsoOptions {
  /// Backtracking nodes allowed before giving up with Error(Inconclusive).
  std::size_t node_budget = 2'000'000;
};

/// A vertex bijection a -> b carrying facets onto facets, or nullopt when
/// none exists. Vertices are first partitioned by joint colour refinement
/// (degree, facet count, link face counts, link surface type, then
/// neighbourhood colour multisets) and only same-colour candidates are tried.
std::optional<std::map<Vertex, Vertex>> find_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                                                         const IsoOptions& options = {});

bool are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b, const IsoOptions& options = {});

}  // namespace pseudoform
