#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pseudoform/complex.hpp"
#include "pseudoform/moves.hpp"
#include "pseudoform/reducer.hpp"

namespace pseudoform {

enum class GeneratorKind { BoundarySimplex, StackedSphere, CrossPolytope, RandomMoves };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::BoundarySimplex;
  /// Facet subdivisions for StackedSphere.
  std::size_t subdivisions = 0;
  std::uint64_t seed = 0;
  /// RandomMoves: number of moves to attempt.
  std::size_t budget = 0;
  bool allow_fold = false;
  bool allow_handle = false;
  /// RandomMoves never lets g2 exceed this.
  std::int64_t g2_cap = 9;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// "simplex", "cross", "stacked:<k>[:<seed>]",
/// "random:<seed>:<budget>[:cap=<n>][:fold][:handle]".
GeneratorSpec parse_generator_spec(std::string_view text);
std::string format_generator_spec(const GeneratorSpec& spec);

struct Generated {
  SimplicialComplex complex;
  ConstructionTrace trace;
  /// RandomMoves ran out of applicable moves before the budget was spent.
  bool exhausted = false;
};

/// Same spec, same output. Stacked spheres subdivide the facet at index
/// rng() % f3 (std::mt19937_64 seeded with `seed`) of the sorted facet list
/// each round. RandomMoves starts from the boundary of a 4-simplex and each
/// round picks a move kind uniformly among those with an admissible site
/// under the cap, then a site uniformly within that kind.
Generated generate(const GeneratorSpec& spec);

struct GluingSite {
  Face s1;
  Face s2;
  GluingMap psi;

  friend bool operator==(const GluingSite&, const GluingSite&) = default;
};

/// Lexicographically smallest (s1 < s2, psi) admissible handle gluing.
std::optional<GluingSite> find_admissible_handle(const SimplicialComplex& k, PathMetric metric = PathMetric::Skeleton);
/// Lexicographically smallest admissible edge folding.
std::optional<GluingSite> find_admissible_fold(const SimplicialComplex& k);
/// Every admissible edge folding, in lexicographic order.
std::vector<GluingSite> admissible_folds(const SimplicialComplex& k);

/// First stacked sphere (fewest subdivisions, then smallest seed) with an
/// admissible fold.
std::optional<GeneratorSpec> search_foldable_stacked_sphere(std::size_t max_subdivisions, std::uint64_t max_seed);

}  // namespace pseudoform
