#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pseudoform/complex.hpp"
#include "pseudoform/surface.hpp"

namespace pseudoform {

enum class Verdict { NormalClosed, NotNormal };

struct NormalityReport {
  bool is_pure = true;
  /// Triangles lying in a number of facets other than two.
  std::vector<Face> ridge_failures;
  /// Vertices and edges whose link is disconnected.
  std::vector<Face> disconnected_links;
  bool is_connected = true;
  /// Vertices whose link is not a closed connected surface at all.
  std::vector<Vertex> non_surface_links;
  std::vector<std::pair<Vertex, SurfaceClass>> singular_vertices;
  Verdict verdict = Verdict::NotNormal;

  bool normal() const { return verdict == Verdict::NormalClosed; }
  /// One line per failure, empty for a normal complex.
  std::vector<std::string> problems() const;
};

/// Never throws; every failure is recorded in the report.
NormalityReport validate_normal(const SimplicialComplex& k);

/// Class of lk(v) when it is a closed surface.
std::optional<SurfaceClass> link_class(const SimplicialComplex& k, Vertex v);

/// Vertices whose link is a closed surface other than the sphere, ascending.
std::vector<Vertex> singular_vertices(const SimplicialComplex& k);

}  // namespace pseudoform
