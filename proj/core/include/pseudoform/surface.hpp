#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudoform/complex.hpp"

namespace pseudoform {

enum class SurfaceName { Sphere, RP2, Torus, Klein, Other };

struct SurfaceClass {
  int euler_characteristic = 0;
  bool orientable = true;
  SurfaceName name = SurfaceName::Other;

  bool is_sphere() const { return name == SurfaceName::Sphere; }
  /// "S2", "RP2", "T2", "K2", or "chi=<n>,orientable|nonorientable".
  std::string to_string() const;
  friend bool operator==(const SurfaceClass&, const SurfaceClass&) = default;
};

/// A closed connected triangulated surface: pure 2-dimensional, every edge in
/// exactly two triangles, every vertex link a single cycle, connected.
class Surface {
 public:
  /// Throws Error(NotASurface) naming the first violated condition.
  explicit Surface(SimplicialComplex triangles);
  static Surface from_triangles(const std::vector<std::vector<Vertex>>& triples);

  const SimplicialComplex& complex() const { return complex_; }
  const std::vector<Face>& triangles() const { return complex_.facets(); }

 private:
  SimplicialComplex complex_;
};

/// Describes why `s` is not a closed connected surface, or nullopt if it is.
std::optional<std::string> closed_surface_defect(const SimplicialComplex& s);

/// χ = V - E + F; orientability by propagating triangle orientations across
/// shared edges.
SurfaceClass classify_surface(const Surface& s);

/// Orientability of any pure 2-complex whose edges lie in at most two triangles.
bool is_orientable(const SimplicialComplex& s);

enum class Neighborhood { Annulus, Moebius };
enum class SideKind { Disc, MoebiusStrip, Other };

std::string to_string(Neighborhood n);
std::string to_string(SideKind s);

struct CutReport {
  std::vector<Vertex> cycle;
  bool is_cycle_in_surface = true;
  bool separates = false;
  Neighborhood neighborhood = Neighborhood::Annulus;
  std::size_t components_after_cut = 1;
  /// One entry per piece when the cycle separates, ordered like the pieces.
  std::vector<SideKind> side_descriptions;
};

/// The surface cut open along a cycle. Every cycle vertex c is split into
/// two copies: triangles on one side of c keep the label c, triangles on the
/// other side use a fresh label recorded in `glue`.
struct SurfaceCut {
  CutReport report;
  /// Cut triangles grouped per connected piece; piece 0 holds the smallest
  /// original triangle.
  std::vector<SimplicialComplex> pieces;
  /// Piece index of each triangle of the input surface (aligned with
  /// Surface::triangles()).
  std::vector<std::size_t> piece_of_triangle;
  /// Fresh label -> original cycle vertex.
  std::map<Vertex, Vertex> glue;
};

/// Cuts `s` along the simple cycle (c0, c1, ..., c_{n-1}). Throws
/// Error(NotACycle) if the vertices repeat, n < 3, or some consecutive pair is
/// not an edge of s.
SurfaceCut cut_surface(const Surface& s, std::span<const Vertex> cycle);
CutReport cycle_cut(const Surface& s, std::span<const Vertex> cycle);

/// Cut report of lk(v) along ∂t for a missing triangle t of lk(v).
/// Throws Error(Precondition) if lk(v) is not a closed surface, ∂t is not in
/// lk(v) or t itself is in lk(v).
CutReport missing_triangle_neighborhood(const SimplicialComplex& k, Vertex v, const Face& t);

}  // namespace pseudoform
