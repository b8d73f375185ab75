#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pseudoform/face.hpp"

namespace pseudoform {

/// A finite simplicial complex stored by its facets (maximal faces).
///
/// The face lattice is derived once at construction; afterwards the value is
/// immutable, so sharing it between threads needs no synchronization.
/// Faces of each dimension, vertices and neighbour lists are kept sorted.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Deduplicates and drops faces contained in other faces. Non-pure input is
  /// accepted; is_pure() reports it.
  explicit SimplicialComplex(std::vector<Face> facets);

  /// Builds a 3-dimensional complex from vertex quadruples.
  /// Throws Error(MalformedFacet) on a quadruple with repeated labels.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& quads);

  const std::vector<Face>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertex_labels_; }
  /// Faces of the given dimension (0..4); empty for other dimensions.
  const std::vector<Face>& faces(int dim) const;
  std::size_t num_faces(int dim) const { return faces(dim).size(); }

  /// Dimension of the largest facet, -1 for the empty complex.
  int dimension() const { return dimension_; }
  bool is_pure() const { return pure_; }
  bool empty() const { return facets_.empty(); }

  bool contains(const Face& f) const;
  bool contains_vertex(Vertex v) const;
  bool has_facet(const Face& f) const;
  bool adjacent(Vertex u, Vertex v) const;

  /// Sorted neighbours in the 1-skeleton.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  /// Facets containing `v`, in sorted order.
  std::vector<Face> facets_containing(Vertex v) const;
  std::vector<Face> facets_containing(const Face& f) const;
  std::size_t count_facets_containing(const Face& f) const;

  /// Largest label, or nullopt for the empty complex.
  std::optional<Vertex> max_label() const;
  /// max_label() + 1, or 0 for the empty complex.
  Vertex next_label() const;

  std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.facets_ == b.facets_;
  }

 private:
  std::size_t index_of(Vertex v) const;

  std::vector<Face> facets_;
  std::array<std::vector<Face>, Face::kMaxSize> faces_;
  std::vector<Vertex> vertex_labels_;
  std::vector<std::vector<std::uint32_t>> incidence_;  // per vertex index
  std::vector<std::vector<Vertex>> adjacency_;         // per vertex index
  int dimension_ = -1;
  bool pure_ = true;

  static const std::vector<Face> no_faces_;
};

struct FVector {
  std::array<std::int64_t, 4> f{};  // f0..f3
  std::array<std::int64_t, 5> h{};  // h0..h4
  std::int64_t g2 = 0;
  std::int64_t g3 = 0;

  std::int64_t f0() const { return f[0]; }
  std::int64_t f1() const { return f[1]; }
  std::int64_t f2() const { return f[2]; }
  std::int64_t f3() const { return f[3]; }

  /// Fills h, g2, g3 from f with the d = 3 transform
  /// h_k = sum_{i<=k} (-1)^(k-i) C(4-i, k-i) f_{i-1}, f_{-1} = 1.
  static FVector from_counts(std::array<std::int64_t, 4> counts);

  friend bool operator==(const FVector&, const FVector&) = default;
};

/// Face counts of a pure 3-dimensional complex. Throws Error(Dimension) otherwise.
FVector f_vector(const SimplicialComplex& k);

/// f1 - 4 f0 + 10.
std::int64_t g2(const SimplicialComplex& k);
/// f1 - 3 f0 + 6 for a 2-dimensional complex (vertex links).
std::int64_t surface_g2(const SimplicialComplex& s);
/// Sum of g2 over connected components: f1 - 4 f0 + 10 * components.
/// This is the quantity every move changes by its tabulated delta.
std::int64_t total_g2(const SimplicialComplex& k);

/// Faces disjoint from `f` whose join with `f` lies in `k`.
/// Throws Error(MissingFace) if f is not a face of k.
SimplicialComplex link(const SimplicialComplex& k, const Face& f);
SimplicialComplex link(const SimplicialComplex& k, Vertex v);
/// All faces of facets containing `f`, returned as the complex they generate.
SimplicialComplex star(const SimplicialComplex& k, const Face& f);

/// Connected components of the 1-skeleton, as subcomplexes (sorted by their
/// smallest facet).
std::vector<SimplicialComplex> components(const SimplicialComplex& k);
std::size_t count_components(const SimplicialComplex& k);

/// Union of complexes with pairwise disjoint labels; throws Error(Precondition)
/// if labels overlap.
SimplicialComplex disjoint_union(std::span<const SimplicialComplex> parts);

/// Applies a label map to every facet; labels absent from the map are kept.
/// Throws Error(MalformedFacet) if a facet degenerates.
SimplicialComplex relabel(const SimplicialComplex& k, const std::map<Vertex, Vertex>& map);

/// True if k is the boundary of a 4-simplex.
bool is_boundary_simplex(const SimplicialComplex& k);

/// Boundary of the 4-simplex on the given five labels.
SimplicialComplex boundary_simplex(std::span<const Vertex> labels);
SimplicialComplex boundary_simplex();  // labels 0..4

struct EdgeDegree {
  Face edge;
  std::size_t degree = 0;
};

/// Number of vertices in lk(uv). Throws Error(MissingFace) when uv is not an edge.
EdgeDegree edge_degree(const SimplicialComplex& k, const Face& uv);

/// Triangles (dim 2) or tetrahedra (dim 3) whose boundary lies in k but which
/// are not faces of k. Throws Error(Dimension) for other dims.
std::vector<Face> missing_faces(const SimplicialComplex& k, int dim);

/// Faces of lk(u) ∩ lk(v) that are not in lk(uv). Empty iff the link
/// condition holds for the edge uv.
std::vector<Face> link_condition_violations(const SimplicialComplex& k, Vertex u, Vertex v);

/// The cycle lk(f) for an edge of a normal complex, or the link of a vertex in
/// a surface, listed in walking order starting from its smallest vertex and
/// heading to the smaller of that vertex's two neighbours. Throws
/// Error(NotACycle) if the 1-dimensional complex is not a single cycle.
std::vector<Vertex> cycle_order(const SimplicialComplex& cycle);

/// BFS distances in the 1-skeleton from `source` (missing entries mean
/// unreachable).
std::map<Vertex, std::size_t> graph_distances(const SimplicialComplex& k, Vertex source);

}  // namespace pseudoform
