#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pseudoform/complex.hpp"

namespace pseudoform {

/// 2^61 - 1, the field all rigidity ranks are computed over.
inline constexpr std::uint64_t kRigidityPrime = (std::uint64_t{1} << 61) - 1;
inline constexpr std::uint64_t kDefaultSeed = 20240613;
inline constexpr int kDefaultTrials = 3;

struct Graph {
  std::vector<Vertex> vertices;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

/// The 1-skeleton of k.
Graph graph_of(const SimplicialComplex& k);

struct RigidityVerdict {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  int ambient_dim = 4;
  std::int64_t rank = 0;
  /// dim * |V| - C(dim + 1, 2)
  std::int64_t expected_full_rank = 0;
  /// A full-rank witness is conclusive; a deficit only means "not seen rigid
  /// in `trials` attempts".
  bool is_generically_rigid = false;
  int trials = 0;
  std::uint64_t prime = kRigidityPrime;
};

/// Rank of the rigidity matrix at random points of F_p^dim, maximised over
/// up to `trials` draws (stops early at full rank). Throws Error(Precondition)
/// if the graph has fewer than dim + 1 vertices or an edge leaves it.
RigidityVerdict rigidity_rank(const Graph& g, int dim = 4, std::uint64_t seed = kDefaultSeed,
                              int trials = kDefaultTrials);

/// Rank over F_p of a dense matrix with entries already reduced mod p.
std::int64_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p = kRigidityPrime);

struct ConeBound {
  /// Edges of k joining two vertices of lk(v) that are not edges of lk(v).
  std::vector<Face> external_edges;
  std::int64_t g2 = 0;
  std::int64_t link_g2 = 0;
  bool holds = false;

  std::size_t n() const { return external_edges.size(); }
};

/// g2(k) >= g2(lk v) + n, with g2 of the link taken as f1 - 3 f0 + 6.
ConeBound check_cone_augmented_bound(const SimplicialComplex& k, Vertex v);
/// g2(k) >= g2(lk v).
bool check_star_bound(const SimplicialComplex& k, Vertex v);

}  // namespace pseudoform
