#include "pseudoform/rigidity.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "pseudoform/error.hpp"

namespace pseudoform {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a, p))
    if (e & 1) r = mul_mod(r, a, p);
  return r;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

}  // namespace

Graph graph_of(const SimplicialComplex& k) {
  Graph g;
  g.vertices = k.vertices();
  for (const Face& e : k.faces(1)) g.edges.emplace_back(e[0], e[1]);
  return g;
}

std::int64_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = pow_mod(rows[rank][c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] = mul_mod(rows[rank][j], inv, p);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const std::uint64_t factor = rows[r][c];
      if (!factor) continue;
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = sub_mod(rows[r][j], mul_mod(factor, rows[rank][j], p), p);
    }
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

RigidityVerdict rigidity_rank(const Graph& g, int dim, std::uint64_t seed, int trials) {
  if (dim < 1) throw Error(ErrorKind::Precondition, "dimension must be positive");
  if (g.vertices.size() < static_cast<std::size_t>(dim) + 1)
    throw Error(ErrorKind::Precondition, "graph has " + std::to_string(g.vertices.size()) + " vertices, need at least " +
                                             std::to_string(dim + 1));
  std::map<Vertex, std::size_t> index;
  for (Vertex v : g.vertices) index.emplace(v, index.size());
  for (const auto& [u, v] : g.edges)
    if (!index.count(u) || !index.count(v) || u == v)
      throw Error(ErrorKind::Precondition, "edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the graph");

  RigidityVerdict out;
  out.num_vertices = g.vertices.size();
  out.num_edges = g.edges.size();
  out.ambient_dim = dim;
  out.expected_full_rank =
      static_cast<std::int64_t>(dim) * static_cast<std::int64_t>(out.num_vertices) - dim * (dim + 1) / 2;
  const std::int64_t ceiling = std::min<std::int64_t>(out.expected_full_rank, static_cast<std::int64_t>(out.num_edges));

  std::mt19937_64 rng(seed);
  const std::size_t d = static_cast<std::size_t>(dim);
  for (int t = 0; t < trials; ++t) {
    out.trials = t + 1;
    std::vector<std::uint64_t> coord(out.num_vertices * d);
    for (auto& x : coord) x = rng() % kRigidityPrime;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
      std::vector<std::uint64_t> row(out.num_vertices * d, 0);
      const std::size_t iu = index[u], iv = index[v];
      for (std::size_t j = 0; j < d; ++j) {
        const std::uint64_t diff = sub_mod(coord[iu * d + j], coord[iv * d + j], kRigidityPrime);
        row[iu * d + j] = diff;
        row[iv * d + j] = sub_mod(0, diff, kRigidityPrime);
      }
      rows.push_back(std::move(row));
    }
    out.rank = std::max(out.rank, rank_mod_p(std::move(rows)));
    if (out.rank >= ceiling) break;
  }
  out.is_generically_rigid = out.rank == out.expected_full_rank;
  return out;
}

ConeBound check_cone_augmented_bound(const SimplicialComplex& k, Vertex v) {
  const auto lk = link(k, v);
  ConeBound out;
  for (const Face& e : k.faces(1))
    if (lk.contains_vertex(e[0]) && lk.contains_vertex(e[1]) && !lk.contains(e)) out.external_edges.push_back(e);
  out.g2 = g2(k);
  out.link_g2 = surface_g2(lk);
  out.holds = out.g2 >= out.link_g2 + static_cast<std::int64_t>(out.n());
  return out;
}

bool check_star_bound(const SimplicialComplex& k, Vertex v) { return g2(k) >= surface_g2(link(k, v)); }

}  // namespace pseudoform
