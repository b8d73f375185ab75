#include "pseudoform/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "pseudoform/error.hpp"

namespace pseudoform {

const std::vector<Face> SimplicialComplex::no_faces_{};

namespace {

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<Face> facets) {
  std::erase_if(facets, [](const Face& f) { return f.empty(); });
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  const bool mixed = std::adjacent_find(facets.begin(), facets.end(), [](const Face& a, const Face& b) {
                       return a.size() != b.size();
                     }) != facets.end();
  if (mixed) {
    std::vector<Face> maximal;
    for (const Face& f : facets) {
      bool dominated = std::any_of(facets.begin(), facets.end(), [&](const Face& g) {
        return g.size() > f.size() && g.contains(f);
      });
      if (!dominated) maximal.push_back(f);
    }
    facets = std::move(maximal);
  }
  facets_ = std::move(facets);

  for (const Face& f : facets_) {
    dimension_ = std::max(dimension_, f.dim());
    for (std::size_t k = 1; k <= f.size(); ++k)
      for (const Face& s : f.subfaces(k)) faces_[k - 1].push_back(s);
  }
  pure_ = std::all_of(facets_.begin(), facets_.end(),
                      [&](const Face& f) { return f.dim() == dimension_; });
  for (auto& list : faces_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  vertex_labels_.reserve(faces_[0].size());
  for (const Face& f : faces_[0]) vertex_labels_.push_back(f.front());

  incidence_.resize(vertex_labels_.size());
  for (std::uint32_t i = 0; i < facets_.size(); ++i)
    for (Vertex v : facets_[i]) incidence_[index_of(v)].push_back(i);

  adjacency_.resize(vertex_labels_.size());
  for (const Face& e : faces_[1]) {
    adjacency_[index_of(e[0])].push_back(e[1]);
    adjacency_[index_of(e[1])].push_back(e[0]);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& quads) {
  std::vector<Face> facets;
  facets.reserve(quads.size());
  for (const auto& q : quads) {
    if (q.size() != 4)
      throw Error(ErrorKind::MalformedFacet,
                  "facet has " + std::to_string(q.size()) + " vertices, expected 4");
    facets.emplace_back(std::span<const Vertex>(q));
  }
  return SimplicialComplex(std::move(facets));
}

const std::vector<Face>& SimplicialComplex::faces(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(Face::kMaxSize)) return no_faces_;
  return faces_[static_cast<std::size_t>(dim)];
}

std::size_t SimplicialComplex::index_of(Vertex v) const {
  auto it = std::lower_bound(vertex_labels_.begin(), vertex_labels_.end(), v);
  if (it == vertex_labels_.end() || *it != v)
    throw Error(ErrorKind::MissingFace, "vertex " + std::to_string(v) + " is not in the complex");
  return static_cast<std::size_t>(it - vertex_labels_.begin());
}

bool SimplicialComplex::contains(const Face& f) const {
  if (f.empty()) return !facets_.empty();
  const auto& list = faces(f.dim());
  return std::binary_search(list.begin(), list.end(), f);
}

bool SimplicialComplex::contains_vertex(Vertex v) const {
  return std::binary_search(vertex_labels_.begin(), vertex_labels_.end(), v);
}

bool SimplicialComplex::has_facet(const Face& f) const {
  return std::binary_search(facets_.begin(), facets_.end(), f);
}

bool SimplicialComplex::adjacent(Vertex u, Vertex v) const {
  if (!contains_vertex(u)) return false;
  const auto& n = adjacency_[index_of(u)];
  return std::binary_search(n.begin(), n.end(), v);
}

const std::vector<Vertex>& SimplicialComplex::neighbors(Vertex v) const {
  return adjacency_[index_of(v)];
}

std::vector<Face> SimplicialComplex::facets_containing(Vertex v) const {
  std::vector<Face> out;
  for (auto i : incidence_[index_of(v)]) out.push_back(facets_[i]);
  return out;
}

std::vector<Face> SimplicialComplex::facets_containing(const Face& f) const {
  std::vector<Face> out;
  if (f.empty()) return facets_;
  if (!contains_vertex(f.front())) return out;
  for (auto i : incidence_[index_of(f.front())])
    if (facets_[i].contains(f)) out.push_back(facets_[i]);
  return out;
}

std::size_t SimplicialComplex::count_facets_containing(const Face& f) const {
  if (f.empty()) return facets_.size();
  if (!contains_vertex(f.front())) return 0;
  std::size_t n = 0;
  for (auto i : incidence_[index_of(f.front())])
    if (facets_[i].contains(f)) ++n;
  return n;
}

std::optional<Vertex> SimplicialComplex::max_label() const {
  if (vertex_labels_.empty()) return std::nullopt;
  return vertex_labels_.back();
}

Vertex SimplicialComplex::next_label() const {
  auto m = max_label();
  return m ? *m + 1 : 0;
}

std::vector<std::pair<Vertex, Vertex>> SimplicialComplex::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(faces_[1].size());
  for (const Face& e : faces_[1]) out.emplace_back(e[0], e[1]);
  return out;
}

FVector FVector::from_counts(std::array<std::int64_t, 4> counts) {
  FVector out;
  out.f = counts;
  // f_{i-1} with f_{-1} = 1.
  const std::array<std::int64_t, 5> shifted{1, counts[0], counts[1], counts[2], counts[3]};
  auto binom = [](int n, int k) -> std::int64_t {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int k = 0; k <= 4; ++k) {
    std::int64_t hk = 0;
    for (int i = 0; i <= k; ++i) {
      const std::int64_t sign = ((k - i) % 2 == 0) ? 1 : -1;
      hk += sign * binom(4 - i, k - i) * shifted[static_cast<std::size_t>(i)];
    }
    out.h[static_cast<std::size_t>(k)] = hk;
  }
  out.g2 = out.h[2] - out.h[1];
  out.g3 = out.h[3] - out.h[2];
  return out;
}

FVector f_vector(const SimplicialComplex& k) {
  if (k.dimension() != 3 || !k.is_pure())
    throw Error(ErrorKind::Dimension, "f-vector needs a pure 3-dimensional complex");
  return FVector::from_counts({static_cast<std::int64_t>(k.num_faces(0)),
                               static_cast<std::int64_t>(k.num_faces(1)),
                               static_cast<std::int64_t>(k.num_faces(2)),
                               static_cast<std::int64_t>(k.num_faces(3))});
}

std::int64_t g2(const SimplicialComplex& k) {
  return static_cast<std::int64_t>(k.num_faces(1)) - 4 * static_cast<std::int64_t>(k.num_faces(0)) + 10;
}

std::int64_t surface_g2(const SimplicialComplex& s) {
  return static_cast<std::int64_t>(s.num_faces(1)) - 3 * static_cast<std::int64_t>(s.num_faces(0)) + 6;
}

std::int64_t total_g2(const SimplicialComplex& k) {
  return static_cast<std::int64_t>(k.num_faces(1)) - 4 * static_cast<std::int64_t>(k.num_faces(0)) +
         10 * static_cast<std::int64_t>(count_components(k));
}

SimplicialComplex link(const SimplicialComplex& k, const Face& f) {
  if (!k.contains(f)) throw Error(ErrorKind::MissingFace, "face {" + f.to_string() + "} is not in the complex");
  std::vector<Face> out;
  for (const Face& F : k.facets_containing(f)) out.push_back(F.minus(f));
  return SimplicialComplex(std::move(out));
}

SimplicialComplex link(const SimplicialComplex& k, Vertex v) { return link(k, Face{v}); }

SimplicialComplex star(const SimplicialComplex& k, const Face& f) {
  if (!k.contains(f)) throw Error(ErrorKind::MissingFace, "face {" + f.to_string() + "} is not in the complex");
  return SimplicialComplex(k.facets_containing(f));
}

namespace {

// Component id per vertex index of k.
std::vector<std::size_t> component_ids(const SimplicialComplex& k, std::size_t& count) {
  const auto& vs = k.vertices();
  DisjointSets sets(vs.size());
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  for (const Face& e : k.faces(1)) sets.unite(idx(e[0]), idx(e[1]));
  std::vector<std::size_t> root(vs.size());
  std::map<std::size_t, std::size_t> dense;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto r = sets.find(i);
    auto [it, inserted] = dense.try_emplace(r, dense.size());
    root[i] = it->second;
  }
  count = dense.size();
  return root;
}

}  // namespace

std::size_t count_components(const SimplicialComplex& k) {
  std::size_t count = 0;
  component_ids(k, count);
  return count;
}

std::vector<SimplicialComplex> components(const SimplicialComplex& k) {
  std::size_t count = 0;
  auto ids = component_ids(k, count);
  const auto& vs = k.vertices();
  std::vector<std::vector<Face>> groups(count);
  for (const Face& f : k.facets()) {
    auto i = static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), f.front()) - vs.begin());
    groups[ids[i]].push_back(f);
  }
  std::vector<SimplicialComplex> out;
  out.reserve(count);
  for (auto& g : groups) out.emplace_back(std::move(g));
  std::sort(out.begin(), out.end(), [](const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.facets().front() < b.facets().front();
  });
  return out;
}

SimplicialComplex disjoint_union(std::span<const SimplicialComplex> parts) {
  std::vector<Face> facets;
  std::vector<Vertex> seen;
  for (const auto& p : parts) {
    for (Vertex v : p.vertices()) seen.push_back(v);
    facets.insert(facets.end(), p.facets().begin(), p.facets().end());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw Error(ErrorKind::Precondition,
                "disjoint union: label " + std::to_string(*std::adjacent_find(seen.begin(), seen.end())) +
                    " occurs in more than one part");
  return SimplicialComplex(std::move(facets));
}

SimplicialComplex relabel(const SimplicialComplex& k, const std::map<Vertex, Vertex>& map) {
  std::vector<Face> facets;
  facets.reserve(k.facets().size());
  for (const Face& f : k.facets()) {
    std::array<Vertex, Face::kMaxSize> buf{};
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto it = map.find(f[i]);
      buf[i] = it == map.end() ? f[i] : it->second;
    }
    facets.emplace_back(std::span<const Vertex>(buf.data(), f.size()));
  }
  return SimplicialComplex(std::move(facets));
}

bool is_boundary_simplex(const SimplicialComplex& k) {
  return k.dimension() == 3 && k.is_pure() && k.vertices().size() == 5 && k.facets().size() == 5;
}

SimplicialComplex boundary_simplex(std::span<const Vertex> labels) {
  if (labels.size() != 5) throw Error(ErrorKind::Precondition, "boundary_simplex needs 5 labels");
  return SimplicialComplex(Face(labels).subfaces(4));
}

SimplicialComplex boundary_simplex() {
  const std::array<Vertex, 5> labels{0, 1, 2, 3, 4};
  return boundary_simplex(labels);
}

EdgeDegree edge_degree(const SimplicialComplex& k, const Face& uv) {
  if (uv.size() != 2 || !k.contains(uv))
    throw Error(ErrorKind::MissingFace, "{" + uv.to_string() + "} is not an edge of the complex");
  return {uv, link(k, uv).vertices().size()};
}

std::vector<Face> missing_faces(const SimplicialComplex& k, int dim) {
  std::vector<Face> out;
  if (dim == 2) {
    for (const Face& e : k.faces(1)) {
      for (Vertex c : sorted_intersection(k.neighbors(e[0]), k.neighbors(e[1]))) {
        if (c <= e[1]) continue;
        Face t{e[0], e[1], c};
        if (!k.contains(t)) out.push_back(t);
      }
    }
  } else if (dim == 3) {
    for (const Face& t : k.faces(2)) {
      auto common = sorted_intersection(sorted_intersection(k.neighbors(t[0]), k.neighbors(t[1])),
                                        k.neighbors(t[2]));
      for (Vertex d : common) {
        if (d <= t[2]) continue;
        Face tet = t.with(d);
        if (k.contains(tet)) continue;
        if (k.contains(Face{t[0], t[1], d}) && k.contains(Face{t[0], t[2], d}) &&
            k.contains(Face{t[1], t[2], d}))
          out.push_back(tet);
      }
    }
  } else {
    throw Error(ErrorKind::Dimension, "missing faces are computed for dim 2 or 3 only");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Face> link_condition_violations(const SimplicialComplex& k, Vertex u, Vertex v) {
  const Face uv{u, v};
  if (!k.contains(uv)) throw Error(ErrorKind::MissingFace, "{" + uv.to_string() + "} is not an edge");
  const auto lu = link(k, u);
  const auto lv = link(k, v);
  const auto luv = link(k, uv);
  std::vector<Face> out;
  for (int d = 0; d <= lu.dimension(); ++d)
    for (const Face& f : lu.faces(d))
      if (lv.contains(f) && !luv.contains(f)) out.push_back(f);
  return out;
}

std::vector<Vertex> cycle_order(const SimplicialComplex& cycle) {
  const auto& vs = cycle.vertices();
  if (cycle.dimension() != 1 || vs.size() < 3)
    throw Error(ErrorKind::NotACycle, "complex is not a cycle");
  for (Vertex v : vs)
    if (cycle.degree(v) != 2) throw Error(ErrorKind::NotACycle, "vertex " + std::to_string(v) + " has degree != 2");
  std::vector<Vertex> order{vs.front()};
  Vertex prev = vs.front();
  Vertex cur = cycle.neighbors(vs.front()).front();
  while (cur != vs.front()) {
    order.push_back(cur);
    const auto& n = cycle.neighbors(cur);
    Vertex next = n[0] == prev ? n[1] : n[0];
    prev = cur;
    cur = next;
    if (order.size() > vs.size()) throw Error(ErrorKind::NotACycle, "walk did not close");
  }
  if (order.size() != vs.size()) throw Error(ErrorKind::NotACycle, "1-complex has more than one cycle");
  return order;
}

std::map<Vertex, std::size_t> graph_distances(const SimplicialComplex& k, Vertex source) {
  std::map<Vertex, std::size_t> dist;
  if (!k.contains_vertex(source)) return dist;
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    for (Vertex y : k.neighbors(x)) {
      if (dist.contains(y)) continue;
      dist[y] = dist[x] + 1;
      q.push(y);
    }
  }
  return dist;
}

}  // namespace pseudoform
