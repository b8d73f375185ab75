#include "pseudoform/isomorphism.hpp"

#include <algorithm>
#include <set>

#include "pseudoform/error.hpp"
#include "pseudoform/surface.hpp"

namespace pseudoform {

namespace {

using Signature = std::vector<std::int64_t>;

Signature initial_signature(const SimplicialComplex& k, Vertex v) {
  const auto lk = link(k, v);
  Signature s{static_cast<std::int64_t>(k.degree(v)), static_cast<std::int64_t>(k.facets_containing(v).size())};
  for (int d = 0; d <= 2; ++d) s.push_back(static_cast<std::int64_t>(lk.num_faces(d)));
  if (lk.dimension() == 2 && !closed_surface_defect(lk)) {
    const auto cls = classify_surface(Surface(lk));
    s.push_back(cls.euler_characteristic);
    s.push_back(cls.orientable ? 1 : 0);
  } else {
    s.push_back(-100);
    s.push_back(-1);
  }
  return s;
}

struct Coloring {
  std::map<Vertex, int> a;
  std::map<Vertex, int> b;
};

// Replaces signatures by dense colour ids shared by both complexes.
std::pair<std::map<Vertex, int>, std::map<Vertex, int>> compress(const std::map<Vertex, Signature>& sa,
                                                                 const std::map<Vertex, Signature>& sb) {
  std::set<Signature> all;
  for (const auto& [v, s] : sa) all.insert(s);
  for (const auto& [v, s] : sb) all.insert(s);
  std::map<Signature, int> id;
  for (const auto& s : all) id.emplace(s, static_cast<int>(id.size()));
  std::map<Vertex, int> ca, cb;
  for (const auto& [v, s] : sa) ca[v] = id[s];
  for (const auto& [v, s] : sb) cb[v] = id[s];
  return {ca, cb};
}

Signature refined(const SimplicialComplex& k, const std::map<Vertex, int>& color, Vertex v) {
  Signature s{color.at(v)};
  std::vector<std::int64_t> nb;
  for (Vertex x : k.neighbors(v)) nb.push_back(color.at(x));
  std::sort(nb.begin(), nb.end());
  s.push_back(-1);
  s.insert(s.end(), nb.begin(), nb.end());
  std::vector<Signature> around;
  for (const Face& f : k.facets_containing(v)) {
    Signature t;
    for (Vertex x : f)
      if (x != v) t.push_back(color.at(x));
    std::sort(t.begin(), t.end());
    around.push_back(t);
  }
  std::sort(around.begin(), around.end());
  for (const auto& t : around) {
    s.push_back(-2);
    s.insert(s.end(), t.begin(), t.end());
  }
  return s;
}

std::size_t count_classes(const std::map<Vertex, int>& a, const std::map<Vertex, int>& b) {
  std::set<int> c;
  for (const auto& [v, x] : a) c.insert(x);
  for (const auto& [v, x] : b) c.insert(x);
  return c.size();
}

class Matcher {
 public:
  Matcher(const SimplicialComplex& a, const SimplicialComplex& b, const Coloring& colors, std::size_t budget)
      : a_(a), b_(b), colors_(colors), budget_(budget) {
    order_vertices();
    for (const Face& f : b.facets()) facets_b_.insert(f);
  }

  std::optional<std::map<Vertex, Vertex>> run() {
    if (search(0)) return map_;
    return std::nullopt;
  }

 private:
  // Rarest colour first, then stay connected to what is already placed.
  void order_vertices() {
    std::map<int, std::size_t> freq;
    for (const auto& [v, c] : colors_.a) ++freq[c];
    std::set<Vertex> placed;
    const auto& verts = a_.vertices();
    while (order_.size() < verts.size()) {
      std::optional<Vertex> best;
      std::tuple<int, std::size_t, Vertex> best_key{};
      for (Vertex v : verts) {
        if (placed.count(v)) continue;
        int links = 0;
        for (Vertex x : a_.neighbors(v)) links += static_cast<int>(placed.count(x));
        std::tuple<int, std::size_t, Vertex> key{-links, freq[colors_.a.at(v)], v};
        if (!best || key < best_key) {
          best = v;
          best_key = key;
        }
      }
      placed.insert(*best);
      order_.push_back(*best);
    }
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    closing_.resize(order_.size());
    for (const Face& f : a_.facets()) {
      std::size_t last = 0;
      for (Vertex x : f) last = std::max(last, pos[x]);
      closing_[last].push_back(f);
    }
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (++nodes_ > budget_)
      throw Error(ErrorKind::Inconclusive, "isomorphism search exceeded node budget of " + std::to_string(budget_));
    const Vertex va = order_[depth];
    const int color = colors_.a.at(va);
    for (Vertex vb : b_.vertices()) {
      if (colors_.b.at(vb) != color || used_.count(vb)) continue;
      if (!consistent(va, vb)) continue;
      map_[va] = vb;
      used_.insert(vb);
      if (facets_close(depth) && search(depth + 1)) return true;
      map_.erase(va);
      used_.erase(vb);
    }
    return false;
  }

  bool consistent(Vertex va, Vertex vb) const {
    for (const auto& [x, y] : map_)
      if (a_.adjacent(va, x) != b_.adjacent(vb, y)) return false;
    return true;
  }

  bool facets_close(std::size_t depth) const {
    for (const Face& f : closing_[depth]) {
      std::array<Vertex, Face::kMaxSize> buf{};
      for (std::size_t i = 0; i < f.size(); ++i) buf[i] = map_.at(f[i]);
      if (!facets_b_.count(Face(std::span<const Vertex>(buf.data(), f.size())))) return false;
    }
    return true;
  }

  const SimplicialComplex& a_;
  const SimplicialComplex& b_;
  const Coloring& colors_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Vertex> order_;
  std::vector<std::vector<Face>> closing_;
  std::set<Face> facets_b_;
  std::map<Vertex, Vertex> map_;
  std::set<Vertex> used_;
};

}  // namespace

std::optional<std::map<Vertex, Vertex>> find_isomorphism(const SimplicialComplex& a, const SimplicialComplex& b,
                                                         const IsoOptions& options) {
  if (a.dimension() != b.dimension() || a.is_pure() != b.is_pure()) return std::nullopt;
  for (int d = 0; d <= 4; ++d)
    if (a.num_faces(d) != b.num_faces(d)) return std::nullopt;
  if (a.empty()) return std::map<Vertex, Vertex>{};

  std::map<Vertex, Signature> sa, sb;
  for (Vertex v : a.vertices()) sa[v] = initial_signature(a, v);
  for (Vertex v : b.vertices()) sb[v] = initial_signature(b, v);
  Coloring colors;
  std::tie(colors.a, colors.b) = compress(sa, sb);
  std::size_t classes = count_classes(colors.a, colors.b);
  while (true) {
    for (Vertex v : a.vertices()) sa[v] = refined(a, colors.a, v);
    for (Vertex v : b.vertices()) sb[v] = refined(b, colors.b, v);
    auto [na, nb] = compress(sa, sb);
    const std::size_t now = count_classes(na, nb);
    colors.a = std::move(na);
    colors.b = std::move(nb);
    if (now == classes) break;
    classes = now;
  }

  std::map<int, long> histogram;
  for (const auto& [v, c] : colors.a) ++histogram[c];
  for (const auto& [v, c] : colors.b) --histogram[c];
  for (const auto& [c, n] : histogram)
    if (n != 0) return std::nullopt;

  return Matcher(a, b, colors, options.node_budget).run();
}

bool are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b, const IsoOptions& options) {
  return find_isomorphism(a, b, options).has_value();
}

}  // namespace pseudoform
