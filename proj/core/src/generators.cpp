#include "pseudoform/generators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <random>

#include "pseudoform/error.hpp"
#include "pseudoform/normality.hpp"

namespace pseudoform {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::Parse, "bad " + std::string(what) + " '" + std::string(s) + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (std::size_t pos = 0;;) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

SimplicialComplex cross_polytope() {
  // Vertices 2i and 2i + 1 are antipodal; facets pick one of each pair.
  std::vector<Face> facets;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::array<Vertex, 4> f{};
    for (Vertex i = 0; i < 4; ++i) f[i] = 2 * i + ((mask >> i) & 1u);
    facets.emplace_back(std::span<const Vertex>(f));
  }
  return SimplicialComplex(std::move(facets));
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) {
  const auto parts = split(text, ':');
  GeneratorSpec spec;
  const auto head = parts.front();
  if (head == "simplex" && parts.size() == 1) return spec;
  if (head == "cross" && parts.size() == 1) {
    spec.kind = GeneratorKind::CrossPolytope;
    return spec;
  }
  if (head == "stacked" && (parts.size() == 2 || parts.size() == 3)) {
    spec.kind = GeneratorKind::StackedSphere;
    spec.subdivisions = parse_u64(parts[1], "subdivision count");
    if (parts.size() == 3) spec.seed = parse_u64(parts[2], "seed");
    return spec;
  }
  if (head == "random" && parts.size() >= 3) {
    spec.kind = GeneratorKind::RandomMoves;
    spec.seed = parse_u64(parts[1], "seed");
    spec.budget = parse_u64(parts[2], "budget");
    for (std::size_t i = 3; i < parts.size(); ++i) {
      if (parts[i] == "fold") spec.allow_fold = true;
      else if (parts[i] == "handle") spec.allow_handle = true;
      else if (parts[i].substr(0, 4) == "cap=") spec.g2_cap = static_cast<std::int64_t>(parse_u64(parts[i].substr(4), "cap"));
      else throw Error(ErrorKind::Parse, "unknown option '" + std::string(parts[i]) + "'");
    }
    return spec;
  }
  throw Error(ErrorKind::Parse, "unknown generator spec '" + std::string(text) + "'");
}

std::string format_generator_spec(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::BoundarySimplex: return "simplex";
    case GeneratorKind::CrossPolytope: return "cross";
    case GeneratorKind::StackedSphere:
      return "stacked:" + std::to_string(spec.subdivisions) + ":" + std::to_string(spec.seed);
    case GeneratorKind::RandomMoves: break;
  }
  std::string out = "random:" + std::to_string(spec.seed) + ":" + std::to_string(spec.budget) +
                    ":cap=" + std::to_string(spec.g2_cap);
  if (spec.allow_fold) out += ":fold";
  if (spec.allow_handle) out += ":handle";
  return out;
}

// ---------------------------------------------------------------------------
// Gluing searches

std::vector<GluingSite> admissible_folds(const SimplicialComplex& k) {
  std::vector<GluingSite> out;
  const auto& facets = k.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      const Face shared = facets[i].intersection(facets[j]);
      if (shared.size() != 2) continue;
      const Face r1 = facets[i].minus(shared), r2 = facets[j].minus(shared);
      for (int swap = 0; swap < 2; ++swap) {
        GluingMap psi{{shared[0], shared[0]}, {shared[1], shared[1]}, {r1[0], r2[swap]}, {r1[1], r2[1 - swap]}};
        std::sort(psi.begin(), psi.end());
        if (!fold_defect(k, facets[i], facets[j], psi)) out.push_back({facets[i], facets[j], std::move(psi)});
      }
    }
  }
  return out;
}

std::optional<GluingSite> find_admissible_fold(const SimplicialComplex& k) {
  auto all = admissible_folds(k);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<GluingSite> find_admissible_handle(const SimplicialComplex& k, PathMetric metric) {
  std::map<Vertex, std::map<Vertex, std::size_t>> dist;
  for (Vertex v : k.vertices()) dist[v] = graph_distances(k, v);
  const auto far = [&](Vertex x, Vertex y) {
    auto it = dist[x].find(y);
    return it == dist[x].end() || it->second >= 3;
  };
  const auto& facets = k.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (std::size_t j = i + 1; j < facets.size(); ++j) {
      const Face &s1 = facets[i], &s2 = facets[j];
      // Different components would make this a connected sum.
      if (dist[s1[0]].find(s2[0]) == dist[s1[0]].end()) continue;
      if (!s1.intersection(s2).empty()) continue;
      std::array<Vertex, 4> image{s2[0], s2[1], s2[2], s2[3]};
      do {
        bool ok = true;
        for (std::size_t t = 0; t < 4 && ok; ++t) ok = far(s1[t], image[t]);
        if (!ok) continue;
        GluingMap psi;
        for (std::size_t t = 0; t < 4; ++t) psi.emplace_back(s1[t], image[t]);
        // The skeleton test above is necessary for both metrics; the checker decides.
        if (!handle_defect(k, s1, s2, psi, metric)) return GluingSite{s1, s2, std::move(psi)};
      } while (std::next_permutation(image.begin(), image.end()));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

SimplicialComplex stacked(std::size_t subdivisions, std::uint64_t seed, std::vector<MoveRecord>* moves) {
  std::mt19937_64 rng(seed);
  auto k = boundary_simplex();
  for (std::size_t i = 0; i < subdivisions; ++i) {
    const Face f = k.facets()[rng() % k.facets().size()];
    auto r = facet_subdivide(k, f);
    if (moves) moves->push_back(r.record);
    k = std::move(r.complex);
  }
  return k;
}

using Candidate = std::function<MoveResult()>;

// Candidates per move kind, each already filtered by the g2 cap.
std::vector<std::vector<Candidate>> candidates(const SimplicialComplex& k, const GeneratorSpec& spec) {
  const std::int64_t room = spec.g2_cap - g2(k);
  std::vector<std::vector<Candidate>> out;
  auto add = [&](std::vector<Candidate> c) {
    if (!c.empty()) out.push_back(std::move(c));
  };

  std::vector<Candidate> c;
  for (const Face& f : k.facets()) c.push_back([&k, f] { return facet_subdivide(k, f); });
  add(std::move(c));

  c.clear();
  for (Vertex w : unsubdivide_sites(k)) c.push_back([&k, w] { return facet_unsubdivide(k, w); });
  add(std::move(c));

  c.clear();
  if (room >= 1)
    for (const Face& t : bistellar_one_sites(k)) c.push_back([&k, t] { return bistellar_one(k, t); });
  add(std::move(c));

  c.clear();
  for (const Face& e : bistellar_two_sites(k)) c.push_back([&k, e] { return bistellar_two(k, e); });
  add(std::move(c));

  const auto singular = singular_vertices(k);
  const auto is_singular = [&](Vertex v) { return std::binary_search(singular.begin(), singular.end(), v); };
  c.clear();
  for (const Face& e : contractible_edges(k))
    if (!(is_singular(e[0]) && is_singular(e[1]))) c.push_back([&k, e] { return contract_edge(k, e); });
  add(std::move(c));

  c.clear();
  for (Vertex w : k.vertices()) {
    const auto lk = link(k, w);
    for (Vertex x : lk.vertices()) {
      auto ring = cycle_order(link(lk, x));
      if (static_cast<std::int64_t>(ring.size()) - 3 > room) continue;
      c.push_back([&k, w, ring] { return expand_edge(k, w, ring); });
    }
  }
  add(std::move(c));

  c.clear();
  for (const auto& [w, abc] : two_facets_insert_sites(k))
    c.push_back([&k, w = w, abc = abc] { return insert_two_facets(k, w, abc); });
  add(std::move(c));

  c.clear();
  if (room >= 1)
    for (const auto& [u, v] : two_facets_contract_sites(k))
      c.push_back([&k, u = u, v = v] { return contract_two_facets(k, u, v); });
  add(std::move(c));

  c.clear();
  if (spec.allow_fold && room >= 3)
    for (auto& site : admissible_folds(k)) c.push_back([&k, site] { return edge_fold(k, site.s1, site.s2, site.psi); });
  add(std::move(c));

  c.clear();
  if (spec.allow_handle && room >= 10)
    if (auto site = find_admissible_handle(k))
      c.push_back([&k, site = *site] { return handle_addition(k, site.s1, site.s2, site.psi); });
  add(std::move(c));
  return out;
}

}  // namespace

Generated generate(const GeneratorSpec& spec) {
  Generated out;
  out.trace.seeds = {boundary_simplex()};
  switch (spec.kind) {
    case GeneratorKind::BoundarySimplex:
      out.complex = boundary_simplex();
      break;
    case GeneratorKind::StackedSphere:
      out.complex = stacked(spec.subdivisions, spec.seed, &out.trace.forward_moves);
      break;
    case GeneratorKind::CrossPolytope: {
      out.complex = cross_polytope();
      auto r = reduce(out.complex);
      if (!r.accepted()) throw Error(ErrorKind::Precondition, "internal: cross-polytope not reducible: " + r.reason);
      out.trace = std::move(r.trace);
      break;
    }
    case GeneratorKind::RandomMoves: {
      std::mt19937_64 rng(spec.seed);
      SimplicialComplex k = boundary_simplex();
      for (std::size_t step = 0; step < spec.budget; ++step) {
        auto kinds = candidates(k, spec);
        std::optional<MoveResult> applied;
        while (!applied && !kinds.empty()) {
          const std::size_t which = rng() % kinds.size();
          auto& sites = kinds[which];
          const std::size_t pick = rng() % sites.size();
          try {
            applied = sites[pick]();
          } catch (const Error&) {
            // Inadmissible after all (e.g. an expansion whose cycle does not
            // separate); drop the site and draw again.
            sites.erase(sites.begin() + static_cast<std::ptrdiff_t>(pick));
            if (sites.empty()) kinds.erase(kinds.begin() + static_cast<std::ptrdiff_t>(which));
          }
        }
        if (!applied) {
          out.exhausted = true;
          break;
        }
        out.trace.forward_moves.push_back(applied->record);
        k = std::move(applied->complex);
      }
      out.complex = std::move(k);
      break;
    }
  }
  out.trace.claimed_result_fvector = f_vector(out.complex);
  return out;
}

std::optional<GeneratorSpec> search_foldable_stacked_sphere(std::size_t max_subdivisions, std::uint64_t max_seed) {
  for (std::size_t subs = 1; subs <= max_subdivisions; ++subs) {
    for (std::uint64_t seed = 0; seed <= max_seed; ++seed) {
      if (find_admissible_fold(stacked(subs, seed, nullptr))) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::StackedSphere;
        spec.subdivisions = subs;
        spec.seed = seed;
        return spec;
      }
    }
  }
  return std::nullopt;
}

}  // namespace pseudoform
