#include "pseudoform/reducer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pseudoform/error.hpp"
#include "pseudoform/facet_io.hpp"
#include "pseudoform/normality.hpp"

namespace pseudoform {

// ---------------------------------------------------------------------------
// Trace text format

std::string format_trace(const ConstructionTrace& trace) {
  const auto& f = trace.claimed_result_fvector.f;
  std::ostringstream out;
  out << "trace v1 seeds=" << trace.seeds.size() << " moves=" << trace.forward_moves.size() << " f=" << f[0] << ','
      << f[1] << ',' << f[2] << ',' << f[3] << '\n';
  for (const auto& seed : trace.seeds) out << "seed\n" << format_facets(seed) << "end\n";
  for (const auto& m : trace.forward_moves) out << format_move(m) << '\n';
  return out.str();
}

namespace {

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(line, "bad integer '" + std::string(s) + "'");
  return x;
}

std::string_view take_key(std::string_view& rest, std::string_view key, std::size_t line) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (rest.substr(0, key.size()) != key) throw ParseError(line, "expected '" + std::string(key) + "'");
  rest.remove_prefix(key.size());
  auto end = rest.find(' ');
  auto value = rest.substr(0, end);
  rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  return value;
}

}  // namespace

ConstructionTrace parse_trace(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty trace");

  std::string_view header = lines[0];
  if (header.substr(0, 9) != "trace v1 ") throw ParseError(1, "expected 'trace v1' header");
  header.remove_prefix(8);
  const auto seeds = parse_int(take_key(header, "seeds=", 1), 1);
  const auto moves = parse_int(take_key(header, "moves=", 1), 1);
  auto fv = take_key(header, "f=", 1);
  if (!header.empty() || seeds < 0 || moves < 0) throw ParseError(1, "malformed header");
  std::array<std::int64_t, 4> counts{};
  for (std::size_t i = 0; i < 4; ++i) {
    auto comma = fv.find(',');
    if ((i < 3) == (comma == std::string_view::npos)) throw ParseError(1, "f needs four entries");
    counts[i] = parse_int(fv.substr(0, comma), 1);
    fv = i < 3 ? fv.substr(comma + 1) : std::string_view{};
  }

  ConstructionTrace trace;
  trace.claimed_result_fvector = FVector::from_counts(counts);
  std::size_t i = 1;
  for (std::int64_t s = 0; s < seeds; ++s) {
    if (i >= lines.size() || lines[i] != "seed") throw ParseError(i + 1, "expected 'seed'");
    const std::size_t first = ++i;
    while (i < lines.size() && lines[i] != "end") ++i;
    if (i >= lines.size()) throw ParseError(first, "seed block without 'end'");
    std::string block;
    for (std::size_t j = first; j < i; ++j) block.append(lines[j]).push_back('\n');
    try {
      trace.seeds.push_back(parse_facets_text(block));
    } catch (const ParseError& e) {
      throw ParseError(first + e.line(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    } catch (const Error& e) {
      throw ParseError(first, e.what());
    }
    ++i;
  }
  for (std::int64_t m = 0; m < moves; ++m, ++i) {
    if (i >= lines.size()) throw ParseError(i + 1, "expected " + std::to_string(moves) + " moves");
    trace.forward_moves.push_back(parse_move(lines[i], i + 1));
  }
  for (; i < lines.size(); ++i)
    if (!lines[i].empty()) throw ParseError(i + 1, "unexpected trailing content");
  return trace;
}

ConstructionTrace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

void write_trace_file(const std::filesystem::path& path, const ConstructionTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << format_trace(trace);
}

// ---------------------------------------------------------------------------
// Replay

namespace {

std::optional<std::string> component_defect(const SimplicialComplex& k) {
  for (const auto& c : components(k)) {
    auto report = validate_normal(c);
    if (!report.normal()) return report.problems().front();
  }
  return std::nullopt;
}

}  // namespace

SimplicialComplex replay(const ConstructionTrace& trace, bool check_each) {
  const std::size_t end = trace.forward_moves.size();
  if (trace.seeds.empty()) throw ReplayError(end, "trace has no seeds");
  for (std::size_t s = 0; s < trace.seeds.size(); ++s)
    if (!is_boundary_simplex(trace.seeds[s]))
      throw ReplayError(end, "seed " + std::to_string(s) + " is not the boundary of a 4-simplex");
  SimplicialComplex k;
  try {
    k = disjoint_union(trace.seeds);
  } catch (const Error& e) {
    throw ReplayError(end, e.what());
  }
  for (std::size_t i = 0; i < trace.forward_moves.size(); ++i) {
    try {
      k = apply_move(k, trace.forward_moves[i]).complex;
    } catch (const Error& e) {
      throw ReplayError(i, e.what());
    }
    if (check_each)
      if (auto defect = component_defect(k)) throw ReplayError(i, "result is not normal: " + *defect);
  }
  const auto fv = f_vector(k);
  if (fv.f != trace.claimed_result_fvector.f) throw ReplayError(end, "f-vector differs from the claimed one");
  return k;
}

// ---------------------------------------------------------------------------
// Reduction

std::string_view to_string(InputClass c) {
  switch (c) {
    case InputClass::StackedSphere: return "stacked-sphere";
    case InputClass::SphereG2le9: return "sphere-g2-le-9";
    case InputClass::TwoSingularG2_3or4: return "two-singular-g2-3-or-4";
    case InputClass::Rejected: break;
  }
  return "rejected";
}

namespace {

struct Rejected {
  std::string reason;
};

struct Step {
  MoveResult down;       // the reduction step applied to the current complex
  MoveRecord forward;    // rebuilds the complex before the step
  StepNote note;
};

void require_rebuilds(const SimplicialComplex& before, const MoveResult& up) {
  if (up.complex != before)
    throw Error(ErrorKind::Precondition, "internal: inverse of " + std::string(to_string(up.record.kind)) +
                                             " does not rebuild the complex");
}

Step split_step(const SimplicialComplex& k, const Face& tau) {
  Step s{split_missing_tetrahedron(k, tau), {}, {"split-connected-sum", {tau}}};
  s.forward = s.down.record;
  require_rebuilds(k, apply_move(s.down.complex, s.forward));
  return s;
}

Step unsubdivide_step(const SimplicialComplex& k, Vertex w) {
  const Face tet{std::span<const Vertex>(link(k, w).vertices())};
  Step s{facet_unsubdivide(k, w), {}, {"facet-unsubdivide", {Face{w}, tet}}};
  auto up = facet_subdivide(s.down.complex, tet, w);
  require_rebuilds(k, up);
  s.forward = up.record;
  return s;
}

Step bistellar_two_step(const SimplicialComplex& k, const Face& uv, std::string rule) {
  const Face abc{std::span<const Vertex>(link(k, uv).vertices())};
  Step s{bistellar_two(k, uv), {}, {std::move(rule), {uv, abc}}};
  auto up = bistellar_one(s.down.complex, abc);
  require_rebuilds(k, up);
  s.forward = up.record;
  return s;
}

Step contract_step(const SimplicialComplex& k, const Face& uv, std::string rule) {
  const Vertex u = uv[0], v = uv[1];
  const auto cycle = cycle_order(link(k, uv));
  Face anchor;
  for (const Face& f : k.facets_containing(u))
    if (!f.contains(v)) {
      anchor = f.without(u);
      break;
    }
  Step s{contract_edge(k, uv), {}, {std::move(rule), {uv}}};
  const Vertex w = s.down.record.fresh.at(0);
  auto up = expand_edge(s.down.complex, w, cycle, anchor, std::pair{u, v});
  require_rebuilds(k, up);
  s.forward = up.record;
  return s;
}

Step insert_step(const SimplicialComplex& k, Vertex w, const Face& abc) {
  Step s{insert_two_facets(k, w, abc), {}, {"two-facets-insertion", {Face{w}, abc}}};
  auto up = contract_two_facets(s.down.complex, s.down.record.fresh.at(0), s.down.record.fresh.at(1), w);
  require_rebuilds(k, up);
  s.forward = up.record;
  return s;
}

Step unfold_step(const SimplicialComplex& k, const UnfoldSite& site) {
  Step s{edge_unfold(k, site.tetrahedron), {}, {"edge-unfold", {site.tetrahedron, site.moebius}}};
  const Vertex u = site.moebius[0], v = site.moebius[1];
  const Vertex a = site.separating[0], b = site.separating[1];
  const Vertex a2 = s.down.record.fresh.at(0), b2 = s.down.record.fresh.at(1);
  const Face s2{u, v, a2, b2};
  auto up = edge_fold(s.down.complex, site.tetrahedron, s2, {{u, u}, {v, v}, {a, a2}, {b, b2}});
  require_rebuilds(k, up);
  s.forward = up.record;
  return s;
}

std::int64_t own_g2(const SimplicialComplex& c) { return g2(c); }

// One reduction step on component c of k.
std::optional<Step> sphere_step(const SimplicialComplex& k, const SimplicialComplex& c) {
  if (own_g2(c) > 9) throw Rejected{"sphere part with g2 = " + std::to_string(own_g2(c)) + " > 9"};
  if (own_g2(c) == 0) {
    auto sites = unsubdivide_sites(c);
    if (!sites.empty()) return unsubdivide_step(k, sites.front());
  }
  if (auto sites = bistellar_two_sites(c); !sites.empty()) return bistellar_two_step(k, sites.front(), "bistellar-2");
  if (auto sites = contractible_edges(c); !sites.empty()) return contract_step(k, sites.front(), "edge-contraction");
  if (auto sites = two_facets_insert_sites(c); !sites.empty())
    return insert_step(k, sites.front().first, sites.front().second);
  return std::nullopt;
}

std::optional<Step> singular_step(const SimplicialComplex& k, const SimplicialComplex& c) {
  const auto report = validate_normal(c);
  if (report.singular_vertices.size() != 2)
    throw Rejected{std::to_string(report.singular_vertices.size()) + " singular vertices in one part; only 2 can occur"};
  for (const auto& [v, cls] : report.singular_vertices)
    if (cls.name != SurfaceName::RP2) throw Rejected{"link of " + std::to_string(v) + " is " + cls.to_string()};
  if (own_g2(c) > 4) throw Rejected{"singular part with g2 = " + std::to_string(own_g2(c)) + " > 4"};

  if (auto site = detect_unfold(c)) return unfold_step(k, *site);
  std::set<Vertex> singular;
  for (const auto& [v, cls] : report.singular_vertices) singular.insert(v);
  for (const Face& e : contractible_edges(c))
    if (singular.count(e[0]) != singular.count(e[1])) return contract_step(k, e, "singular-edge-contraction");
  if (auto sites = bistellar_two_sites(c); !sites.empty())
    return bistellar_two_step(k, sites.front(), "singular-bistellar-2");
  return std::nullopt;
}

std::optional<std::size_t> component_of(const std::vector<SimplicialComplex>& parts, const Face& f) {
  if (f.empty()) return std::nullopt;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].contains_vertex(f[0])) return i;
  return std::nullopt;
}

}  // namespace

ReduceReport reduce(const SimplicialComplex& input, const ReduceOptions& options) {
  ReduceReport out;
  auto reject = [&](std::string reason) {
    out.input_class = InputClass::Rejected;
    out.reason = std::move(reason);
    return out;
  };

  const auto report = validate_normal(input);
  if (!report.normal()) return reject("not a normal 3-pseudomanifold: " + report.problems().front());
  const auto g = g2(input);
  if (report.singular_vertices.empty()) {
    if (g > 9) return reject("no singular vertices but g2 = " + std::to_string(g) + " > 9");
    out.input_class = g == 0 ? InputClass::StackedSphere : InputClass::SphereG2le9;
  } else {
    if (g > 4) return reject("singular vertices with g2 = " + std::to_string(g) + " > 4");
    if (report.singular_vertices.size() != 2)
      return reject(std::to_string(report.singular_vertices.size()) + " singular vertices; only 2 can occur");
    out.input_class = InputClass::TwoSingularG2_3or4;
  }

  std::vector<MoveRecord> inverse;
  SimplicialComplex k = input;
  try {
    for (std::size_t steps = 0;; ++steps) {
      if (steps >= options.max_steps) throw Rejected{"step limit reached"};
      std::optional<Step> step;
      if (auto sites = split_sites(k); !sites.empty()) step = split_step(k, sites.front());
      if (!step) {
        for (const auto& c : components(k)) {
          if (is_boundary_simplex(c)) continue;
          step = singular_vertices(c).empty() ? sphere_step(k, c) : singular_step(k, c);
          if (!step) throw Rejected{"no reduction move applies to the part containing vertex " +
                                    std::to_string(c.vertices().front())};
          break;
        }
      }
      if (!step) break;
      k = step->down.complex;
      if (options.check_intermediates)
        if (auto defect = component_defect(k))
          throw Rejected{"step " + step->note.rule + " produced a non-normal complex: " + *defect};
      step->forward.component = component_of(components(k), step->forward.face);
      inverse.push_back(std::move(step->forward));
      out.log.push_back(std::move(step->note));
    }
  } catch (const Rejected& r) {
    return reject(r.reason);
  }

  out.trace.seeds = components(k);
  out.trace.forward_moves.assign(inverse.rbegin(), inverse.rend());
  out.trace.claimed_result_fvector = f_vector(input);
  return out;
}

// ---------------------------------------------------------------------------
// Audit

std::vector<AuditFinding> audit_class_G(const SimplicialComplex& k) {
  std::vector<AuditFinding> out;
  auto add = [&](std::string check, std::string detail, std::vector<Face> witnesses, bool membership) {
    out.push_back({std::move(check), std::move(detail), std::move(witnesses), membership});
  };

  const auto report = validate_normal(k);
  if (!report.normal()) {
    add("not-normal", report.problems().front(), {}, true);
    return out;
  }
  const auto g = g2(k);
  if (g != 4) add("g2", "g2 = " + std::to_string(g) + ", not 4", {}, true);
  std::set<Vertex> singular;
  for (const auto& [v, cls] : report.singular_vertices) {
    singular.insert(v);
    if (cls.name != SurfaceName::RP2)
      add("singular-link", "link of " + std::to_string(v) + " is " + cls.to_string(), {Face{v}}, true);
  }
  if (singular.size() <= 2)
    add("singular-count", std::to_string(singular.size()) + " singular vertices, need more than 2", {}, true);
  for (const Face& tau : missing_faces(k, 3)) {
    bool all_separate = true;
    for (std::size_t i = 0; i < 4 && all_separate; ++i)
      all_separate = missing_triangle_neighborhood(k, tau[i], tau.without(tau[i])).separates;
    if (all_separate) add("separating-missing-tetrahedron", "{" + tau.to_string() + "} splits k", {tau}, true);
  }

  const auto regular = [&](Vertex v) { return !singular.count(v); };
  for (Vertex v : k.vertices()) {
    if (!regular(v)) continue;
    const auto missing = missing_faces(link(k, v), 2);
    if (!missing.empty())
      add("regular-link-missing-triangle",
          "link of regular vertex " + std::to_string(v) + " has missing triangle {" + missing.front().to_string() + "}",
          {Face{v}, missing.front()}, false);
    if (k.degree(v) > 8)
      add("regular-degree", "regular vertex " + std::to_string(v) + " has degree " + std::to_string(k.degree(v)),
          {Face{v}}, false);
  }
  for (const Face& e : k.faces(1)) {
    const auto d = edge_degree(k, e).degree;
    if (d < 4) add("edge-degree", "d({" + e.to_string() + "}) = " + std::to_string(d), {e}, false);
    if (regular(e[0]) && regular(e[1]))
      add("regular-edge", "edge {" + e.to_string() + "} joins two regular vertices", {e}, false);
    for (Vertex a : {e[0], e[1]}) {
      if (!regular(a)) continue;
      const Vertex b = a == e[0] ? e[1] : e[0];
      const auto la = link(k, a), lb = link(k, b), lab = link(k, e);
      bool extra = false;
      for (Vertex x : la.vertices())
        if (lb.contains_vertex(x) && !lab.contains_vertex(x)) extra = true;
      if (!extra)
        add("empty-link-difference",
            "lk(" + std::to_string(a) + ") and lk(" + std::to_string(b) + ") share no vertex outside lk(ab)", {e},
            false);
    }
  }
  if (singular.size() == 8 && k.vertices().size() < 10)
    add("vertex-count", "8 singular vertices on " + std::to_string(k.vertices().size()) + " vertices", {}, false);
  for (Vertex t : singular) {
    std::vector<Face> regular_nbrs;
    for (Vertex x : k.neighbors(t))
      if (regular(x)) regular_nbrs.push_back(Face{t, x});
    if (regular_nbrs.size() > 1)
      add("regular-neighbours",
          "singular vertex " + std::to_string(t) + " has " + std::to_string(regular_nbrs.size()) + " regular neighbours",
          regular_nbrs, false);
  }
  return out;
}

}  // namespace pseudoform
