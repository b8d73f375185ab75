#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pseudoform/error.hpp"
#include "pseudoform/facet_io.hpp"
#include "pseudoform/generators.hpp"
#include "pseudoform/isomorphism.hpp"
#include "pseudoform/moves.hpp"
#include "pseudoform/normality.hpp"
#include "pseudoform/reducer.hpp"
#include "pseudoform/rigidity.hpp"

namespace pseudoform::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "pseudoform-cli/1";

struct Config {
  bool json = false;
  int verbosity = 0;
  std::uint64_t seed = kDefaultSeed;
  int trials = kDefaultTrials;
  std::string output;
};

// Malformed command-line values; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Vertex> parse_labels(const std::string& text) {
  std::vector<Vertex> out;
  if (text.empty()) return out;
  std::string_view rest = text;
  while (true) {
    auto comma = rest.find(',');
    auto token = rest.substr(0, comma);
    Vertex v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size() || token.empty())
      throw UsageError("bad vertex label '" + std::string(token) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

Face parse_face(const std::string& text) {
  auto labels = parse_labels(text);
  try {
    return Face(std::span<const Vertex>(labels));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

GluingMap parse_map(const std::string& text) {
  GluingMap out;
  std::stringstream in(text);
  std::string pair;
  while (std::getline(in, pair, ',')) {
    auto colon = pair.find(':');
    if (colon == std::string::npos) throw UsageError("map entries look like x:y, got '" + pair + "'");
    auto a = parse_labels(pair.substr(0, colon)), b = parse_labels(pair.substr(colon + 1));
    if (a.size() != 1 || b.size() != 1) throw UsageError("bad map entry '" + pair + "'");
    out.emplace_back(a[0], b[0]);
  }
  return out;
}

std::string fvector_text(const FVector& fv) {
  std::ostringstream s;
  s << "f=(" << fv.f[0] << ',' << fv.f[1] << ',' << fv.f[2] << ',' << fv.f[3] << ") g2=" << fv.g2 << " g3=" << fv.g3;
  return s.str();
}

json fvector_json(const FVector& fv) {
  return json{{"f", fv.f}, {"h", fv.h}, {"g2", fv.g2}, {"g3", fv.g3}};
}

json faces_json(const std::vector<Face>& faces) {
  json a = json::array();
  for (const Face& f : faces) a.push_back(f.to_vector());
  return a;
}

json envelope(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

// Writes text to --output or the output stream.
void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw Error(ErrorKind::Parse, "cannot write " + cfg.output);
  file << text;
}

SimplicialComplex load(const std::string& path) { return read_facet_file(path); }

// ---------------------------------------------------------------------------

int cmd_validate(const Config& cfg, const std::string& path, std::ostream& out) {
  const auto k = load(path);
  const auto r = validate_normal(k);
  if (cfg.json) {
    json j = envelope("validate");
    j["verdict"] = r.normal() ? "NormalClosed" : "NotNormal";
    j["is_pure"] = r.is_pure;
    j["is_connected"] = r.is_connected;
    j["ridge_failures"] = faces_json(r.ridge_failures);
    j["disconnected_links"] = faces_json(r.disconnected_links);
    j["non_surface_links"] = r.non_surface_links;
    json sing = json::array();
    for (const auto& [v, cls] : r.singular_vertices) sing.push_back({{"vertex", v}, {"link", cls.to_string()}});
    j["singular_vertices"] = sing;
    j["problems"] = r.problems();
    out << j.dump(2) << '\n';
  } else {
    out << (r.normal() ? "NormalClosed" : "NotNormal") << '\n';
    for (const auto& p : r.problems()) out << "  " << p << '\n';
    for (const auto& [v, cls] : r.singular_vertices) out << "  singular " << v << " " << cls.to_string() << '\n';
  }
  return r.normal() ? kOk : kFalse;
}

int cmd_fvector(const Config& cfg, const std::string& path, std::ostream& out) {
  const auto fv = f_vector(load(path));
  if (cfg.json) {
    json j = envelope("fvector");
    j.update(fvector_json(fv));
    out << j.dump(2) << '\n';
  } else {
    out << fvector_text(fv) << '\n';
  }
  return kOk;
}

int cmd_links(const Config& cfg, const std::string& path, std::ostream& out) {
  const auto k = load(path);
  json rows = json::array();
  std::ostringstream text;
  for (Vertex v : k.vertices()) {
    const auto lk = link(k, v);
    const auto cls = link_class(k, v);
    const std::string name = cls ? cls->to_string() : "not-a-surface";
    const auto fv0 = lk.num_faces(0), fv1 = lk.num_faces(1), fv2 = lk.num_faces(2);
    rows.push_back({{"vertex", v}, {"link", name}, {"f", {fv0, fv1, fv2}}, {"degree", k.degree(v)}});
    text << v << ' ' << name << " f=(" << fv0 << ',' << fv1 << ',' << fv2 << ")\n";
  }
  if (cfg.json) {
    json j = envelope("links");
    j["vertices"] = rows;
    out << j.dump(2) << '\n';
  } else {
    out << text.str();
  }
  return kOk;
}

int cmd_missing(const Config& cfg, const std::string& path, std::ostream& out) {
  const auto k = load(path);
  const auto triangles = missing_faces(k, 2);
  const auto tetra = classify_missing_tetrahedra(k);
  const auto splits = split_sites(k);
  const auto unfold = detect_unfold(k);
  if (cfg.json) {
    json j = envelope("missing");
    j["triangles"] = faces_json(triangles);
    json t = json::array();
    for (const auto& [tau, m] : tetra) {
      const bool split = std::find(splits.begin(), splits.end(), tau) != splits.end();
      t.push_back({{"tetrahedron", tau.to_vector()}, {"moebius", m}, {"splits", split}});
    }
    j["tetrahedra"] = t;
    j["unfold"] = unfold ? json(unfold->tetrahedron.to_vector()) : json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    for (const Face& f : triangles) out << "triangle " << f.to_string() << '\n';
    for (const auto& [tau, m] : tetra) {
      out << "tetrahedron " << tau.to_string() << " moebius=" << m;
      if (std::find(splits.begin(), splits.end(), tau) != splits.end()) out << " splits";
      if (unfold && unfold->tetrahedron == tau) out << " unfolds";
      out << '\n';
    }
  }
  return kOk;
}

std::optional<MoveKind> kind_from_cli(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  static const std::map<std::string, MoveKind> aliases{
      {"bistellar1", MoveKind::Bistellar1},        {"bistellar2", MoveKind::Bistellar2},
      {"contract", MoveKind::EdgeContract},        {"edgecontract", MoveKind::EdgeContract},
      {"expand", MoveKind::EdgeExpand},            {"edgeexpand", MoveKind::EdgeExpand},
      {"insert", MoveKind::TwoFacetsInsert},       {"twofacetsinsert", MoveKind::TwoFacetsInsert},
      {"contract2", MoveKind::TwoFacetsContract},  {"twofacetscontract", MoveKind::TwoFacetsContract},
      {"sum", MoveKind::ConnectedSum},             {"connectedsum", MoveKind::ConnectedSum},
      {"handle", MoveKind::HandleAdd},             {"handleadd", MoveKind::HandleAdd},
      {"fold", MoveKind::EdgeFold},                {"edgefold", MoveKind::EdgeFold},
      {"unfold", MoveKind::EdgeUnfold},            {"edgeunfold", MoveKind::EdgeUnfold},
      {"subdivide", MoveKind::FacetSubdivide},     {"facetsubdivide", MoveKind::FacetSubdivide},
      {"unsubdivide", MoveKind::FacetUnsubdivide}, {"facetunsubdivide", MoveKind::FacetUnsubdivide},
  };
  auto it = aliases.find(name);
  if (it == aliases.end()) return std::nullopt;
  return it->second;
}

struct MoveArgs {
  std::string kind, path, with, face, other, anchor, cycle, map, fresh;
};

int cmd_move(const Config& cfg, const MoveArgs& a, std::ostream& out) {
  const auto kind = kind_from_cli(a.kind);
  if (!kind) throw UsageError("unknown move kind '" + a.kind + "'");
  auto k = load(a.path);
  if (!a.with.empty()) {
    std::array<SimplicialComplex, 2> parts{k, load(a.with)};
    k = disjoint_union(parts);
  }
  MoveRecord rec;
  rec.kind = *kind;
  rec.face = parse_face(a.face);
  rec.other = parse_face(a.other);
  rec.anchor = parse_face(a.anchor);
  rec.cycle = parse_labels(a.cycle);
  rec.map = parse_map(a.map);
  rec.fresh = parse_labels(a.fresh);
  if (rec.face.empty()) throw UsageError("--face is required");
  std::size_t degree = 3;
  if (*kind == MoveKind::EdgeContract) degree = edge_degree(k, rec.face).degree;
  if (*kind == MoveKind::EdgeExpand) degree = rec.cycle.size();
  rec.g2_delta = expected_g2_delta(*kind, degree);
  const auto result = apply_move(k, rec);
  const std::string line = format_move(result.record);
  if (cfg.json) {
    json j = envelope("move");
    j["record"] = line;
    j["homeomorphic"] = result.homeomorphic;
    j["fvector"] = fvector_json(f_vector(result.complex));
    j["facets"] = faces_json(result.complex.facets());
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    emit(cfg, out, "# " + line + "\n" + format_facets(result.complex));
  }
  return kOk;
}

std::string trace_summary(const ConstructionTrace& t) {
  std::map<MoveKind, std::size_t> counts;
  for (const auto& m : t.forward_moves) ++counts[m.kind];
  std::ostringstream s;
  const auto folds = counts[MoveKind::EdgeFold];
  s << folds << (folds == 1 ? " fold" : " folds");
  for (const auto& [kind, n] : counts)
    if (kind != MoveKind::EdgeFold && n) s << ", " << n << ' ' << to_string(kind);
  s << ", seeds=" << t.seeds.size() << ", moves=" << t.forward_moves.size();
  return s.str();
}

int cmd_reduce(const Config& cfg, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto k = load(path);
  const auto r = reduce(k);
  if (!r.accepted()) {
    if (cfg.json) {
      json j = envelope("reduce");
      j["class"] = to_string(r.input_class);
      j["reason"] = r.reason;
      out << j.dump(2) << '\n';
    }
    err << "rejected: " << r.reason << '\n';
    return kFalse;
  }
  const std::string summary = std::string(to_string(r.input_class)) + ": " + trace_summary(r.trace);
  if (cfg.json) {
    json j = envelope("reduce");
    j["class"] = to_string(r.input_class);
    j["summary"] = summary;
    json steps = json::array();
    for (const auto& n : r.log) steps.push_back({{"rule", n.rule}, {"witnesses", faces_json(n.witnesses)}});
    j["steps"] = steps;
    j["trace"] = format_trace(r.trace);
    emit(cfg, out, j.dump(2) + "\n");
  } else if (cfg.output.empty()) {
    out << format_trace(r.trace);
    err << summary << '\n';
  } else {
    emit(cfg, out, format_trace(r.trace));
    out << summary << '\n';
  }
  if (cfg.verbosity > 0)
    for (const auto& n : r.log) {
      err << n.rule;
      for (const auto& w : n.witnesses) err << " {" << w.to_string() << '}';
      err << '\n';
    }
  return kOk;
}

int cmd_replay(const Config& cfg, const std::string& path, bool check, std::ostream& out) {
  const auto trace = read_trace_file(path);
  const auto k = replay(trace, check);
  if (cfg.json) {
    json j = envelope("replay");
    j["fvector"] = fvector_json(f_vector(k));
    j["facets"] = faces_json(k.facets());
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    emit(cfg, out, format_facets(k));
  }
  return kOk;
}

int cmd_audit(const Config& cfg, const std::string& path, std::ostream& out) {
  const auto findings = audit_class_G(load(path));
  if (cfg.json) {
    json j = envelope("audit-g");
    json rows = json::array();
    for (const auto& f : findings)
      rows.push_back(
          {{"check", f.check}, {"detail", f.detail}, {"membership", f.membership}, {"witnesses", faces_json(f.witnesses)}});
    j["findings"] = rows;
    j["excluded"] = !findings.empty();
    out << j.dump(2) << '\n';
  } else {
    for (const auto& f : findings) out << (f.membership ? "not-a-candidate " : "violation ") << f.check << ": " << f.detail << '\n';
    if (findings.empty()) out << "no violation found\n";
  }
  return findings.empty() ? kFalse : kOk;
}

int cmd_rigidity(const Config& cfg, const std::string& path, int dim, std::ostream& out) {
  const auto k = load(path);
  const auto v = rigidity_rank(graph_of(k), dim, cfg.seed, cfg.trials);
  const std::int64_t excess = static_cast<std::int64_t>(v.num_edges) - v.rank;
  if (cfg.json) {
    json j = envelope("rigidity");
    j["vertices"] = v.num_vertices;
    j["edges"] = v.num_edges;
    j["dim"] = v.ambient_dim;
    j["rank"] = v.rank;
    j["expected_full_rank"] = v.expected_full_rank;
    j["rigid"] = v.is_generically_rigid;
    j["excess"] = excess;
    j["trials"] = v.trials;
    j["prime"] = v.prime;
    j["seed"] = cfg.seed;
    out << j.dump(2) << '\n';
  } else {
    out << "rank=" << v.rank << " expected=" << v.expected_full_rank << " excess=" << excess
        << (v.is_generically_rigid ? " rigid" : " not-rigid") << " trials=" << v.trials << '\n';
  }
  return v.is_generically_rigid ? kOk : kFalse;
}

int cmd_gen(const Config& cfg, const std::string& spec_text, const std::string& trace_out, std::ostream& out) {
  GeneratorSpec spec;
  try {
    spec = parse_generator_spec(spec_text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto g = generate(spec);
  if (!trace_out.empty()) write_trace_file(trace_out, g.trace);
  if (cfg.json) {
    json j = envelope("gen");
    j["spec"] = format_generator_spec(spec);
    j["exhausted"] = g.exhausted;
    j["fvector"] = fvector_json(f_vector(g.complex));
    j["facets"] = faces_json(g.complex.facets());
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    emit(cfg, out, "# " + format_generator_spec(spec) + "\n" + format_facets(g.complex));
  }
  return g.exhausted ? kFalse : kOk;
}

int cmd_iso(const Config& cfg, const std::string& a, const std::string& b, std::ostream& out, std::ostream& err) {
  const auto ka = load(a), kb = load(b);
  std::optional<std::map<Vertex, Vertex>> map;
  try {
    map = find_isomorphism(ka, kb);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    err << "inconclusive: " << e.what() << '\n';
    return kFalse;
  }
  if (cfg.json) {
    json j = envelope("iso");
    j["isomorphic"] = map.has_value();
    if (map) {
      json m = json::array();
      for (const auto& [x, y] : *map) m.push_back({x, y});
      j["map"] = m;
    }
    out << j.dump(2) << '\n';
  } else {
    out << (map ? "isomorphic" : "not isomorphic") << '\n';
    if (map && cfg.verbosity > 0)
      for (const auto& [x, y] : *map) out << "  " << x << " -> " << y << '\n';
  }
  return map ? kOk : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::optional<std::string> env_seed) {
  CLI::App app{"Normal 3-pseudomanifolds: validation, moves, reduction and traces", "pseudoform"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Config cfg;
  if (env_seed) {
    try {
      cfg.seed = std::stoull(*env_seed);
    } catch (const std::exception&) {
      err << "error: PSEUDOFORM_SEED is not an integer: " << *env_seed << '\n';
      return kBadInput;
    }
  }
  app.add_flag("--json", cfg.json, "Structured output (schema " + std::string(kSchema) + ")");
  app.add_flag("-v,--verbose", cfg.verbosity, "More detail on the diagnostic stream");
  app.add_option("--seed", cfg.seed, "Random seed (default " + std::to_string(kDefaultSeed) + " or $PSEUDOFORM_SEED)");
  app.add_option("--trials", cfg.trials, "Rigidity trials")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write the main result here instead of stdout");

  std::string file, file2, spec, trace_out;
  int dim = 4;
  bool check = false;
  MoveArgs margs;

  auto* validate = app.add_subcommand("validate", "Check normality and classify vertex links");
  validate->add_option("file", file, "Facet list")->required();
  auto* fvec = app.add_subcommand("fvector", "Print the f-, h- and g-vector");
  fvec->add_option("file", file, "Facet list")->required();
  auto* links = app.add_subcommand("links", "Classify every vertex link");
  links->add_option("file", file, "Facet list")->required();
  auto* missing = app.add_subcommand("missing", "List missing triangles and tetrahedra");
  missing->add_option("file", file, "Facet list")->required();

  auto* move = app.add_subcommand("move", "Apply one move; the record is printed as a leading comment");
  move->add_option("kind", margs.kind, "bistellar1|bistellar2|contract|expand|insert|contract2|sum|handle|fold|unfold|subdivide|unsubdivide")
      ->required();
  move->add_option("file", margs.path, "Facet list")->required();
  move->add_option("--with", margs.with, "Second summand for a connected sum");
  move->add_option("--face", margs.face, "Main face, e.g. 1,2,3");
  move->add_option("--other", margs.other, "Second face (second facet, inserted triangle)");
  move->add_option("--anchor", margs.anchor, "Link triangle coned by the first new vertex");
  move->add_option("--cycle", margs.cycle, "Cycle for an expansion, in order");
  move->add_option("--map", margs.map, "Gluing map x:y,...");
  move->add_option("--fresh", margs.fresh, "Labels for new vertices");

  auto* red = app.add_subcommand("reduce", "Reduce to boundaries of 4-simplices and print the trace");
  red->add_option("file", file, "Facet list")->required();
  auto* rep = app.add_subcommand("replay", "Rebuild a complex from a trace");
  rep->add_option("file", file, "Trace file")->required();
  rep->add_flag("--check", check, "Validate every intermediate complex");
  auto* audit = app.add_subcommand("audit-g", "Look for reasons a complex cannot have g2 = 4 with more than two singular vertices");
  audit->add_option("file", file, "Facet list")->required();
  auto* rig = app.add_subcommand("rigidity", "Generic rigidity rank of the 1-skeleton");
  rig->add_option("file", file, "Facet list")->required();
  rig->add_option("--dim", dim, "Ambient dimension")->check(CLI::PositiveNumber);
  auto* gen = app.add_subcommand("gen", "Generate a complex: simplex | cross | stacked:k[:seed] | random:seed:budget[:cap=n][:fold][:handle]");
  gen->add_option("spec", spec, "Generator spec")->required();
  gen->add_option("--trace-out", trace_out, "Also write the construction trace");
  auto* iso = app.add_subcommand("iso", "Decide combinatorial isomorphism");
  iso->add_option("a", file, "First facet list")->required();
  iso->add_option("b", file2, "Second facet list")->required();

  // Global options may also follow the subcommand.
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*validate) return cmd_validate(cfg, file, out);
    if (*fvec) return cmd_fvector(cfg, file, out);
    if (*links) return cmd_links(cfg, file, out);
    if (*missing) return cmd_missing(cfg, file, out);
    if (*move) return cmd_move(cfg, margs, out);
    if (*red) return cmd_reduce(cfg, file, out, err);
    if (*rep) return cmd_replay(cfg, file, check, out);
    if (*audit) return cmd_audit(cfg, file, out);
    if (*rig) return cmd_rigidity(cfg, file, dim, out);
    if (*gen) return cmd_gen(cfg, spec, trace_out, out);
    if (*iso) return cmd_iso(cfg, file, file2, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::MalformedFacet:
      case ErrorKind::Dimension:
        return kBadInput;
      default:
        return kFalse;
    }
  }
  return kBadInput;
}

}  // namespace pseudoform::cli
