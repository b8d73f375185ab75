#include "pseudoform/moves.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "pseudoform/error.hpp"
#include "pseudoform/normality.hpp"
#include "pseudoform/surface.hpp"

namespace pseudoform {

namespace {

constexpr std::array<std::pair<MoveKind, std::string_view>, 12> kKindNames{{
    {MoveKind::Bistellar1, "Bistellar1"},
    {MoveKind::Bistellar2, "Bistellar2"},
    {MoveKind::EdgeContract, "EdgeContract"},
    {MoveKind::EdgeExpand, "EdgeExpand"},
    {MoveKind::TwoFacetsInsert, "TwoFacetsInsert"},
    {MoveKind::TwoFacetsContract, "TwoFacetsContract"},
    {MoveKind::ConnectedSum, "ConnectedSum"},
    {MoveKind::HandleAdd, "HandleAdd"},
    {MoveKind::EdgeFold, "EdgeFold"},
    {MoveKind::EdgeUnfold, "EdgeUnfold"},
    {MoveKind::FacetSubdivide, "FacetSubdivide"},
    {MoveKind::FacetUnsubdivide, "FacetUnsubdivide"},
}};

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Precondition, what); }

void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

std::string braces(const Face& f) { return "{" + f.to_string() + "}"; }

std::string list(const std::vector<Face>& faces) {
  std::string s;
  for (const Face& f : faces) s += (s.empty() ? "" : " ") + braces(f);
  return s;
}

void require_face(const SimplicialComplex& k, const Face& f) {
  if (!k.contains(f)) throw Error(ErrorKind::MissingFace, braces(f) + " is not a face");
}

void require_vertex(const SimplicialComplex& k, Vertex v) {
  if (!k.contains_vertex(v)) throw Error(ErrorKind::MissingFace, "vertex " + std::to_string(v) + " is not in the complex");
}

// Explicit labels must be new and distinct; otherwise count labels from max + 1.
std::vector<Vertex> fresh_labels(const SimplicialComplex& k, std::size_t count, std::vector<Vertex> given) {
  if (given.empty()) {
    Vertex next = k.next_label();
    for (std::size_t i = 0; i < count; ++i) given.push_back(next++);
    return given;
  }
  require(given.size() == count, "expected " + std::to_string(count) + " fresh labels");
  std::set<Vertex> seen;
  for (Vertex x : given) {
    require(!k.contains_vertex(x), "fresh label " + std::to_string(x) + " already in use");
    require(seen.insert(x).second, "fresh label " + std::to_string(x) + " repeated");
  }
  return given;
}

std::vector<Face> without(const SimplicialComplex& k, const std::set<Face>& drop) {
  std::vector<Face> out;
  out.reserve(k.facets().size());
  for (const Face& f : k.facets())
    if (!drop.count(f)) out.push_back(f);
  return out;
}

MoveResult finish(const SimplicialComplex& before, std::vector<Face> facets, MoveRecord record,
                  std::size_t expected_facets) {
  MoveResult out{SimplicialComplex(std::move(facets)), std::move(record), true};
  require(out.complex.facets().size() == expected_facets,
          std::string(to_string(out.record.kind)) + " would merge facets");
  const auto realized = total_g2(out.complex) - total_g2(before);
  require(realized == out.record.g2_delta, std::string(to_string(out.record.kind)) + " changed g2 by " +
                                               std::to_string(realized) + " instead of " +
                                               std::to_string(out.record.g2_delta));
  return out;
}

Surface link_surface(const SimplicialComplex& k, Vertex w) {
  auto lk = link(k, w);
  if (auto defect = closed_surface_defect(lk))
    fail("link of " + std::to_string(w) + " is not a closed surface: " + *defect);
  return Surface(std::move(lk));
}

bool is_sphere_link(const SimplicialComplex& k, Vertex v) {
  auto cls = link_class(k, v);
  return cls && cls->is_sphere();
}

// Cuts lk(w) along the cycle and insists on two disc / Moebius-strip pieces.
SurfaceCut separating_cut(const Surface& lk, std::span<const Vertex> cycle, Vertex w) {
  auto cut = cut_surface(lk, cycle);
  std::string where = "cycle in lk(" + std::to_string(w) + ")";
  require(cut.report.separates, where + " does not separate the link");
  require(cut.report.components_after_cut == 2, where + " cuts the link into more than two pieces");
  int moebius = 0;
  for (SideKind s : cut.report.side_descriptions) {
    require(s != SideKind::Other, where + " leaves a side that is neither a disc nor a Moebius strip");
    moebius += s == SideKind::MoebiusStrip;
  }
  require(moebius <= 1, where + " has Moebius strips on both sides");
  return cut;
}

std::size_t piece_of(const Surface& lk, const SurfaceCut& cut, const Face& triangle) {
  const auto& tris = lk.triangles();
  auto it = std::lower_bound(tris.begin(), tris.end(), triangle);
  require(it != tris.end() && *it == triangle, "anchor " + braces(triangle) + " is not a link triangle");
  return cut.piece_of_triangle[static_cast<std::size_t>(it - tris.begin())];
}

Face smallest_in_piece(const Surface& lk, const SurfaceCut& cut, std::size_t piece) {
  for (std::size_t i = 0; i < lk.triangles().size(); ++i)
    if (cut.piece_of_triangle[i] == piece) return lk.triangles()[i];
  fail("empty piece");
}

// psi as a relabelling psi(x) -> x, after checking it bijects s1 onto s2.
std::map<Vertex, Vertex> gluing_relabel(const Face& s1, const Face& s2, const GluingMap& psi) {
  require(s1.size() == 4 && s2.size() == 4, "gluing needs two tetrahedra");
  require(psi.size() == 4, "gluing map must have 4 pairs");
  std::set<Vertex> dom, img;
  for (const auto& [x, y] : psi) {
    require(s1.contains(x), std::to_string(x) + " is not a vertex of " + braces(s1));
    require(s2.contains(y), std::to_string(y) + " is not a vertex of " + braces(s2));
    dom.insert(x);
    img.insert(y);
  }
  require(dom.size() == 4 && img.size() == 4, "gluing map is not a bijection");
  std::map<Vertex, Vertex> out;
  for (const auto& [x, y] : psi)
    if (x != y) out[y] = x;
  return out;
}

std::optional<std::string> facets_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                         const GluingMap& psi) {
  if (!k.has_facet(s1)) return braces(s1) + " is not a facet";
  if (!k.has_facet(s2)) return braces(s2) + " is not a facet";
  if (s1 == s2) return std::string("the two facets coincide");
  try {
    gluing_relabel(s1, s2, psi);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

MoveResult glue(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi, MoveKind kind,
                std::int64_t delta) {
  const auto map = gluing_relabel(s1, s2, psi);
  std::vector<Face> facets;
  for (const Face& f : k.facets()) {
    if (f == s1 || f == s2) continue;
    std::array<Vertex, 4> buf{};
    for (std::size_t i = 0; i < 4; ++i) {
      auto it = map.find(f[i]);
      buf[i] = it == map.end() ? f[i] : it->second;
    }
    facets.emplace_back(std::span<const Vertex>(buf.data(), 4));
  }
  MoveRecord rec;
  rec.kind = kind;
  rec.face = s1;
  rec.other = s2;
  rec.map = psi;
  std::sort(rec.map.begin(), rec.map.end());
  rec.g2_delta = delta;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() - 2);
}

std::size_t distance_avoiding(const SimplicialComplex& k, Vertex from, Vertex to, const std::set<Vertex>& blocked) {
  std::map<Vertex, std::size_t> dist{{from, 0}};
  std::queue<Vertex> q;
  q.push(from);
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    if (x == to) return dist[x];
    for (Vertex y : k.neighbors(x)) {
      if (dist.count(y) || (blocked.count(y) && y != to)) continue;
      dist[y] = dist[x] + 1;
      q.push(y);
    }
  }
  return static_cast<std::size_t>(-1);
}

struct TetraView {
  std::array<CutReport, 4> reports;
  int moebius = 0;
  int separating = 0;
};

// Cut of lk(x) along the boundary of tau - x, for each x in tau.
std::optional<TetraView> view_tetrahedron(const SimplicialComplex& k, const Face& tau) {
  TetraView view;
  for (std::size_t i = 0; i < 4; ++i) {
    try {
      view.reports[i] = missing_triangle_neighborhood(k, tau[i], tau.without(tau[i]));
    } catch (const Error&) {
      return std::nullopt;
    }
    view.moebius += view.reports[i].neighborhood == Neighborhood::Moebius;
    view.separating += view.reports[i].separates;
  }
  return view;
}

void require_missing_tetrahedron(const SimplicialComplex& k, const Face& tau) {
  require(tau.size() == 4, "expected a tetrahedron");
  require(!k.contains(tau), braces(tau) + " is a face");
  for (const Face& t : tau.boundary()) require(k.contains(t), "triangle " + braces(t) + " is missing");
}

// Dual-graph components of the facets once the triangles of the boundary of
// tau are no longer allowed to connect them.
std::vector<std::size_t> split_components(const SimplicialComplex& k, const Face& tau, std::size_t& count) {
  const auto& facets = k.facets();
  std::vector<std::size_t> parent(facets.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Face, std::size_t> first;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (const Face& t : facets[i].boundary()) {
      if (tau.contains(t)) continue;
      auto [it, inserted] = first.emplace(t, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(facets.size());
  for (std::size_t i = 0; i < facets.size(); ++i) {
    auto root = find(i);
    auto it = ids.emplace(root, ids.size()).first;
    out[i] = it->second;
  }
  count = ids.size();
  return out;
}

// The faces common to lk(u) and lk(v) when they are exactly one closed triangle.
std::optional<Face> single_common_triangle(const SimplicialComplex& k, Vertex u, Vertex v) {
  const auto lu = link(k, u);
  const auto lv = link(k, v);
  std::vector<Face> common_tris;
  for (const Face& t : lu.faces(2))
    if (lv.contains(t)) common_tris.push_back(t);
  if (common_tris.size() != 1) return std::nullopt;
  const Face abc = common_tris.front();
  for (int d = 0; d <= 1; ++d)
    for (const Face& f : lu.faces(d))
      if (lv.contains(f) && !abc.contains(f)) return std::nullopt;
  return abc;
}

std::string join_ints(const std::vector<Vertex>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

}  // namespace

std::string_view to_string(MoveKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "Unknown";
}

std::optional<MoveKind> parse_move_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

std::int64_t expected_g2_delta(MoveKind kind, std::size_t degree) {
  const auto n = static_cast<std::int64_t>(degree);
  switch (kind) {
    case MoveKind::Bistellar1: return 1;
    case MoveKind::Bistellar2: return -1;
    case MoveKind::EdgeContract: return -(n - 3);
    case MoveKind::EdgeExpand: return n - 3;
    case MoveKind::TwoFacetsInsert: return -1;
    case MoveKind::TwoFacetsContract: return 1;
    case MoveKind::ConnectedSum: return 0;
    case MoveKind::HandleAdd: return 10;
    case MoveKind::EdgeFold: return 3;
    case MoveKind::EdgeUnfold: return -3;
    case MoveKind::FacetSubdivide: return 0;
    case MoveKind::FacetUnsubdivide: return 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Serialisation

std::string format_move(const MoveRecord& r) {
  std::string s = "move kind=" + std::string(to_string(r.kind));
  if (!r.face.empty()) s += " face=" + r.face.to_string();
  if (!r.other.empty()) s += " other=" + r.other.to_string();
  if (!r.anchor.empty()) s += " anchor=" + r.anchor.to_string();
  if (!r.cycle.empty()) s += " cycle=" + join_ints(r.cycle);
  if (!r.map.empty()) {
    s += " map=";
    for (std::size_t i = 0; i < r.map.size(); ++i)
      s += (i ? "," : "") + std::to_string(r.map[i].first) + ":" + std::to_string(r.map[i].second);
  }
  if (!r.fresh.empty()) s += " fresh=" + join_ints(r.fresh);
  s += " g2_delta=" + std::to_string(r.g2_delta);
  if (r.component) s += " comp=" + std::to_string(*r.component);
  return s;
}

namespace {

template <typename T>
T parse_int(std::string_view token, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ParseError(line, "bad integer '" + std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<Vertex> parse_labels(std::string_view value, std::size_t line) {
  std::vector<Vertex> out;
  for (auto tok : split(value, ',')) out.push_back(parse_int<Vertex>(tok, line));
  return out;
}

Face parse_face(std::string_view value, std::size_t line) {
  auto labels = parse_labels(value, line);
  try {
    return Face(std::span<const Vertex>(labels));
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

MoveRecord parse_move(std::string_view text, std::size_t line) {
  static constexpr std::array<std::string_view, 9> kKeys{"kind",  "face",  "other",    "anchor", "cycle",
                                                         "map",   "fresh", "g2_delta", "comp"};
  auto tokens = split(text, ' ');
  if (tokens.empty() || tokens.front() != "move") throw ParseError(line, "move record must start with 'move'");
  MoveRecord r;
  std::size_t next_key = 0;
  bool have_kind = false, have_delta = false;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto tok = tokens[i];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected key=value, got '" + std::string(tok) + "'");
    auto key = tok.substr(0, eq);
    auto value = tok.substr(eq + 1);
    auto it = std::find(kKeys.begin(), kKeys.end(), key);
    if (it == kKeys.end()) throw ParseError(line, "unknown key '" + std::string(key) + "'");
    auto index = static_cast<std::size_t>(it - kKeys.begin());
    if (index < next_key) throw ParseError(line, "key '" + std::string(key) + "' out of order");
    next_key = index + 1;
    if (key == "kind") {
      auto kind = parse_move_kind(value);
      if (!kind) throw ParseError(line, "unknown move kind '" + std::string(value) + "'");
      r.kind = *kind;
      have_kind = true;
    } else if (key == "face") {
      r.face = parse_face(value, line);
    } else if (key == "other") {
      r.other = parse_face(value, line);
    } else if (key == "anchor") {
      r.anchor = parse_face(value, line);
    } else if (key == "cycle") {
      r.cycle = parse_labels(value, line);
    } else if (key == "map") {
      for (auto pair : split(value, ',')) {
        auto colon = pair.find(':');
        if (colon == std::string_view::npos) throw ParseError(line, "map entries look like a:b");
        r.map.emplace_back(parse_int<Vertex>(pair.substr(0, colon), line),
                           parse_int<Vertex>(pair.substr(colon + 1), line));
      }
    } else if (key == "fresh") {
      r.fresh = parse_labels(value, line);
    } else if (key == "g2_delta") {
      r.g2_delta = parse_int<std::int64_t>(value, line);
      have_delta = true;
    } else if (key == "comp") {
      r.component = parse_int<std::size_t>(value, line);
    }
  }
  if (!have_kind) throw ParseError(line, "move record without kind");
  if (!have_delta) throw ParseError(line, "move record without g2_delta");
  return r;
}

// ---------------------------------------------------------------------------
// Bistellar moves

MoveResult bistellar_one(const SimplicialComplex& k, const Face& abc) {
  require(abc.size() == 3, "bistellar 1-move needs a triangle");
  require_face(k, abc);
  const auto around = k.facets_containing(abc);
  require(around.size() == 2, "triangle " + braces(abc) + " lies in " + std::to_string(around.size()) + " facets");
  const Vertex u = around[0].minus(abc)[0];
  const Vertex v = around[1].minus(abc)[0];
  require(!k.adjacent(u, v), "edge {" + Face{u, v}.to_string() + "} already exists");
  auto facets = without(k, {around[0], around[1]});
  for (const Face& e : abc.boundary()) facets.push_back(e.join(Face{u, v}));
  MoveRecord rec;
  rec.kind = MoveKind::Bistellar1;
  rec.face = abc;
  rec.g2_delta = 1;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() + 1);
}

MoveResult bistellar_two(const SimplicialComplex& k, const Face& uv) {
  require(uv.size() == 2, "bistellar 2-move needs an edge");
  require_face(k, uv);
  const auto around = k.facets_containing(uv);
  const auto lk = link(k, uv);
  require(lk.num_faces(0) == 3 && around.size() == 3,
          "edge " + braces(uv) + " has degree " + std::to_string(lk.num_faces(0)) + ", not 3");
  const Face abc(std::span<const Vertex>(lk.vertices()));
  require(!k.contains(abc), "triangle " + braces(abc) + " is already a face");
  std::set<Face> drop(around.begin(), around.end());
  auto facets = without(k, drop);
  facets.push_back(abc.with(uv[0]));
  facets.push_back(abc.with(uv[1]));
  MoveRecord rec;
  rec.kind = MoveKind::Bistellar2;
  rec.face = uv;
  rec.g2_delta = -1;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() - 1);
}

// ---------------------------------------------------------------------------
// Edge contraction and expansion

MoveResult contract_edge(const SimplicialComplex& k, const Face& uv, std::optional<Vertex> fresh) {
  require(uv.size() == 2, "contraction needs an edge");
  require_face(k, uv);
  const Vertex u = uv[0], v = uv[1];
  const auto violations = link_condition_violations(k, u, v);
  require(violations.empty(), "link condition fails for " + braces(uv) + ": " + list(violations));
  const Vertex w = fresh_labels(k, 1, fresh ? std::vector<Vertex>{*fresh} : std::vector<Vertex>{})[0];
  const std::size_t n = link(k, uv).num_faces(0);
  std::vector<Face> facets;
  std::size_t dropped = 0;
  for (const Face& f : k.facets()) {
    if (f.contains(uv)) {
      ++dropped;
      continue;
    }
    facets.push_back(f.replaced(u, w).replaced(v, w));
  }
  MoveRecord rec;
  rec.kind = MoveKind::EdgeContract;
  rec.face = uv;
  rec.fresh = {w};
  rec.g2_delta = expected_g2_delta(MoveKind::EdgeContract, n);
  auto out = finish(k, std::move(facets), std::move(rec), k.facets().size() - dropped);
  out.homeomorphic = is_sphere_link(k, u) || is_sphere_link(k, v);
  return out;
}

MoveResult expand_edge(const SimplicialComplex& k, Vertex w, std::span<const Vertex> cycle, std::optional<Face> anchor,
                       std::optional<std::pair<Vertex, Vertex>> fresh) {
  require_vertex(k, w);
  const Surface lk = link_surface(k, w);
  const auto cut = separating_cut(lk, cycle, w);
  const std::size_t piece_u = anchor ? piece_of(lk, cut, *anchor) : 0;
  const auto labels =
      fresh_labels(k, 2, fresh ? std::vector<Vertex>{fresh->first, fresh->second} : std::vector<Vertex>{});
  const Vertex u = labels[0], v = labels[1];

  std::vector<Face> facets;
  for (const Face& f : k.facets())
    if (!f.contains(w)) facets.push_back(f);
  for (std::size_t i = 0; i < lk.triangles().size(); ++i)
    facets.push_back(lk.triangles()[i].with(cut.piece_of_triangle[i] == piece_u ? u : v));
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) facets.push_back(Face{u, v, cycle[i], cycle[(i + 1) % n]});

  MoveRecord rec;
  rec.kind = MoveKind::EdgeExpand;
  rec.face = Face{w};
  rec.cycle.assign(cycle.begin(), cycle.end());
  rec.anchor = smallest_in_piece(lk, cut, piece_u);
  rec.fresh = {u, v};
  rec.g2_delta = expected_g2_delta(MoveKind::EdgeExpand, n);
  return finish(k, std::move(facets), std::move(rec), k.facets().size() + n);
}

// ---------------------------------------------------------------------------
// Two facets insertion and contraction

MoveResult insert_two_facets(const SimplicialComplex& k, Vertex w, const Face& abc, std::optional<Face> anchor,
                             std::optional<std::pair<Vertex, Vertex>> fresh) {
  require(abc.size() == 3, "two facets insertion needs a triangle");
  require_vertex(k, w);
  require(!abc.contains(w), "the triangle must avoid w");
  require(!k.contains(abc), "triangle " + braces(abc) + " is already a face");
  for (const Face& e : abc.boundary())
    require(k.contains(e.with(w)), "edge " + braces(e) + " is not in lk(" + std::to_string(w) + ")");
  const Surface lk = link_surface(k, w);
  const std::array<Vertex, 3> cycle{abc[0], abc[1], abc[2]};
  const auto cut = separating_cut(lk, cycle, w);
  const std::size_t piece_p = anchor ? piece_of(lk, cut, *anchor) : 0;
  const auto labels =
      fresh_labels(k, 2, fresh ? std::vector<Vertex>{fresh->first, fresh->second} : std::vector<Vertex>{});
  const Vertex p = labels[0], q = labels[1];

  std::vector<Face> facets;
  for (const Face& f : k.facets())
    if (!f.contains(w)) facets.push_back(f);
  for (std::size_t i = 0; i < lk.triangles().size(); ++i)
    facets.push_back(lk.triangles()[i].with(cut.piece_of_triangle[i] == piece_p ? p : q));
  facets.push_back(abc.with(p));
  facets.push_back(abc.with(q));

  MoveRecord rec;
  rec.kind = MoveKind::TwoFacetsInsert;
  rec.face = Face{w};
  rec.other = abc;
  rec.anchor = smallest_in_piece(lk, cut, piece_p);
  rec.fresh = {p, q};
  rec.g2_delta = -1;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() + 2);
}

MoveResult contract_two_facets(const SimplicialComplex& k, Vertex u, Vertex v, std::optional<Vertex> fresh) {
  require_vertex(k, u);
  require_vertex(k, v);
  require(u != v, "two distinct vertices are needed");
  require(!k.adjacent(u, v), "edge {" + Face{u, v}.to_string() + "} exists");
  const auto abc = single_common_triangle(k, u, v);
  require(abc.has_value(), "stars of " + std::to_string(u) + " and " + std::to_string(v) +
                               " do not meet in a single triangle");
  const Vertex w = fresh_labels(k, 1, fresh ? std::vector<Vertex>{*fresh} : std::vector<Vertex>{})[0];
  std::vector<Face> facets;
  std::size_t removed = 0;
  for (const Face& f : k.facets()) {
    if (f.contains(u) || f.contains(v)) {
      ++removed;
      const Face t = f.without(f.contains(u) ? u : v);
      if (t != *abc) facets.push_back(t.with(w));
    } else {
      facets.push_back(f);
    }
  }
  MoveRecord rec;
  rec.kind = MoveKind::TwoFacetsContract;
  rec.face = Face{u, v};
  rec.fresh = {w};
  rec.g2_delta = 1;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() - 2);
}

// ---------------------------------------------------------------------------
// Gluings

std::optional<std::string> connected_sum_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                                const GluingMap& psi) {
  if (auto d = facets_defect(k, s1, s2, psi)) return d;
  if (graph_distances(k, s1[0]).count(s2[0])) return std::string("facets lie in the same component");
  return std::nullopt;
}

std::optional<std::string> handle_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                         const GluingMap& psi, PathMetric metric) {
  if (auto d = facets_defect(k, s1, s2, psi)) return d;
  const auto from_s1 = graph_distances(k, s1[0]);
  if (!from_s1.count(s2[0])) return std::string("facets lie in different components");
  std::set<Vertex> blocked;
  if (metric == PathMetric::AvoidGluedFacets) {
    blocked.insert(s1.begin(), s1.end());
    blocked.insert(s2.begin(), s2.end());
  }
  for (const auto& [x, y] : psi) {
    std::size_t d = 0;
    if (metric == PathMetric::Skeleton) {
      const auto dist = graph_distances(k, x);
      auto it = dist.find(y);
      d = it == dist.end() ? static_cast<std::size_t>(-1) : it->second;
    } else {
      auto b = blocked;
      b.erase(x);
      d = distance_avoiding(k, x, y, b);
    }
    if (d < 3)
      return "path from " + std::to_string(x) + " to " + std::to_string(y) + " has length " + std::to_string(d);
  }
  return std::nullopt;
}

std::optional<std::string> fold_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                       const GluingMap& psi) {
  if (auto d = facets_defect(k, s1, s2, psi)) return d;
  const Face shared = s1.intersection(s2);
  if (shared.size() != 2) return "facets meet in " + std::to_string(shared.size()) + " vertices, not an edge";
  for (const auto& [x, y] : psi) {
    if (shared.contains(x)) {
      if (x != y) return "map moves " + std::to_string(x) + " of the folding edge";
      continue;
    }
    if (k.adjacent(x, y)) return std::to_string(x) + " and " + std::to_string(y) + " are adjacent";
    for (Vertex z : k.neighbors(x))
      if (!shared.contains(z) && k.adjacent(z, y))
        return "path " + std::to_string(x) + "-" + std::to_string(z) + "-" + std::to_string(y) +
               " avoids the folding edge";
  }
  // lk(uv) loses the edges s1 - uv and s2 - uv; the two remaining arcs must
  // join into one cycle, otherwise the folded edge has a disconnected link.
  std::vector<Vertex> ring;
  try {
    ring = cycle_order(link(k, shared));
  } catch (const Error&) {
    return "link of {" + shared.to_string() + "} is not a cycle";
  }
  const Face ys = s1.minus(shared), zs = s2.minus(shared);
  const std::size_t m = ring.size();
  const auto pos = [&](Vertex x) {
    return static_cast<std::size_t>(std::find(ring.begin(), ring.end(), x) - ring.begin());
  };
  const std::size_t p0 = pos(ys[0]);
  const int step = ring[(p0 + 1) % m] == ys[1] ? -1 : 1;  // walk away from ys[1]
  std::size_t i = p0;
  do i = (i + m + static_cast<std::size_t>(step)) % m;
  while (!zs.contains(ring[i]));
  const Vertex reached = ring[i];
  for (const auto& [x, y] : psi)
    if (x == ys[0] && y == reached) return "gluing splits the link of {" + shared.to_string() + "} into two cycles";
  return std::nullopt;
}

MoveResult connected_sum(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi) {
  if (auto d = connected_sum_defect(k, s1, s2, psi)) fail("connected sum: " + *d);
  return glue(k, s1, s2, psi, MoveKind::ConnectedSum, 0);
}

MoveResult connected_sum(const SimplicialComplex& k1, const Face& s1, const SimplicialComplex& k2, const Face& s2,
                         const GluingMap& psi) {
  const std::array<SimplicialComplex, 2> parts{k1, k2};
  return connected_sum(disjoint_union(parts), s1, s2, psi);
}

MoveResult handle_addition(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi,
                           PathMetric metric) {
  if (auto d = handle_defect(k, s1, s2, psi, metric)) fail("handle addition: " + *d);
  return glue(k, s1, s2, psi, MoveKind::HandleAdd, 10);
}

MoveResult edge_fold(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi) {
  if (auto d = fold_defect(k, s1, s2, psi)) fail("edge folding: " + *d);
  return glue(k, s1, s2, psi, MoveKind::EdgeFold, 3);
}

// ---------------------------------------------------------------------------
// Missing tetrahedra: unfolding and splitting

std::vector<std::pair<Face, int>> classify_missing_tetrahedra(const SimplicialComplex& k) {
  std::vector<std::pair<Face, int>> out;
  for (const Face& tau : missing_faces(k, 3)) {
    auto view = view_tetrahedron(k, tau);
    out.emplace_back(tau, view ? view->moebius : -1);
  }
  return out;
}

std::optional<UnfoldSite> detect_unfold(const SimplicialComplex& k) {
  for (const Face& tau : missing_faces(k, 3)) {
    auto view = view_tetrahedron(k, tau);
    if (!view || view->moebius != 2 || view->separating != 2) continue;
    std::vector<Vertex> mob, sep;
    for (std::size_t i = 0; i < 4; ++i)
      (view->reports[i].neighborhood == Neighborhood::Moebius ? mob : sep).push_back(tau[i]);
    if (mob.size() != 2 || sep.size() != 2) continue;
    return UnfoldSite{tau, Face{mob[0], mob[1]}, Face{sep[0], sep[1]}};
  }
  return std::nullopt;
}

MoveResult edge_unfold(const SimplicialComplex& k, const Face& tau, std::optional<std::pair<Vertex, Vertex>> fresh) {
  require_missing_tetrahedron(k, tau);
  auto view = view_tetrahedron(k, tau);
  require(view.has_value(), "links at " + braces(tau) + " are not closed surfaces");
  std::vector<Vertex> mob, sep;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& r = view->reports[i];
    if (r.neighborhood == Neighborhood::Moebius) mob.push_back(tau[i]);
    else if (r.separates) sep.push_back(tau[i]);
  }
  require(mob.size() == 2 && sep.size() == 2,
          braces(tau) + " has " + std::to_string(mob.size()) + " Moebius and " + std::to_string(sep.size()) +
              " separating neighbourhoods; unfolding needs two of each");
  const Vertex u = mob[0], v = mob[1], a = sep[0], b = sep[1];

  const Surface la = link_surface(k, a);
  const Surface lb = link_surface(k, b);
  const std::array<Vertex, 3> ca{b, u, v};
  const std::array<Vertex, 3> cb{a, u, v};
  const auto cut_a = separating_cut(la, ca, a);
  const auto cut_b = separating_cut(lb, cb, b);
  auto side = [](const Surface& lk, const SurfaceCut& cut, const Face& t) {
    const auto& tris = lk.triangles();
    return cut.piece_of_triangle[static_cast<std::size_t>(std::lower_bound(tris.begin(), tris.end(), t) - tris.begin())];
  };

  // Facets through ab pair the two sides of a with the two sides of b.
  std::map<std::size_t, std::size_t> pair_ab;
  for (const Face& f : k.facets_containing(Face{a, b})) {
    const auto sa = side(la, cut_a, f.without(a));
    const auto sb = side(lb, cut_b, f.without(b));
    auto [it, inserted] = pair_ab.emplace(sa, sb);
    require(it->second == sb, "sides of " + std::to_string(a) + " and " + std::to_string(b) + " do not pair up");
  }
  require(pair_ab.size() == 2, "edge {" + Face{a, b}.to_string() + "} does not reach both sides");

  const std::size_t keep_a = side(la, cut_a, k.facets_containing(a).front().without(a));
  const std::size_t keep_b = pair_ab.at(keep_a);
  const auto labels =
      fresh_labels(k, 2, fresh ? std::vector<Vertex>{fresh->first, fresh->second} : std::vector<Vertex>{});
  const Vertex a2 = labels[0], b2 = labels[1];

  std::vector<Face> facets;
  for (const Face& f : k.facets()) {
    Face g = f;
    if (f.contains(a) && side(la, cut_a, f.without(a)) != keep_a) g = g.replaced(a, a2);
    if (f.contains(b) && side(lb, cut_b, f.without(b)) != keep_b) g = g.replaced(b, b2);
    facets.push_back(g);
  }
  const Face s1{u, v, a, b};
  const Face s2{u, v, a2, b2};
  facets.push_back(s1);
  facets.push_back(s2);

  MoveRecord rec;
  rec.kind = MoveKind::EdgeUnfold;
  rec.face = tau;
  rec.other = Face{u, v};
  rec.fresh = {a2, b2};
  rec.g2_delta = -3;
  auto out = finish(k, std::move(facets), std::move(rec), k.facets().size() + 2);

  GluingMap psi{{u, u}, {v, v}, {a, a2}, {b, b2}};
  std::sort(psi.begin(), psi.end());
  if (auto d = fold_defect(out.complex, s1, s2, psi)) fail("unfolded complex does not fold back: " + *d);
  require(glue(out.complex, s1, s2, psi, MoveKind::EdgeFold, 3).complex == k, "unfolding does not fold back to the input");
  return out;
}

MoveResult split_missing_tetrahedron(const SimplicialComplex& k, const Face& tau,
                                     std::optional<std::array<Vertex, 4>> fresh) {
  require_missing_tetrahedron(k, tau);
  auto view = view_tetrahedron(k, tau);
  require(view.has_value(), "links at " + braces(tau) + " are not closed surfaces");
  std::string witnesses;
  for (std::size_t i = 0; i < 4; ++i)
    if (!view->reports[i].separates) witnesses += (witnesses.empty() ? "" : ",") + std::to_string(tau[i]);
  require(witnesses.empty(), braces(tau) + " does not separate the links of " + witnesses);
  std::size_t count = 0;
  const auto comp = split_components(k, tau, count);
  const std::size_t before = count_components(k);
  require(count != before, braces(tau) + " does not disconnect the complex (handle configuration)");
  require(count == before + 1, braces(tau) + " cuts its component into " + std::to_string(count - before + 1) + " parts");

  // The two sides are the split components meeting tau[0]; the one holding the
  // smaller facet keeps its labels.
  std::size_t keep = count, move = count;
  for (std::size_t i = 0; i < k.facets().size(); ++i) {
    if (!k.facets()[i].contains(tau[0])) continue;
    if (keep == count) keep = comp[i];
    else if (comp[i] != keep) move = comp[i];
  }
  {
    std::size_t first = k.facets().size();
    for (std::size_t i = 0; i < k.facets().size() && first == k.facets().size(); ++i)
      if (comp[i] == keep || comp[i] == move) first = i;
    if (comp[first] == move) std::swap(keep, move);
  }

  const auto labels = fresh_labels(k, 4, fresh ? std::vector<Vertex>(fresh->begin(), fresh->end()) : std::vector<Vertex>{});
  std::map<Vertex, Vertex> rename;
  for (std::size_t i = 0; i < 4; ++i) rename[tau[i]] = labels[i];
  std::vector<Face> facets;
  for (std::size_t i = 0; i < k.facets().size(); ++i) {
    const Face& f = k.facets()[i];
    if (comp[i] != move) {
      facets.push_back(f);
      continue;
    }
    Face g = f;
    for (const auto& [from, to] : rename) g = g.replaced(from, to);
    facets.push_back(g);
  }
  const Face tau2{std::span<const Vertex>(labels)};
  facets.push_back(tau);
  facets.push_back(tau2);

  MoveRecord rec;
  rec.kind = MoveKind::ConnectedSum;
  rec.face = tau;
  rec.other = tau2;
  for (const auto& [from, to] : rename) rec.map.emplace_back(from, to);
  rec.g2_delta = 0;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() + 2);
}

// ---------------------------------------------------------------------------
// Facet subdivision

MoveResult facet_subdivide(const SimplicialComplex& k, const Face& facet, std::optional<Vertex> fresh) {
  require(k.has_facet(facet), braces(facet) + " is not a facet");
  const Vertex w = fresh_labels(k, 1, fresh ? std::vector<Vertex>{*fresh} : std::vector<Vertex>{})[0];
  auto facets = without(k, {facet});
  for (const Face& t : facet.boundary()) facets.push_back(t.with(w));
  MoveRecord rec;
  rec.kind = MoveKind::FacetSubdivide;
  rec.face = facet;
  rec.fresh = {w};
  rec.g2_delta = 0;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() + 3);
}

MoveResult facet_unsubdivide(const SimplicialComplex& k, Vertex w) {
  require_vertex(k, w);
  require(k.degree(w) == 4, "vertex " + std::to_string(w) + " has degree " + std::to_string(k.degree(w)) + ", not 4");
  const auto around = k.facets_containing(w);
  require(around.size() == 4, "link of " + std::to_string(w) + " is not a tetrahedron boundary");
  const Face tet(std::span<const Vertex>(k.neighbors(w)));
  require(!k.contains(tet), "tetrahedron " + braces(tet) + " is already a face");
  std::set<Face> drop(around.begin(), around.end());
  auto facets = without(k, drop);
  facets.push_back(tet);
  MoveRecord rec;
  rec.kind = MoveKind::FacetUnsubdivide;
  rec.face = Face{w};
  rec.g2_delta = 0;
  return finish(k, std::move(facets), std::move(rec), k.facets().size() - 3);
}

// ---------------------------------------------------------------------------
// Replay dispatch

MoveResult apply_move(const SimplicialComplex& k, const MoveRecord& r) {
  auto fresh1 = [&]() -> std::optional<Vertex> {
    if (r.fresh.empty()) return std::nullopt;
    require(r.fresh.size() == 1, "expected one fresh label");
    return r.fresh[0];
  };
  auto fresh2 = [&]() -> std::optional<std::pair<Vertex, Vertex>> {
    if (r.fresh.empty()) return std::nullopt;
    require(r.fresh.size() == 2, "expected two fresh labels");
    return std::pair{r.fresh[0], r.fresh[1]};
  };
  auto anchor = [&]() -> std::optional<Face> {
    if (r.anchor.empty()) return std::nullopt;
    return r.anchor;
  };
  auto single = [&](const Face& f) {
    require(f.size() == 1, "expected a single vertex");
    return f[0];
  };

  MoveResult out;
  switch (r.kind) {
    case MoveKind::Bistellar1: out = bistellar_one(k, r.face); break;
    case MoveKind::Bistellar2: out = bistellar_two(k, r.face); break;
    case MoveKind::EdgeContract: out = contract_edge(k, r.face, fresh1()); break;
    case MoveKind::EdgeExpand: out = expand_edge(k, single(r.face), r.cycle, anchor(), fresh2()); break;
    case MoveKind::TwoFacetsInsert: out = insert_two_facets(k, single(r.face), r.other, anchor(), fresh2()); break;
    case MoveKind::TwoFacetsContract:
      require(r.face.size() == 2, "expected two vertices");
      out = contract_two_facets(k, r.face[0], r.face[1], fresh1());
      break;
    case MoveKind::ConnectedSum: out = connected_sum(k, r.face, r.other, r.map); break;
    case MoveKind::HandleAdd: out = handle_addition(k, r.face, r.other, r.map); break;
    case MoveKind::EdgeFold: out = edge_fold(k, r.face, r.other, r.map); break;
    case MoveKind::EdgeUnfold: out = edge_unfold(k, r.face, fresh2()); break;
    case MoveKind::FacetSubdivide: out = facet_subdivide(k, r.face, fresh1()); break;
    case MoveKind::FacetUnsubdivide: out = facet_unsubdivide(k, single(r.face)); break;
  }
  require(out.record.g2_delta == r.g2_delta, "record claims g2_delta " + std::to_string(r.g2_delta) +
                                                 " but the move changes g2 by " +
                                                 std::to_string(out.record.g2_delta));
  out.record.component = r.component;
  return out;
}

// ---------------------------------------------------------------------------
// Sites

std::vector<Face> bistellar_one_sites(const SimplicialComplex& k) {
  std::vector<Face> out;
  for (const Face& t : k.faces(2)) {
    const auto around = k.facets_containing(t);
    if (around.size() != 2) continue;
    if (!k.adjacent(around[0].minus(t)[0], around[1].minus(t)[0])) out.push_back(t);
  }
  return out;
}

std::vector<Face> bistellar_two_sites(const SimplicialComplex& k) {
  std::vector<Face> out;
  for (const Face& e : k.faces(1)) {
    if (k.count_facets_containing(e) != 3) continue;
    const auto lk = link(k, e);
    if (lk.num_faces(0) != 3) continue;
    if (!k.contains(Face(std::span<const Vertex>(lk.vertices())))) out.push_back(e);
  }
  return out;
}

std::vector<Face> contractible_edges(const SimplicialComplex& k) {
  std::vector<Face> out;
  for (const Face& e : k.faces(1))
    if (link_condition_violations(k, e[0], e[1]).empty()) out.push_back(e);
  return out;
}

std::vector<std::pair<Vertex, Face>> two_facets_insert_sites(const SimplicialComplex& k) {
  std::vector<std::pair<Vertex, Face>> out;
  for (Vertex w : k.vertices()) {
    auto lk = link(k, w);
    if (closed_surface_defect(lk)) continue;
    const auto missing = missing_faces(lk, 2);
    if (missing.empty()) continue;
    const Surface s(std::move(lk));
    for (const Face& t : missing) {
      if (k.contains(t)) continue;
      const std::array<Vertex, 3> cycle{t[0], t[1], t[2]};
      const auto cut = cut_surface(s, cycle);
      if (!cut.report.separates || cut.report.components_after_cut != 2) continue;
      int moebius = 0;
      bool ok = true;
      for (SideKind side : cut.report.side_descriptions) {
        ok = ok && side != SideKind::Other;
        moebius += side == SideKind::MoebiusStrip;
      }
      if (ok && moebius <= 1) out.emplace_back(w, t);
    }
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> two_facets_contract_sites(const SimplicialComplex& k) {
  std::set<std::pair<Vertex, Vertex>> found;
  for (const Face& t : k.faces(2)) {
    const auto around = k.facets_containing(t);
    if (around.size() != 2) continue;
    Vertex u = around[0].minus(t)[0], v = around[1].minus(t)[0];
    if (u > v) std::swap(u, v);
    if (k.adjacent(u, v) || found.count({u, v})) continue;
    if (single_common_triangle(k, u, v) == t) found.emplace(u, v);
  }
  return {found.begin(), found.end()};
}

std::vector<Vertex> unsubdivide_sites(const SimplicialComplex& k) {
  std::vector<Vertex> out;
  for (Vertex w : k.vertices()) {
    if (k.degree(w) != 4 || k.facets_containing(w).size() != 4) continue;
    if (!k.contains(Face(std::span<const Vertex>(k.neighbors(w))))) out.push_back(w);
  }
  return out;
}

std::vector<Face> split_sites(const SimplicialComplex& k) {
  std::vector<Face> out;
  const std::size_t before = count_components(k);
  for (const Face& tau : missing_faces(k, 3)) {
    auto view = view_tetrahedron(k, tau);
    if (!view || view->separating != 4) continue;
    std::size_t count = 0;
    split_components(k, tau, count);
    if (count == before + 1) out.push_back(tau);
  }
  return out;
}

}  // namespace pseudoform
