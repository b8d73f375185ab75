#include "pseudoform/surface.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "pseudoform/error.hpp"

namespace pseudoform {

std::string SurfaceClass::to_string() const {
  switch (name) {
    case SurfaceName::Sphere: return "S2";
    case SurfaceName::RP2: return "RP2";
    case SurfaceName::Torus: return "T2";
    case SurfaceName::Klein: return "K2";
    case SurfaceName::Other: break;
  }
  return "chi=" + std::to_string(euler_characteristic) + (orientable ? ",orientable" : ",nonorientable");
}

std::string to_string(Neighborhood n) { return n == Neighborhood::Annulus ? "annulus" : "moebius"; }

std::string to_string(SideKind s) {
  switch (s) {
    case SideKind::Disc: return "disc";
    case SideKind::MoebiusStrip: return "moebius-strip";
    case SideKind::Other: break;
  }
  return "other";
}

std::optional<std::string> closed_surface_defect(const SimplicialComplex& s) {
  if (s.empty()) return "empty complex";
  if (s.dimension() != 2 || !s.is_pure()) return "not pure 2-dimensional";
  for (const Face& e : s.faces(1)) {
    auto n = s.count_facets_containing(e);
    if (n != 2) return "edge {" + e.to_string() + "} lies in " + std::to_string(n) + " triangles";
  }
  for (Vertex v : s.vertices()) {
    try {
      cycle_order(link(s, v));
    } catch (const Error&) {
      return "link of vertex " + std::to_string(v) + " is not a single cycle";
    }
  }
  if (count_components(s) != 1) return "surface is disconnected";
  return std::nullopt;
}

Surface::Surface(SimplicialComplex triangles) : complex_(std::move(triangles)) {
  if (auto defect = closed_surface_defect(complex_)) throw Error(ErrorKind::NotASurface, *defect);
}

Surface Surface::from_triangles(const std::vector<std::vector<Vertex>>& triples) {
  std::vector<Face> faces;
  for (const auto& t : triples) {
    if (t.size() != 3) throw Error(ErrorKind::MalformedFacet, "surface facets have 3 vertices");
    faces.emplace_back(std::span<const Vertex>(t));
  }
  return Surface(SimplicialComplex(std::move(faces)));
}

namespace {

// +1 if the sorted orientation (t0 t1 t2) traverses e upwards, -1 otherwise.
int edge_sign(const Face& tri, const Face& e) {
  // Sorted cycle t0->t1->t2->t0: (t0,t1) and (t1,t2) go up, (t0,t2) goes down.
  return (e[0] == tri[0] && e[1] == tri[2]) ? -1 : 1;
}

}  // namespace

bool is_orientable(const SimplicialComplex& s) {
  const auto& tris = s.facets();
  std::map<Face, std::vector<std::size_t>> by_edge;
  for (std::size_t i = 0; i < tris.size(); ++i)
    for (const Face& e : tris[i].boundary()) by_edge[e].push_back(i);

  std::vector<int> orient(tris.size(), 0);
  for (std::size_t start = 0; start < tris.size(); ++start) {
    if (orient[start]) continue;
    orient[start] = 1;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      auto t = q.front();
      q.pop();
      for (const Face& e : tris[t].boundary()) {
        for (auto u : by_edge[e]) {
          if (u == t) continue;
          const int want = -orient[t] * edge_sign(tris[t], e) * edge_sign(tris[u], e);
          if (orient[u] == 0) {
            orient[u] = want;
            q.push(u);
          } else if (orient[u] != want) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

SurfaceClass classify_surface(const Surface& s) {
  const auto& c = s.complex();
  SurfaceClass out;
  out.euler_characteristic = static_cast<int>(c.num_faces(0)) - static_cast<int>(c.num_faces(1)) +
                             static_cast<int>(c.num_faces(2));
  out.orientable = is_orientable(c);
  const int chi = out.euler_characteristic;
  if (chi == 2) out.name = SurfaceName::Sphere;
  else if (chi == 1 && !out.orientable) out.name = SurfaceName::RP2;
  else if (chi == 0) out.name = out.orientable ? SurfaceName::Torus : SurfaceName::Klein;
  else out.name = SurfaceName::Other;
  return out;
}

SurfaceCut cut_surface(const Surface& s, std::span<const Vertex> cycle) {
  const auto& c = s.complex();
  const std::size_t n = cycle.size();
  if (n < 3) throw Error(ErrorKind::NotACycle, "cycle needs at least 3 vertices");
  {
    std::vector<Vertex> sorted(cycle.begin(), cycle.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::NotACycle, "cycle repeats a vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vertex a = cycle[i], b = cycle[(i + 1) % n];
    if (!c.contains(Face{a, b}))
      throw Error(ErrorKind::NotACycle, "{" + Face{a, b}.to_string() + "} is not an edge of the surface");
  }

  // Side of each triangle corner at each cycle vertex: the two cycle edges at
  // c_i split the fan around c_i into two arcs.
  Vertex fresh = c.next_label();
  std::map<Vertex, Vertex> duplicate;  // cycle vertex -> label of its side-1 copy
  std::map<std::pair<Face, Vertex>, int> side;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex ci = cycle[i];
    const Vertex prev = cycle[(i + n - 1) % n];
    const Vertex next = cycle[(i + 1) % n];
    const auto fan = cycle_order(link(c, ci));
    const std::size_t m = fan.size();
    const auto pos_prev = static_cast<std::size_t>(std::find(fan.begin(), fan.end(), prev) - fan.begin());
    const auto pos_next = static_cast<std::size_t>(std::find(fan.begin(), fan.end(), next) - fan.begin());
    int current = 0;
    for (std::size_t step = 0; step < m; ++step) {
      const std::size_t j = (pos_prev + step) % m;
      if (j == pos_next) current = 1;
      Face tri{ci, fan[j], fan[(j + 1) % m]};
      side[{tri, ci}] = current;
    }
    duplicate[ci] = fresh++;
  }

  SurfaceCut out;
  std::vector<Face> cut_tris;
  cut_tris.reserve(s.triangles().size());
  for (const Face& t : s.triangles()) {
    std::array<Vertex, 3> buf{};
    for (std::size_t k = 0; k < 3; ++k) {
      auto it = side.find({t, t[k]});
      buf[k] = (it != side.end() && it->second == 1) ? duplicate[t[k]] : t[k];
    }
    cut_tris.emplace_back(std::span<const Vertex>(buf.data(), 3));
  }
  for (const auto& [orig, dup] : duplicate) out.glue[dup] = orig;

  const SimplicialComplex cut(cut_tris);
  auto parts = components(cut);
  // Order pieces so that piece 0 contains the smallest original triangle.
  std::stable_sort(parts.begin(), parts.end(), [&](const SimplicialComplex& a, const SimplicialComplex& b) {
    auto first = [&](const SimplicialComplex& p) {
      std::size_t best = cut_tris.size();
      for (std::size_t i = 0; i < cut_tris.size(); ++i)
        if (p.has_facet(cut_tris[i])) { best = i; break; }
      return best;
    };
    return first(a) < first(b);
  });
  out.piece_of_triangle.resize(cut_tris.size());
  for (std::size_t i = 0; i < cut_tris.size(); ++i)
    for (std::size_t p = 0; p < parts.size(); ++p)
      if (parts[p].has_facet(cut_tris[i])) out.piece_of_triangle[i] = p;

  // Boundary of the cut: edges lying in a single triangle.
  auto boundary_circles = [](const SimplicialComplex& piece) {
    std::vector<Face> bd;
    for (const Face& e : piece.faces(1))
      if (piece.count_facets_containing(e) == 1) bd.push_back(e);
    if (bd.empty()) return std::size_t{0};
    return count_components(SimplicialComplex(bd));
  };

  CutReport& r = out.report;
  r.cycle.assign(cycle.begin(), cycle.end());
  r.components_after_cut = parts.size();
  r.separates = parts.size() > 1;
  r.neighborhood = boundary_circles(cut) == 1 ? Neighborhood::Moebius : Neighborhood::Annulus;
  if (r.separates) {
    for (const auto& piece : parts) {
      const int chi = static_cast<int>(piece.num_faces(0)) - static_cast<int>(piece.num_faces(1)) +
                      static_cast<int>(piece.num_faces(2));
      const auto b = boundary_circles(piece);
      const bool orientable = is_orientable(piece);
      SideKind kind = SideKind::Other;
      if (b == 1 && chi == 1 && orientable) kind = SideKind::Disc;
      else if (b == 1 && chi == 0 && !orientable) kind = SideKind::MoebiusStrip;
      r.side_descriptions.push_back(kind);
    }
  }
  out.pieces = std::move(parts);
  return out;
}

CutReport cycle_cut(const Surface& s, std::span<const Vertex> cycle) { return cut_surface(s, cycle).report; }

CutReport missing_triangle_neighborhood(const SimplicialComplex& k, Vertex v, const Face& t) {
  if (t.size() != 3) throw Error(ErrorKind::Precondition, "expected a triangle");
  if (!k.contains_vertex(v)) throw Error(ErrorKind::Precondition, "vertex not in complex");
  auto lk = link(k, v);
  if (auto defect = closed_surface_defect(lk))
    throw Error(ErrorKind::Precondition, "link of " + std::to_string(v) + " is not a closed surface: " + *defect);
  for (const Face& e : t.boundary())
    if (!lk.contains(e))
      throw Error(ErrorKind::Precondition, "edge {" + e.to_string() + "} of the triangle is not in the link");
  if (lk.contains(t))
    throw Error(ErrorKind::Precondition, "triangle {" + t.to_string() + "} is a face of the link");
  const std::array<Vertex, 3> cyc{t[0], t[1], t[2]};
  return cycle_cut(Surface(std::move(lk)), cyc);
}

}  // namespace pseudoform
