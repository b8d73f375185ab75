#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "pseudoform/error.hpp"
#include "pseudoform/surface.hpp"

using namespace pseudoform;

namespace {

Surface surf(const std::vector<std::vector<Vertex>>& tris) { return Surface::from_triangles(tris); }

std::vector<std::vector<Vertex>> tetra_boundary() { return oracle::subsets({1, 2, 3, 4}, 3); }

std::vector<std::vector<Vertex>> octahedron() {
  // Antipodal pairs {0,1}, {2,3}, {4,5}.
  std::vector<std::vector<Vertex>> out;
  for (unsigned s = 0; s < 8; ++s) out.push_back({0u + (s & 1u), 2u + ((s >> 1) & 1u), 4u + ((s >> 2) & 1u)});
  return out;
}

std::vector<std::vector<Vertex>> torus7() {
  std::vector<std::vector<Vertex>> out;
  for (Vertex i = 0; i < 7; ++i) {
    out.push_back({i, (i + 1) % 7, (i + 3) % 7});
    out.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return out;
}

// Dual-graph components after deleting the cycle edges, computed directly.
std::size_t brute_pieces(const std::vector<std::vector<Vertex>>& tris, const std::vector<Vertex>& cycle) {
  std::set<std::vector<Vertex>> cut;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    std::vector<Vertex> e{cycle[i], cycle[(i + 1) % cycle.size()]};
    std::sort(e.begin(), e.end());
    cut.insert(e);
  }
  std::vector<std::size_t> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < tris.size(); ++a)
    for (std::size_t b = a + 1; b < tris.size(); ++b) {
      std::vector<Vertex> ta = tris[a], tb = tris[b], common;
      std::sort(ta.begin(), ta.end());
      std::sort(tb.begin(), tb.end());
      std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
      if (common.size() == 2 && !cut.count(common)) parent[find(a)] = find(b);
    }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < tris.size(); ++i) roots.insert(find(i));
  return roots.size();
}

int chi(const SimplicialComplex& s) {
  return static_cast<int>(s.num_faces(0)) - static_cast<int>(s.num_faces(1)) + static_cast<int>(s.num_faces(2));
}

}  // namespace

TEST(Classify, Examples) {
  auto sphere = classify_surface(surf(tetra_boundary()));
  EXPECT_EQ(sphere.euler_characteristic, 2);
  EXPECT_TRUE(sphere.orientable);
  EXPECT_EQ(sphere.name, SurfaceName::Sphere);

  EXPECT_EQ(classify_surface(surf(octahedron())).name, SurfaceName::Sphere);

  auto rp2 = classify_surface(surf(oracle::rp2_six()));
  EXPECT_EQ(rp2.euler_characteristic, oracle::brute_chi(oracle::rp2_six()));
  EXPECT_EQ(rp2.euler_characteristic, 1);
  EXPECT_FALSE(rp2.orientable);
  EXPECT_EQ(rp2.name, SurfaceName::RP2);
  EXPECT_EQ(rp2.to_string(), "RP2");
  EXPECT_EQ(surface_g2(surf(oracle::rp2_six()).complex()), 3);

  auto t = classify_surface(surf(torus7()));
  EXPECT_EQ(t.name, SurfaceName::Torus);
  EXPECT_EQ(t.euler_characteristic, oracle::brute_chi(torus7()));
}

TEST(Classify, InvariantUnderRelabeling) {
  auto s = surf(oracle::rp2_six()).complex();
  std::map<Vertex, Vertex> m{{1, 40}, {2, 7}, {3, 19}, {4, 2}, {5, 100}, {6, 0}};
  EXPECT_EQ(classify_surface(Surface(relabel(s, m))), classify_surface(Surface(s)));
}

TEST(Surface, RejectsNonClosed) {
  try {
    surf({{1, 2, 3}, {1, 3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASurface);
  }
  // Two tetrahedron boundaries sharing a vertex: edges fine, vertex link is two cycles.
  auto pinched = tetra_boundary();
  for (auto& t : oracle::subsets({1, 5, 6, 7}, 3)) pinched.push_back(t);
  EXPECT_THROW(surf(pinched), Error);
}

TEST(CycleCut, TriangleOnSphere) {
  auto r = cycle_cut(surf(tetra_boundary()), std::vector<Vertex>{1, 2, 3});
  EXPECT_TRUE(r.separates);
  EXPECT_EQ(r.components_after_cut, 2u);
  EXPECT_EQ(r.neighborhood, Neighborhood::Annulus);
  EXPECT_EQ(r.side_descriptions, (std::vector<SideKind>{SideKind::Disc, SideKind::Disc}));
}

TEST(CycleCut, FourCycleOnTetrahedron) {
  auto s = surf(tetra_boundary());
  auto cut = cut_surface(s, std::vector<Vertex>{1, 2, 3, 4});
  EXPECT_TRUE(cut.report.separates);
  // Triangles in order 123, 124, 134, 234.
  const auto& p = cut.piece_of_triangle;
  EXPECT_EQ(p[0], p[2]);
  EXPECT_EQ(p[1], p[3]);
  EXPECT_NE(p[0], p[1]);
  EXPECT_EQ(brute_pieces(tetra_boundary(), {1, 2, 3, 4}), 2u);
}

TEST(CycleCut, RP2MissingTrianglesAreMoebius) {
  auto tris = oracle::rp2_six();
  auto s = surf(tris);
  auto faces = oracle::brute_faces(tris, 3);
  int checked = 0;
  for (auto& t : oracle::subsets({1, 2, 3, 4, 5, 6}, 3)) {
    if (faces.count(t)) continue;
    auto cut = cut_surface(s, t);
    EXPECT_EQ(cut.report.neighborhood, Neighborhood::Moebius) << t[0] << t[1] << t[2];
    EXPECT_FALSE(cut.report.separates);
    EXPECT_EQ(brute_pieces(tris, t), 1u);
    ASSERT_EQ(cut.pieces.size(), 1u);
    EXPECT_EQ(chi(cut.pieces[0]), 1);  // cutting ℝP² along a one-sided curve leaves a disc
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(CycleCut, GlueBackAndEulerSum) {
  std::vector<std::pair<std::vector<std::vector<Vertex>>, std::vector<Vertex>>> cases{
      {tetra_boundary(), {1, 2, 3}},
      {tetra_boundary(), {1, 2, 3, 4}},
      {octahedron(), {0, 2, 1, 3}},
      {oracle::rp2_six(), {1, 2, 4}},
      {torus7(), {0, 1, 2}},
  };
  for (auto& [tris, cycle] : cases) {
    auto s = surf(tris);
    auto cut = cut_surface(s, cycle);
    EXPECT_EQ(cut.report.components_after_cut, brute_pieces(tris, cycle));
    std::vector<Face> glued;
    int chi_sum = 0;
    for (const auto& piece : cut.pieces) {
      chi_sum += chi(piece);
      const auto back = relabel(piece, cut.glue);
      glued.insert(glued.end(), back.facets().begin(), back.facets().end());
    }
    EXPECT_EQ(SimplicialComplex(glued), s.complex());
    EXPECT_EQ(chi_sum, classify_surface(s).euler_characteristic);
    if (cut.report.neighborhood == Neighborhood::Moebius) EXPECT_FALSE(cut.report.separates);
    if (cut.report.separates) EXPECT_EQ(cut.report.components_after_cut, 2u);
  }
}

TEST(CycleCut, SeparatingCyclesOnSpheresGiveDiscs) {
  auto s = surf(octahedron());
  auto r = cycle_cut(s, std::vector<Vertex>{0, 2, 1, 3});
  EXPECT_TRUE(r.separates);
  EXPECT_EQ(r.side_descriptions, (std::vector<SideKind>{SideKind::Disc, SideKind::Disc}));
}

TEST(CycleCut, TorusMeridianDoesNotSeparate) {
  auto r = cycle_cut(surf(torus7()), std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
  EXPECT_FALSE(r.separates);
  EXPECT_EQ(r.neighborhood, Neighborhood::Annulus);
}

TEST(CycleCut, RejectsNonCycles) {
  auto s = surf(octahedron());
  EXPECT_THROW(cycle_cut(s, std::vector<Vertex>{0, 1, 2}), Error);  // 01 is not an edge
  EXPECT_THROW(cycle_cut(s, std::vector<Vertex>{0, 2}), Error);
  EXPECT_THROW(cycle_cut(s, std::vector<Vertex>{0, 2, 0, 3}), Error);
}

TEST(MissingTriangleNeighborhood, SphereLinkSeparates) {
  auto k = oracle::make(oracle::two_simplex_sum());
  auto r = missing_triangle_neighborhood(k, 2, Face{3, 4, 5});
  EXPECT_TRUE(r.separates);
  EXPECT_EQ(r.neighborhood, Neighborhood::Annulus);
  EXPECT_THROW(missing_triangle_neighborhood(k, 2, Face{1, 3, 4}), Error);  // a face of lk(2)
  EXPECT_THROW(missing_triangle_neighborhood(k, 2, Face{1, 3, 6}), Error);  // 16 not in lk(2)
}
