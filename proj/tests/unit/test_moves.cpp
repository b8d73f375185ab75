#include <gtest/gtest.h>

#include <queue>

#include "oracles.hpp"
#include "pseudoform/error.hpp"
#include "pseudoform/isomorphism.hpp"
#include "pseudoform/moves.hpp"
#include "pseudoform/normality.hpp"

using namespace pseudoform;
using oracle::Quad;

namespace {

// ∂Δ⁴ # ∂Δ⁴ after the bistellar 1-move at {2,3,4}, written out by hand.
std::vector<Quad> six_vertex_g2_one() {
  return {{1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 5, 6}, {2, 4, 5, 6},
          {3, 4, 5, 6}, {1, 2, 3, 6}, {1, 3, 4, 6}, {1, 2, 4, 6}};
}

// A 9-vertex stacked sphere with an admissible fold at {2,4}.
std::vector<Quad> foldable_nine() {
  return {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 5}, {0, 2, 4, 7}, {0, 2, 5, 7},
          {0, 3, 4, 5}, {0, 4, 5, 7}, {1, 2, 3, 6}, {1, 2, 4, 8}, {1, 2, 6, 8}, {1, 3, 4, 6},
          {1, 4, 6, 8}, {2, 3, 4, 5}, {2, 3, 4, 6}, {2, 4, 5, 7}, {2, 4, 6, 8}};
}

const Face kFoldS1{2, 4, 5, 7};
const Face kFoldS2{2, 4, 6, 8};
const GluingMap kFoldPsi{{2, 2}, {4, 4}, {5, 8}, {7, 6}};

std::size_t brute_edge_degree(const SimplicialComplex& k, Vertex u, Vertex v) {
  std::set<Vertex> verts;
  for (const auto& f : oracle::brute_link_facets(k, {std::min(u, v), std::max(u, v)}))
    verts.insert(f.begin(), f.end());
  return verts.size();
}

std::size_t brute_distance(const SimplicialComplex& k, Vertex a, Vertex b) {
  auto edges = oracle::brute_faces(k, 2);
  std::map<Vertex, std::size_t> d{{a, 0}};
  std::queue<Vertex> q;
  q.push(a);
  while (!q.empty()) {
    auto x = q.front();
    q.pop();
    for (const auto& e : edges) {
      if (e[0] != x && e[1] != x) continue;
      Vertex y = e[0] == x ? e[1] : e[0];
      if (!d.count(y)) {
        d[y] = d[x] + 1;
        q.push(y);
      }
    }
  }
  return d.count(b) ? d[b] : 1000;
}

}  // namespace

TEST(Bistellar, OneMoveOnTwoSimplexSum) {
  auto k = oracle::make(oracle::two_simplex_sum());
  auto r = bistellar_one(k, Face{2, 3, 4});
  EXPECT_EQ(r.complex, oracle::make(six_vertex_g2_one()));
  EXPECT_EQ(oracle::brute_faces(r.complex, 2).size(), 15u);
  EXPECT_EQ(oracle::brute_g2(r.complex), 1);
  EXPECT_EQ(r.record.g2_delta, 1);
  EXPECT_THROW(bistellar_one(boundary_simplex(), Face{0, 1, 2}), Error);
}

TEST(Bistellar, TwoMoveUndoesOneMove) {
  auto k = oracle::make(six_vertex_g2_one());
  auto r = bistellar_two(k, Face{1, 6});
  EXPECT_EQ(r.complex, oracle::make(oracle::two_simplex_sum()));
  EXPECT_EQ(oracle::brute_g2(r.complex), 0);
  EXPECT_EQ(r.record.g2_delta, -1);
  EXPECT_THROW(bistellar_two(boundary_simplex(), Face{0, 1}), Error);
  auto cross = oracle::make(oracle::cross_polytope());
  try {
    bistellar_two(cross, Face{0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("degree 4"), std::string::npos);
  }
}

TEST(Bistellar, RoundTripOnEverySite) {
  auto k = oracle::make(oracle::cross_polytope());
  for (const Face& t : bistellar_one_sites(k)) {
    auto up = bistellar_one(k, t);
    auto around = k.facets_containing(t);
    Face uv{around[0].minus(t)[0], around[1].minus(t)[0]};
    EXPECT_EQ(bistellar_two(up.complex, uv).complex, k);
  }
}

TEST(Contract, LinkConditionReported) {
  auto k = oracle::make(six_vertex_g2_one());
  try {
    contract_edge(k, Face{1, 6});
    FAIL() << "lk(1) and lk(6) share vertex 5 outside lk(16)";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
    EXPECT_NE(std::string(e.what()).find("{5}"), std::string::npos);
  }
  for (const Face& e : boundary_simplex().faces(1)) EXPECT_THROW(contract_edge(boundary_simplex(), e), Error);
}

TEST(Contract, DeltaMatchesBruteDegree) {
  for (const auto& quads : {six_vertex_g2_one(), oracle::cross_polytope(), oracle::simplex_chain(4)}) {
    auto k = oracle::make(quads);
    auto edges = contractible_edges(k);
    ASSERT_FALSE(edges.empty());
    for (const Face& e : edges) {
      auto r = contract_edge(k, e);
      const auto n = static_cast<long long>(brute_edge_degree(k, e[0], e[1]));
      EXPECT_EQ(oracle::brute_g2(r.complex) - oracle::brute_g2(k), -(n - 3));
      EXPECT_EQ(r.record.g2_delta, -(n - 3));
      EXPECT_TRUE(validate_normal(r.complex).normal());
      EXPECT_TRUE(r.homeomorphic);
    }
  }
}

TEST(Expand, BoundarySimplexFourCycle) {
  auto k = boundary_simplex();
  const std::vector<Vertex> cycle{1, 2, 3, 4};
  auto r = expand_edge(k, 0, cycle);
  EXPECT_EQ(oracle::brute_faces(r.complex, 1).size(), 6u);
  EXPECT_EQ(oracle::brute_faces(r.complex, 2).size(), 15u);
  EXPECT_EQ(oracle::brute_g2(r.complex), 1);
  EXPECT_EQ(r.record.g2_delta, 1);
  EXPECT_TRUE(validate_normal(r.complex).normal());
  // Contracting the new edge back onto label 0 restores the input exactly.
  auto back = contract_edge(r.complex, Face{r.record.fresh[0], r.record.fresh[1]}, Vertex{0});
  EXPECT_EQ(back.complex, k);
}

TEST(Expand, TriangleCycleKeepsG2) {
  auto k = boundary_simplex();
  auto r = expand_edge(k, 0, std::vector<Vertex>{1, 2, 3});
  EXPECT_EQ(r.record.g2_delta, 0);
  EXPECT_EQ(oracle::brute_g2(r.complex), 0);
  EXPECT_EQ(r.complex.vertices().size(), 6u);
}

TEST(Expand, RejectsBadCycles) {
  auto k = oracle::make(oracle::cross_polytope());
  // lk(0) is the octahedron on 2..7; 2-3 are antipodal, so not an edge.
  EXPECT_THROW(expand_edge(k, 0, std::vector<Vertex>{2, 3, 4}), Error);
  EXPECT_THROW(expand_edge(k, 0, std::vector<Vertex>{1, 2, 4}), Error);
}

TEST(Expand, ContractionRoundTripOnEveryEdge) {
  auto k = oracle::make(oracle::simplex_chain(3));
  for (const Face& e : contractible_edges(k)) {
    auto down = contract_edge(k, e);
    const Vertex w = down.record.fresh[0];
    auto cycle = cycle_order(link(k, e));
    Face anchor;
    for (const Face& f : k.facets_containing(e[0]))
      if (!f.contains(e[1])) {
        anchor = f.without(e[0]);
        break;
      }
    auto up = expand_edge(down.complex, w, cycle, anchor, std::pair{e[0], e[1]});
    EXPECT_EQ(up.complex, k);
  }
}

TEST(TwoFacets, InsertOnSixVertexSphere) {
  auto k = oracle::make(six_vertex_g2_one());
  EXPECT_TRUE(two_facets_insert_sites(boundary_simplex()).empty());
  auto sites = two_facets_insert_sites(k);
  ASSERT_FALSE(sites.empty());
  for (const auto& [w, abc] : sites) {
    auto r = insert_two_facets(k, w, abc);
    EXPECT_EQ(oracle::brute_g2(r.complex), 0);
    EXPECT_TRUE(validate_normal(r.complex).normal());
    auto back = contract_two_facets(r.complex, r.record.fresh[0], r.record.fresh[1], w);
    EXPECT_EQ(back.complex, k);
  }
}

TEST(TwoFacets, ContractErrorsAndComposite) {
  auto simplex = boundary_simplex();
  EXPECT_THROW(contract_two_facets(simplex, 0, 1), Error);
  EXPECT_TRUE(two_facets_contract_sites(oracle::make(oracle::two_simplex_sum())).empty());
  auto base = oracle::make(six_vertex_g2_one());
  const auto [w0, t0] = two_facets_insert_sites(base).front();
  auto k = insert_two_facets(base, w0, t0).complex;
  auto sites = two_facets_contract_sites(k);
  ASSERT_FALSE(sites.empty());
  for (const auto& [u, v] : sites) {
    auto direct = contract_two_facets(k, u, v);
    EXPECT_EQ(oracle::brute_g2(direct.complex) - oracle::brute_g2(k), 1);
    // Same thing as a bistellar 1-move at the shared triangle and a contraction of uv.
    std::optional<Face> abc;
    for (const Face& t : k.faces(2)) {
      auto around = k.facets_containing(t);
      if (around.size() == 2 && around[0].minus(t)[0] == std::min(u, v) && around[1].minus(t)[0] == std::max(u, v))
        abc = t;
    }
    ASSERT_TRUE(abc);
    auto two_step = contract_edge(bistellar_one(k, *abc).complex, Face{u, v});
    EXPECT_TRUE(are_isomorphic(direct.complex, two_step.complex));
  }
}

TEST(ConnectedSum, TwoSimplices) {
  auto a = boundary_simplex();
  auto b = boundary_simplex(std::array<Vertex, 5>{5, 6, 7, 8, 9});
  auto r = connected_sum(a, Face{0, 1, 2, 3}, b, Face{5, 6, 7, 8}, {{0, 5}, {1, 6}, {2, 7}, {3, 8}});
  auto fv = f_vector(r.complex);
  EXPECT_EQ(fv.f, (std::array<std::int64_t, 4>{6, 14, 16, 8}));
  EXPECT_EQ(fv.g2, 0);
  EXPECT_TRUE(are_isomorphic(r.complex, oracle::make(oracle::two_simplex_sum())));
  EXPECT_THROW(connected_sum(a, Face{0, 1, 2, 3}, a, Face{0, 1, 2, 4}, {{0, 0}, {1, 1}, {2, 2}, {3, 4}}), Error);
  EXPECT_THROW(connected_sum(a, Face{0, 1, 2, 3}, b, Face{5, 6, 7, 8}, {{0, 5}, {1, 5}, {2, 7}, {3, 8}}), Error);
}

TEST(ConnectedSum, ChainOfThreeHasZeroG2) {
  auto k = boundary_simplex();
  for (Vertex step = 1; step <= 2; ++step) {
    const Vertex base = 10 * step;
    auto next = boundary_simplex(std::array<Vertex, 5>{base, base + 1, base + 2, base + 3, base + 4});
    const Face s1 = k.facets().back();
    k = connected_sum(k, s1, next, Face{base, base + 1, base + 2, base + 3},
                      {{s1[0], base}, {s1[1], base + 1}, {s1[2], base + 2}, {s1[3], base + 3}})
            .complex;
  }
  EXPECT_EQ(oracle::brute_g2(k), 0);
  EXPECT_EQ(k.vertices().size(), 7u);
}

TEST(ConnectedSum, PreservesSingularVertices) {
  auto folded = edge_fold(oracle::make(foldable_nine()), kFoldS1, kFoldS2, kFoldPsi).complex;
  auto extra = boundary_simplex(std::array<Vertex, 5>{20, 21, 22, 23, 24});
  const Face s1 = folded.facets().front();
  auto r = connected_sum(folded, s1, extra, Face{20, 21, 22, 23},
                         {{s1[0], 20}, {s1[1], 21}, {s1[2], 22}, {s1[3], 23}});
  EXPECT_EQ(oracle::brute_g2(r.complex), 3);
  EXPECT_EQ(singular_vertices(r.complex), (std::vector<Vertex>{2, 4}));
}

TEST(Handle, NineChainEndFacets) {
  auto k = oracle::make(oracle::simplex_chain(9));
  const Face s1{0, 1, 2, 3}, s2{9, 10, 11, 12};
  GluingMap psi{{0, 9}, {1, 10}, {2, 11}, {3, 12}};
  for (const auto& [x, y] : psi) EXPECT_GE(brute_distance(k, x, y), 3u);
  auto r = handle_addition(k, s1, s2, psi);
  EXPECT_EQ(oracle::brute_g2(r.complex) - oracle::brute_g2(k), 10);
  EXPECT_EQ(r.record.g2_delta, 10);
  auto report = validate_normal(r.complex);
  EXPECT_TRUE(report.normal());
  EXPECT_TRUE(report.singular_vertices.empty());
}

TEST(Handle, Inadmissible) {
  auto k = oracle::make(oracle::simplex_chain(9));
  // Sharing a vertex: distance 0.
  EXPECT_THROW(handle_addition(k, Face{0, 1, 2, 3}, Face{0, 1, 2, 4}, {{0, 0}, {1, 1}, {2, 2}, {3, 4}}), Error);
  // 4 and 8 are adjacent.
  auto why = handle_defect(k, Face{0, 1, 2, 4}, Face{8, 10, 11, 12}, {{0, 10}, {1, 11}, {2, 12}, {4, 8}});
  ASSERT_TRUE(why);
  EXPECT_NE(why->find("length 1"), std::string::npos);
  // Different components are a connected sum, not a handle.
  std::array<SimplicialComplex, 2> parts{boundary_simplex(), boundary_simplex(std::array<Vertex, 5>{5, 6, 7, 8, 9})};
  EXPECT_TRUE(handle_defect(disjoint_union(parts), Face{0, 1, 2, 3}, Face{5, 6, 7, 8},
                            {{0, 5}, {1, 6}, {2, 7}, {3, 8}}));
}

TEST(Fold, RaisesG2ByThreeWithTwoProjectivePlanes) {
  auto k = oracle::make(foldable_nine());
  auto r = edge_fold(k, kFoldS1, kFoldS2, kFoldPsi);
  EXPECT_EQ(oracle::brute_g2(r.complex) - oracle::brute_g2(k), 3);
  auto report = validate_normal(r.complex);
  ASSERT_TRUE(report.normal());
  ASSERT_EQ(report.singular_vertices.size(), 2u);
  for (const auto& [v, cls] : report.singular_vertices) {
    EXPECT_TRUE(v == 2 || v == 4);
    EXPECT_EQ(cls.name, SurfaceName::RP2);
    EXPECT_EQ(surface_g2(link(r.complex, v)), 3);
  }
}

TEST(Fold, CrossPolytopeIsInadmissible) {
  auto k = oracle::make(oracle::cross_polytope());
  // +i is 2i and -i is 2i+1: facets {+1,+2,+3,+4} and {+1,+2,-3,-4}.
  const Face s1{0, 2, 4, 6}, s2{0, 2, 5, 7};
  auto why = fold_defect(k, s1, s2, {{0, 0}, {2, 2}, {4, 5}, {6, 7}});
  ASSERT_TRUE(why);
  EXPECT_NE(why->find("avoids the folding edge"), std::string::npos);
  EXPECT_TRUE(fold_defect(k, s1, s2, {{0, 0}, {2, 2}, {4, 7}, {6, 5}}));
}

TEST(Fold, WrongOrientationIsRejected) {
  auto k = oracle::make(foldable_nine());
  auto why = fold_defect(k, kFoldS1, kFoldS2, {{2, 2}, {4, 4}, {5, 6}, {7, 8}});
  ASSERT_TRUE(why);
}

TEST(Unfold, DetectAndRoundTrip) {
  EXPECT_FALSE(detect_unfold(boundary_simplex()));
  EXPECT_FALSE(detect_unfold(oracle::make(oracle::two_simplex_sum())));
  auto s = oracle::make(foldable_nine());
  auto folded = edge_fold(s, kFoldS1, kFoldS2, kFoldPsi).complex;
  ASSERT_TRUE(detect_unfold(folded));
  bool seen = false;
  for (const auto& [tau, moebius] : classify_missing_tetrahedra(folded))
    if (tau == kFoldS1) {
      seen = true;
      EXPECT_EQ(moebius, 2);
    }
  EXPECT_TRUE(seen);
  auto un = edge_unfold(folded, kFoldS1);
  EXPECT_EQ(un.record.g2_delta, -3);
  EXPECT_TRUE(are_isomorphic(un.complex, s));
  EXPECT_TRUE(validate_normal(un.complex).singular_vertices.empty());
  // Every detected site unfolds to a sphere with g2 = 0.
  auto site = detect_unfold(folded);
  auto other = edge_unfold(folded, site->tetrahedron);
  EXPECT_EQ(oracle::brute_g2(other.complex), 0);
  EXPECT_TRUE(validate_normal(other.complex).singular_vertices.empty());
}

TEST(Unfold, RejectsSeparatingTetrahedron) {
  auto k = oracle::make(oracle::two_simplex_sum());
  EXPECT_THROW(edge_unfold(k, Face{2, 3, 4, 5}), Error);
}

TEST(Split, TwoSimplexSum) {
  auto k = oracle::make(oracle::two_simplex_sum());
  EXPECT_EQ(split_sites(k), std::vector<Face>{(Face{2, 3, 4, 5})});
  auto r = split_missing_tetrahedron(k, Face{2, 3, 4, 5});
  auto parts = components(r.complex);
  ASSERT_EQ(parts.size(), 2u);
  for (const auto& p : parts) EXPECT_TRUE(is_boundary_simplex(p));
  EXPECT_EQ(r.record.kind, MoveKind::ConnectedSum);
  EXPECT_EQ(apply_move(r.complex, r.record).complex, k);
}

TEST(Split, FoldedTetrahedronIsRejected) {
  auto folded = edge_fold(oracle::make(foldable_nine()), kFoldS1, kFoldS2, kFoldPsi).complex;
  EXPECT_THROW(split_missing_tetrahedron(folded, kFoldS1), Error);
}

TEST(Split, StackedSphereIntoSimplices) {
  for (Vertex k_sub = 1; k_sub <= 5; ++k_sub) {
    auto k = boundary_simplex();
    for (Vertex i = 0; i < k_sub; ++i) k = facet_subdivide(k, k.facets()[i % k.facets().size()]).complex;
    for (auto sites = split_sites(k); !sites.empty(); sites = split_sites(k))
      k = split_missing_tetrahedron(k, sites.front()).complex;
    auto parts = components(k);
    EXPECT_EQ(parts.size(), k_sub + 1u);
    for (const auto& p : parts) EXPECT_TRUE(is_boundary_simplex(p));
  }
}

TEST(Subdivide, CountsAndRoundTrip) {
  auto k = boundary_simplex();
  for (int i = 1; i <= 6; ++i) {
    auto r = facet_subdivide(k, k.facets()[static_cast<std::size_t>(i) % k.facets().size()]);
    EXPECT_EQ(r.record.g2_delta, 0);
    EXPECT_EQ(facet_unsubdivide(r.complex, r.record.fresh[0]).complex, k);
    k = r.complex;
    EXPECT_EQ(oracle::brute_faces(k, 1).size(), 5u + static_cast<std::size_t>(i));
    EXPECT_EQ(oracle::brute_faces(k, 2).size(), 10u + 4u * static_cast<std::size_t>(i));
  }
  EXPECT_THROW(facet_unsubdivide(oracle::make(oracle::cross_polytope()), 0), Error);
  EXPECT_THROW(facet_unsubdivide(boundary_simplex(), 0), Error);  // its tetrahedron is a facet
}

TEST(Records, FormatParseRoundTrip) {
  MoveRecord r;
  r.kind = MoveKind::EdgeExpand;
  r.face = Face{7};
  r.anchor = Face{1, 2, 3};
  r.cycle = {4, 2, 9};
  r.fresh = {10, 11};
  r.g2_delta = 0;
  r.component = 3;
  const auto text = format_move(r);
  EXPECT_EQ(text, "move kind=EdgeExpand face=7 anchor=1,2,3 cycle=4,2,9 fresh=10,11 g2_delta=0 comp=3");
  EXPECT_EQ(parse_move(text), r);
  EXPECT_EQ(format_move(parse_move(text)), text);

  MoveRecord g;
  g.kind = MoveKind::EdgeFold;
  g.face = Face{2, 4, 5, 7};
  g.other = Face{2, 4, 6, 8};
  g.map = kFoldPsi;
  g.g2_delta = 3;
  EXPECT_EQ(parse_move(format_move(g)), g);

  EXPECT_THROW(parse_move("move kind=Nope g2_delta=0", 4), ParseError);
  EXPECT_THROW(parse_move("move face=1,2 kind=Bistellar2 g2_delta=-1"), ParseError);
  EXPECT_THROW(parse_move("move kind=Bistellar2 face=1,2"), ParseError);
  try {
    parse_move("move kind=Bistellar2 face=1,x g2_delta=-1", 12);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 12u);
  }
}

TEST(Records, ApplyRejectsTamperedDelta) {
  auto k = oracle::make(oracle::two_simplex_sum());
  auto r = bistellar_one(k, Face{2, 3, 4});
  EXPECT_EQ(apply_move(k, r.record).complex, r.complex);
  auto bad = r.record;
  bad.g2_delta = 2;
  EXPECT_THROW(apply_move(k, bad), Error);
}
