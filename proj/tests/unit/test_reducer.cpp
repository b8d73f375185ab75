#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pseudoform/error.hpp"
#include "pseudoform/isomorphism.hpp"
#include "pseudoform/moves.hpp"
#include "pseudoform/normality.hpp"
#include "pseudoform/reducer.hpp"

using namespace pseudoform;

namespace {

SimplicialComplex foldable_nine() {
  return oracle::make({{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 5}, {0, 2, 4, 7}, {0, 2, 5, 7},
                       {0, 3, 4, 5}, {0, 4, 5, 7}, {1, 2, 3, 6}, {1, 2, 4, 8}, {1, 2, 6, 8}, {1, 3, 4, 6},
                       {1, 4, 6, 8}, {2, 3, 4, 5}, {2, 3, 4, 6}, {2, 4, 5, 7}, {2, 4, 6, 8}});
}

SimplicialComplex folded_nine() {
  return edge_fold(foldable_nine(), Face{2, 4, 5, 7}, Face{2, 4, 6, 8}, {{2, 2}, {4, 4}, {5, 8}, {7, 6}}).complex;
}

std::size_t count_kind(const ConstructionTrace& t, MoveKind kind) {
  return static_cast<std::size_t>(std::count_if(t.forward_moves.begin(), t.forward_moves.end(),
                                                [&](const MoveRecord& m) { return m.kind == kind; }));
}

std::int64_t delta_sum(const ConstructionTrace& t) {
  std::int64_t s = 0;
  for (const auto& m : t.forward_moves) s += m.g2_delta;
  return s;
}

void expect_round_trip(const SimplicialComplex& k) {
  auto r = reduce(k);
  ASSERT_TRUE(r.accepted()) << r.reason;
  for (const auto& seed : r.trace.seeds) EXPECT_TRUE(is_boundary_simplex(seed));
  auto back = replay(r.trace, true);
  EXPECT_EQ(back, k);
  EXPECT_TRUE(are_isomorphic(back, k));
  EXPECT_EQ(delta_sum(r.trace), oracle::brute_g2(k));
  EXPECT_EQ(count_kind(r.trace, MoveKind::HandleAdd), 0u);
  EXPECT_EQ(parse_trace(format_trace(r.trace)), r.trace);
  EXPECT_EQ(format_trace(parse_trace(format_trace(r.trace))), format_trace(r.trace));
}

}  // namespace

TEST(Reduce, BoundarySimplexIsItsOwnSeed) {
  auto r = reduce(boundary_simplex());
  ASSERT_TRUE(r.accepted());
  EXPECT_EQ(r.input_class, InputClass::StackedSphere);
  EXPECT_EQ(r.trace.seeds.size(), 1u);
  EXPECT_TRUE(r.trace.forward_moves.empty());
  EXPECT_EQ(replay(r.trace), boundary_simplex());
}

TEST(Reduce, ExpandedSimplex) {
  auto k = expand_edge(boundary_simplex(), 0, std::vector<Vertex>{1, 2, 3, 4}).complex;
  auto r = reduce(k);
  ASSERT_TRUE(r.accepted()) << r.reason;
  EXPECT_EQ(r.input_class, InputClass::SphereG2le9);
  EXPECT_EQ(delta_sum(r.trace), 1);
  expect_round_trip(k);
}

TEST(Reduce, SpheresRoundTrip) {
  expect_round_trip(oracle::make(oracle::two_simplex_sum()));
  expect_round_trip(oracle::make(oracle::cross_polytope()));
  expect_round_trip(oracle::make(oracle::simplex_chain(5)));
  expect_round_trip(foldable_nine());
}

TEST(Reduce, StackedSphereSplitsIntoSeeds) {
  auto r = reduce(oracle::make(oracle::simplex_chain(4)));
  ASSERT_TRUE(r.accepted());
  EXPECT_EQ(r.trace.seeds.size(), 4u);
  EXPECT_EQ(count_kind(r.trace, MoveKind::ConnectedSum), 3u);
}

TEST(Reduce, FoldedSphereHasOneFold) {
  auto k = folded_nine();
  auto r = reduce(k);
  ASSERT_TRUE(r.accepted()) << r.reason;
  EXPECT_EQ(r.input_class, InputClass::TwoSingularG2_3or4);
  EXPECT_EQ(count_kind(r.trace, MoveKind::EdgeFold), 1u);
  expect_round_trip(k);
}

TEST(Reduce, SingularPlusExpansion) {
  // g2 = 4: a folded sphere with one extra expansion far from the fold.
  auto k = folded_nine();
  std::optional<SimplicialComplex> bigger;
  for (Vertex w : k.vertices()) {
    if (w == 2 || w == 4) continue;
    auto l = link(k, w);
    for (Vertex x : l.vertices()) {
      // The link of x inside lk(w) is a cycle of lk(w).
      auto ring = cycle_order(link(l, x));
      if (ring.size() != 4) continue;
      try {
        bigger = expand_edge(k, w, ring).complex;
      } catch (const Error&) {
        continue;
      }
      break;
    }
    if (bigger) break;
  }
  ASSERT_TRUE(bigger);
  EXPECT_EQ(g2(*bigger), 4);
  auto r = reduce(*bigger);
  ASSERT_TRUE(r.accepted()) << r.reason;
  EXPECT_EQ(count_kind(r.trace, MoveKind::EdgeFold), 1u);
  expect_round_trip(*bigger);
}

TEST(Reduce, Rejections) {
  std::array<SimplicialComplex, 2> parts{boundary_simplex(),
                                         boundary_simplex(std::array<Vertex, 5>{0, 1, 2, 5, 6})};
  // Two simplices sharing the triangle 012: not normal.
  std::vector<Face> facets;
  for (const auto& p : parts) facets.insert(facets.end(), p.facets().begin(), p.facets().end());
  auto r = reduce(SimplicialComplex(facets));
  EXPECT_FALSE(r.accepted());
  EXPECT_NE(r.reason.find("not a normal"), std::string::npos);

  // Handle on the 9-chain: g2 = 10 without singular vertices.
  auto chain = oracle::make(oracle::simplex_chain(9));
  auto handled = handle_addition(chain, Face{0, 1, 2, 3}, Face{9, 10, 11, 12}, {{0, 9}, {1, 10}, {2, 11}, {3, 12}});
  r = reduce(handled.complex);
  EXPECT_FALSE(r.accepted());
  EXPECT_NE(r.reason.find("> 9"), std::string::npos);
}

TEST(Replay, EmptyMoveList) {
  ConstructionTrace t;
  t.seeds = {boundary_simplex()};
  t.claimed_result_fvector = f_vector(boundary_simplex());
  EXPECT_EQ(replay(t), boundary_simplex());
  t.claimed_result_fvector = f_vector(oracle::make(oracle::cross_polytope()));
  EXPECT_THROW(replay(t), ReplayError);
}

TEST(Replay, TamperedDeltaNamesTheMove) {
  auto r = reduce(oracle::make(oracle::cross_polytope()));
  ASSERT_TRUE(r.accepted());
  ASSERT_GE(r.trace.forward_moves.size(), 2u);
  auto bad = r.trace;
  bad.forward_moves[1].g2_delta += 1;
  try {
    replay(bad);
    FAIL();
  } catch (const ReplayError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  bad = r.trace;
  bad.seeds.push_back(oracle::make(oracle::cross_polytope()));
  EXPECT_THROW(replay(bad), ReplayError);
}

TEST(TraceFormat, ParseErrors) {
  EXPECT_THROW(parse_trace(""), ParseError);
  EXPECT_THROW(parse_trace("trace v2 seeds=1 moves=0 f=5,10,10,5\n"), ParseError);
  const std::string good = "trace v1 seeds=1 moves=0 f=5,10,10,5\nseed\n0 1 2 3\n0 1 2 4\n0 1 3 4\n0 2 3 4\n1 2 3 4\nend\n";
  EXPECT_EQ(format_trace(parse_trace(good)), good);
  try {
    parse_trace("trace v1 seeds=1 moves=0 f=5,10,10,5\nseed\n0 1 2 3\n0 1 x 4\nend\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  try {
    parse_trace(good + "move kind=Bistellar1 face=1,2,3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 9u);
  }
}

TEST(Audit, RejectsEverythingInReach) {
  // A sphere is not even a candidate.
  auto sphere_findings = audit_class_G(oracle::make(oracle::cross_polytope()));
  ASSERT_FALSE(sphere_findings.empty());
  EXPECT_TRUE(std::any_of(sphere_findings.begin(), sphere_findings.end(),
                          [](const AuditFinding& f) { return f.check == "singular-count" && f.membership; }));
  // Two singular vertices, g2 = 3.
  auto folded = audit_class_G(folded_nine());
  EXPECT_TRUE(std::any_of(folded.begin(), folded.end(), [](const AuditFinding& f) { return f.check == "g2"; }));
  // Non-normal input.
  std::vector<Face> facets = boundary_simplex().facets();
  facets.pop_back();
  auto broken = audit_class_G(SimplicialComplex(facets));
  ASSERT_EQ(broken.size(), 1u);
  EXPECT_EQ(broken[0].check, "not-normal");
}
