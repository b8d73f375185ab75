#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pseudoform/complex.hpp"

namespace pseudoform {

enum class MoveKind {
  Bistellar1,
  Bistellar2,
  EdgeContract,
  EdgeExpand,
  TwoFacetsInsert,
  TwoFacetsContract,
  ConnectedSum,
  HandleAdd,
  EdgeFold,
  EdgeUnfold,
  FacetSubdivide,
  FacetUnsubdivide,
};

std::string_view to_string(MoveKind kind);
std::optional<MoveKind> parse_move_kind(std::string_view name);

/// Pairs (x, psi(x)) with x in the first facet and psi(x) in the second.
using GluingMap = std::vector<std::pair<Vertex, Vertex>>;

/// One applied operation with everything needed to replay it.
///
/// Parameter use per kind:
///   Bistellar1         face = triangle abc
///   Bistellar2         face = edge uv
///   EdgeContract       face = edge uv, fresh = {w}
///   EdgeExpand         face = {w}, cycle, anchor = link triangle coned by
///                      fresh[0], fresh = {u, v}
///   TwoFacetsInsert    face = {w}, other = abc, anchor = link triangle coned
///                      by fresh[0], fresh = {p, q}
///   TwoFacetsContract  face = {u, v}, fresh = {w}
///   ConnectedSum,
///   HandleAdd,
///   EdgeFold           face = sigma1, other = sigma2, map = psi
///   EdgeUnfold         face = missing tetrahedron, other = {u, v} (the two
///                      Moebius vertices), fresh = {a', b'}
///   FacetSubdivide     face = facet, fresh = {w}
///   FacetUnsubdivide   face = {w}
struct MoveRecord {
  MoveKind kind = MoveKind::Bistellar1;
  Face face;
  Face other;
  Face anchor;
  std::vector<Vertex> cycle;
  GluingMap map;
  std::vector<Vertex> fresh;
  std::int64_t g2_delta = 0;
  std::optional<std::size_t> component;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

/// Single line "move kind=... face=... g2_delta=..."; empty parameters are
/// omitted and keys always appear in the same order.
std::string format_move(const MoveRecord& record);
/// Inverse of format_move. Throws ParseError(line) on malformed text.
MoveRecord parse_move(std::string_view text, std::size_t line = 0);

struct MoveResult {
  SimplicialComplex complex;
  MoveRecord record;
  /// False only for an edge contraction whose endpoints are both singular.
  bool homeomorphic = true;
};

/// The g2 change fixed for each kind (`degree` is the edge degree or cycle
/// length for contraction and expansion).
std::int64_t expected_g2_delta(MoveKind kind, std::size_t degree = 3);

// Every operation below leaves its input untouched, re-checks all of its
// preconditions and throws Error(Precondition) (or MissingFace) naming the
// offending faces when one fails. Optional fresh labels default to
// max label + 1, + 2.

MoveResult bistellar_one(const SimplicialComplex& k, const Face& abc);
MoveResult bistellar_two(const SimplicialComplex& k, const Face& uv);

MoveResult contract_edge(const SimplicialComplex& k, const Face& uv, std::optional<Vertex> fresh = {});
/// Splits w along `cycle`, a separating cycle of lk(w) whose pieces are discs
/// or at most one Moebius strip. The piece holding `anchor` (default: the one
/// holding the smallest triangle of lk(w)) is coned by the first new vertex.
MoveResult expand_edge(const SimplicialComplex& k, Vertex w, std::span<const Vertex> cycle,
                       std::optional<Face> anchor = {}, std::optional<std::pair<Vertex, Vertex>> fresh = {});

MoveResult insert_two_facets(const SimplicialComplex& k, Vertex w, const Face& abc, std::optional<Face> anchor = {},
                             std::optional<std::pair<Vertex, Vertex>> fresh = {});
MoveResult contract_two_facets(const SimplicialComplex& k, Vertex u, Vertex v, std::optional<Vertex> fresh = {});

/// How the handle admissibility distance is measured.
enum class PathMetric {
  /// Plain distance in the 1-skeleton.
  Skeleton,
  /// Distance in the 1-skeleton with the other vertices of both facets removed.
  AvoidGluedFacets,
};

/// Reason the gluing is inadmissible, or nullopt.
std::optional<std::string> connected_sum_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                                const GluingMap& psi);
std::optional<std::string> handle_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                         const GluingMap& psi, PathMetric metric = PathMetric::Skeleton);
std::optional<std::string> fold_defect(const SimplicialComplex& k, const Face& s1, const Face& s2,
                                       const GluingMap& psi);

/// Both facets live in `k` (which holds the summands as components).
MoveResult connected_sum(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi);
/// Convenience form taking the two summands separately.
MoveResult connected_sum(const SimplicialComplex& k1, const Face& s1, const SimplicialComplex& k2, const Face& s2,
                         const GluingMap& psi);
MoveResult handle_addition(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi,
                           PathMetric metric = PathMetric::Skeleton);
MoveResult edge_fold(const SimplicialComplex& k, const Face& s1, const Face& s2, const GluingMap& psi);

struct UnfoldSite {
  Face tetrahedron;
  Face moebius;     // {u, v}
  Face separating;  // {a, b}
};

/// Missing tetrahedron whose link-triangle cuts are Moebius at exactly two
/// vertices and separating at the other two; the smallest such, or nullopt.
std::optional<UnfoldSite> detect_unfold(const SimplicialComplex& k);
/// All missing tetrahedra with their count of Moebius neighbourhoods.
std::vector<std::pair<Face, int>> classify_missing_tetrahedra(const SimplicialComplex& k);
/// Undoes an edge folding at the given missing tetrahedron, duplicating the
/// two separating vertices.
MoveResult edge_unfold(const SimplicialComplex& k, const Face& tetrahedron,
                       std::optional<std::pair<Vertex, Vertex>> fresh = {});

/// Splits a connected sum at a missing tetrahedron. Other components of `k`
/// are left alone. The side holding the smaller facet keeps its labels; the other side gets `fresh` (default
/// max + 1 .. max + 4) in place of the tetrahedron's vertices. The returned
/// record is the ConnectedSum that rebuilds `k`.
MoveResult split_missing_tetrahedron(const SimplicialComplex& k, const Face& tetrahedron,
                                     std::optional<std::array<Vertex, 4>> fresh = {});

MoveResult facet_subdivide(const SimplicialComplex& k, const Face& facet, std::optional<Vertex> fresh = {});
MoveResult facet_unsubdivide(const SimplicialComplex& k, Vertex w);

/// Applies a record, using its fresh labels, and checks that the tabulated
/// g2 change matches the record. Throws Error(Precondition) otherwise.
MoveResult apply_move(const SimplicialComplex& k, const MoveRecord& record);

// Candidate sites, each list in ascending order.

/// Triangles abc with lk(abc) = {u, v} and uv not an edge.
std::vector<Face> bistellar_one_sites(const SimplicialComplex& k);
/// Degree-3 edges whose link triangle is not a face.
std::vector<Face> bistellar_two_sites(const SimplicialComplex& k);
/// Edges satisfying the link condition.
std::vector<Face> contractible_edges(const SimplicialComplex& k);
/// (w, abc) with abc a missing triangle of lk(w) separating it and abc not in k.
std::vector<std::pair<Vertex, Face>> two_facets_insert_sites(const SimplicialComplex& k);
/// Non-adjacent (u, v) whose stars meet in a single triangle.
std::vector<std::pair<Vertex, Vertex>> two_facets_contract_sites(const SimplicialComplex& k);
/// Degree-4 vertices whose link bounds a tetrahedron absent from k.
std::vector<Vertex> unsubdivide_sites(const SimplicialComplex& k);
/// Missing tetrahedra at which k splits as a connected sum.
std::vector<Face> split_sites(const SimplicialComplex& k);

}  // namespace pseudoform
