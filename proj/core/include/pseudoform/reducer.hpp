#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pseudoform/complex.hpp"
#include "pseudoform/moves.hpp"

namespace pseudoform {

/// Seeds (each a boundary of a 4-simplex, labels pairwise disjoint) and the
/// moves that build the target from their disjoint union.
struct ConstructionTrace {
  std::vector<SimplicialComplex> seeds;
  std::vector<MoveRecord> forward_moves;
  FVector claimed_result_fvector;

  friend bool operator==(const ConstructionTrace&, const ConstructionTrace&) = default;
};

// Trace text format:
//   trace v1 seeds=<n> moves=<m> f=<f0>,<f1>,<f2>,<f3>
//   seed
//   <facet lines>
//   end
//   ... (n seed blocks)
//   move kind=... (m lines, see format_move)
std::string format_trace(const ConstructionTrace& trace);
/// Throws ParseError with the 1-based line number.
ConstructionTrace parse_trace(std::string_view text);
ConstructionTrace read_trace_file(const std::filesystem::path& path);
void write_trace_file(const std::filesystem::path& path, const ConstructionTrace& trace);

/// Applies the moves to the disjoint union of the seeds, re-checking every
/// precondition, and compares the f-vector with the claimed one. Failures
/// throw ReplayError with the index of the offending move (seed and final
/// f-vector problems use index = number of moves). With `check_each` every
/// intermediate component must also be a normal pseudomanifold.
SimplicialComplex replay(const ConstructionTrace& trace, bool check_each = false);

enum class InputClass { StackedSphere, SphereG2le9, TwoSingularG2_3or4, Rejected };
std::string_view to_string(InputClass c);

/// Why a reduction step was allowed, with the faces that witness it.
struct StepNote {
  std::string rule;
  std::vector<Face> witnesses;
};

struct ReduceOptions {
  /// Validate every component after every step.
  bool check_intermediates = true;
  std::size_t max_steps = 100000;
};

struct ReduceReport {
  InputClass input_class = InputClass::Rejected;
  /// Concrete violated condition when rejected.
  std::string reason;
  ConstructionTrace trace;
  std::vector<StepNote> log;

  bool accepted() const { return input_class != InputClass::Rejected; }
};

/// Reduces k to boundaries of 4-simplices. Accepts normal complexes that are
/// either free of singular vertices with g2 <= 9, or have g2 <= 4. Each step
/// picks the first available rule in a fixed order with the smallest witness:
///   split at a missing tetrahedron whose four triangle cuts separate,
///   (sphere parts) facet unsubdivision if g2 = 0, bistellar 2-move, edge
///   contraction, two facets insertion,
///   (singular parts) edge unfolding, contraction of an edge joining a
///   singular vertex to a regular one, bistellar 2-move.
/// The trace holds the inverse steps in forward order.
ReduceReport reduce(const SimplicialComplex& k, const ReduceOptions& options = {});

struct AuditFinding {
  /// Short identifier of the check, e.g. "regular-edge".
  std::string check;
  std::string detail;
  std::vector<Face> witnesses;
  /// True when the finding shows that k is not a candidate at all (not
  /// normal, g2 != 4, at most two singular vertices, ...), false for a
  /// violated structural property of the class.
  bool membership = false;
};

/// Every reason k fails to be a normal 3-pseudomanifold with g2 = 4, more
/// than two singular vertices and no missing tetrahedron with all four
/// triangle cuts separating, followed by every violated structural property
/// such a complex would need. No complex passes all checks.
std::vector<AuditFinding> audit_class_G(const SimplicialComplex& k);

}  // namespace pseudoform
