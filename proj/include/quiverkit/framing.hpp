#pragma once

// Double framing of a quiver datum (Q, d, theta) at a vertex pair (i, j), and
// its reduction to a datum with thin marked vertices.
//
// The framed quiver adjoins a source vertex "0" with an arrow 0 -> i and a
// sink vertex "∞" with an arrow j -> ∞. Vertices are ordered (0, Q_0, ∞) and
// arrows (Q_1, 0 -> i, j -> ∞). The framed dimension vector is (1, d, 1) and
// the framed stability parameter is (1, N theta, -1).

#include "quiverkit/quiver.hpp"
#include "quiverkit/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quiverkit {

inline constexpr std::int64_t kDefaultFramingScale = 2;

struct FramingResult {
    Quiver framed_quiver;
    DimensionVector framed_dimension;
    StabilityParameter framed_stability;
    std::int64_t framing_scale = kDefaultFramingScale;
    VertexIndex framed_at_source = 0;  // i, index into the base quiver
    VertexIndex framed_at_target = 0;  // j, index into the base quiver

    VertexIndex source_vertex() const { return 0; }
    VertexIndex sink_vertex() const { return framed_quiver.vertex_count() - 1; }
    /// Index in the framed quiver of base vertex k.
    static VertexIndex lift(VertexIndex k) { return k + 1; }
    ArrowIndex source_arrow() const { return framed_quiver.arrow_count() - 2; }
    ArrowIndex sink_arrow() const { return framed_quiver.arrow_count() - 1; }
};

FramingResult double_frame(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta,
                           VertexIndex i, VertexIndex j, std::int64_t scale = kDefaultFramingScale);

/// Least N >= 1 such that sign(a + N theta(e) - b) = sign(theta(e)) for all
/// 0 <= e <= d with theta(e) != 0 and a, b in {0, 1}. Always 2; the defining
/// property is checked exhaustively before returning.
std::int64_t minimal_framing_scale(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta);

enum class BSetKind { Plus, Minus, Zero };
std::string to_string(BSetKind k);

struct BSetDiscrepancy {
    DimensionVector framed_subdimension;  // (a, e, b)
    BSetKind actual;                      // sign of the framed stability on it
    BSetKind predicted;                   // membership predicted from the base B-sets
};

struct FramedBSetCheck {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<BSetDiscrepancy> discrepancies;  // lexicographic in (a, e, b)
};

/// Enumerates the B-sets of the framed datum directly and compares them with
/// the sets assembled from the base B-sets:
///   B+ = {(1,e,0) : e in B0} u {(a,e,b) : e in B+}
///   B- = {(0,e,1) : e in B0} u {(a,e,b) : e in B-}
///   B0 = {(0,e,0), (1,e,1) : e in B0}
FramedBSetCheck verify_lemma_new_b(const FramingResult& f, const BSets& base_bsets);

/// Ample stability of the framed datum: d_i > 1 and d_j > 1.
bool framed_ample_stability(const DimensionVector& d, VertexIndex i, VertexIndex j);

enum class ReductionCase { BothBig, SourceThin, TargetThin, BothThin };
std::string to_string(ReductionCase c);

struct ReductionResult {
    Quiver reduced_quiver;  // full subquiver of the framed quiver
    DimensionVector reduced_dimension;
    StabilityParameter reduced_stability;
    VertexIndex marked_source = 0;  // i', index into reduced_quiver
    VertexIndex marked_target = 0;  // j', index into reduced_quiver
    Path source_connector;          // q_0 : 0 -> i' in the framed quiver (length <= 1)
    Path sink_connector;            // q_inf : j' -> ∞ in the framed quiver (length <= 1)
    ReductionCase case_tag = ReductionCase::BothThin;
    std::vector<VertexIndex> vertex_origin;  // reduced vertex -> framed vertex
    std::vector<ArrowIndex> arrow_origin;    // reduced arrow -> framed arrow
    Integer base_path_count;                 // p_Q(i, j)
    std::vector<std::string> warnings;
};

/// Dispatches on (d_i > 1, d_j > 1). The base quiver and theta are recovered
/// from the framing. Throws AssumptionViolated when (Q, d, theta) is cyclic,
/// divisible or not theta-coprime.
ReductionResult reduce(const FramingResult& f, const DimensionVector& d);

struct ReductionCheck {
    bool passed = true;
    bool pairing_zero = true;
    bool thin_marks = true;
    bool path_counts_match = true;
    Integer reduced_path_count;
};

ReductionCheck verify_reduction_pairing(const ReductionResult& r);

struct PathBijectionCheck {
    bool bijective = true;
    std::size_t domain_size = 0;
    std::size_t codomain_size = 0;
};

/// Checks that p -> q_inf p q_0 maps the paths i' -> j' of the reduced quiver
/// bijectively onto the paths 0 -> ∞ of the framed quiver, by enumeration.
PathBijectionCheck verify_path_bijection(const ReductionResult& r, const FramingResult& f,
                                         std::size_t limit = 100'000);

}  // namespace quiverkit
