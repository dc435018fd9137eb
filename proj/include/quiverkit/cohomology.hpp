#pragma once

// Dimension-level statements about quiver moduli X = M^{theta-st}(Q, d) and
// the path algebra kQ:
//   - dim Hom_X(U_i, U_j) = dim e_j kQ e_i = p(i, j),
//   - the presentation 0 -> k -> (+)_i e_i kQ e_i -psi-> (+)_a e_{t(a)} kQ e_{s(a)} -> H^0(X, T_X) -> 0
//     with phi(z) = z sum_i e_i and psi(z) = ((z_{t(a)} - z_{s(a)}) a)_a,
//   - Happel's sequence for HH^1(kQ), which has the same shape,
//   - Hom and Ext^1 between concrete representations over Q.
//
// The vanishing of higher cohomology of U_i^v (x) U_j on X is a hypothesis of
// these statements and is never computed here.

#include "quiverkit/representation.hpp"
#include "quiverkit/stability.hpp"

#include <string>
#include <vector>

namespace quiverkit {

struct EndomorphismTable {
    PathCountMatrix dimensions;  // (i, j) -> dim Hom(U_i, U_j)
    Integer total;
    std::vector<std::string> warnings;
};

EndomorphismTable endomorphism_dimensions(const Quiver& q, const DimensionVector& d, const AssumptionsReport& attested);

/// Basis element of (+)_i e_i kQ e_i (kind Vertex) or of
/// (+)_a e_{t(a)} kQ e_{s(a)} (kind Arrow): the summand index and a path.
struct PathBasisLabel {
    enum class Kind { Vertex, Arrow } kind;
    std::size_t summand;
    Path path;
};

struct TangentPresentation {
    IntMatrix phi;  // (sum_i p(i,i)) x 1
    IntMatrix psi;  // (sum_a p(s(a),t(a))) x (sum_i p(i,i))
    std::vector<PathBasisLabel> row_labels;     // basis of the codomain of psi
    std::vector<PathBasisLabel> column_labels;  // basis of the domain of psi
};

/// phi and psi for any acyclic quiver.
TangentPresentation happel_presentation(const Quiver& q);

/// As happel_presentation, restricted to connected quivers and full-support d.
TangentPresentation tangent_presentation(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta);

struct VectorFieldsResult {
    std::int64_t dimension = 0;
    bool reliable = true;  // false when computed under an assumption override
    std::vector<std::string> warnings;
};

/// dim H^0(X, T_X) = dim coker(psi). Requires the standing assumptions with
/// strong ample stability unless `override_assumptions` is set, in which case
/// the value is flagged as unreliable.
VectorFieldsResult vector_fields_dim(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta,
                                     bool override_assumptions = false);

/// dim HH^1(kQ) = dim coker(psi) for acyclic Q. For connected Q this is
/// sum_a p(s(a), t(a)) - #Q_0 + 1.
std::int64_t hochschild1_dim(const Quiver& q);

struct ConsistencyCheck {
    bool passed = false;
    std::int64_t vector_fields = 0;
    std::int64_t hochschild1 = 0;
};

ConsistencyCheck consistency_hh1_vs_vector_fields(const Quiver& q, const DimensionVector& d,
                                                  const StabilityParameter& theta, bool override_assumptions = false);

/// 1 - <d, d>.
std::int64_t moduli_dimension(const Quiver& q, const DimensionVector& d);

struct HomExtResult {
    std::int64_t hom_dim = 0;
    std::int64_t ext_dim = 0;
    /// Each basis element is a tuple of matrices f_i : M_i -> N_i.
    std::vector<std::vector<Matrix<Rational>>> hom_basis;
};

/// Hom and Ext^1 as kernel and cokernel of
///   (+)_i Hom(M_i, N_i) -> (+)_a Hom(M_{s(a)}, N_{t(a)}),  f -> (f_{t(a)} M_a - N_a f_{s(a)})_a.
HomExtResult hom_ext(const Quiver& q, const RationalRepresentation& m, const RationalRepresentation& n);

/// P_i with (P_i)_j spanned by the paths i -> j (in enumerate_paths order) and
/// arrows acting by post-composition.
RationalRepresentation projective_representation(const Quiver& q, VertexIndex i);

/// The simple representation at vertex i.
RationalRepresentation simple_representation(const Quiver& q, VertexIndex i);

}  // namespace quiverkit
