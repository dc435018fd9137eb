#pragma once

// Brute-force King stability over small prime fields.
//
// A representation M of Q over F_p is theta-semistable if theta(dim U) <= 0
// for every subrepresentation U, and theta-stable if the inequality is strict
// for every proper nonzero U. Both are decided by enumerating all tuples of
// subspaces (U_i <= M_i) in reduced row echelon form and keeping those closed
// under the arrow maps.
//
// Semistability over F_p agrees with geometric semistability. Stability over
// F_p only certifies geometric stability when d is theta-coprime; verdicts
// record which case applies.

#include "quiverkit/framing.hpp"
#include "quiverkit/representation.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quiverkit {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Subspace of F_p^n given by a basis in reduced row echelon form.
struct Subspace {
    Matrix<std::int64_t> basis;  // dim x n
    std::vector<Eigen::Index> pivots;

    Eigen::Index dimension() const { return basis.rows(); }
    Eigen::Index ambient() const { return basis.cols(); }
    bool contains(const Vector<std::int64_t>& v, const PrimeField& field) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.basis.rows() == b.basis.rows() && a.basis.cols() == b.basis.cols() && a.basis == b.basis;
    }
};

/// Span of the rows of `generators`, in canonical form.
Subspace span_of_rows(const Matrix<std::int64_t>& generators, const PrimeField& field);

/// All subspaces of F_p^n ordered by dimension, then pivot set
/// (lexicographic), then free entries.
std::vector<Subspace> enumerate_subspaces(Eigen::Index n, const PrimeField& field);

/// Gaussian binomial [n choose k]_q.
Integer gaussian_binomial(std::int64_t n, std::int64_t k, std::int64_t q);
/// sum_k [n choose k]_q.
Integer subspace_count(std::int64_t n, std::int64_t q);

struct Subrepresentation {
    std::vector<Subspace> subspaces;  // one per vertex
    DimensionVector dims;
};

/// Visits every subrepresentation of `rep`, including 0 and rep itself, in
/// lexicographic order of the per-vertex subspace indices (vertex 0 most
/// significant). Stops early when `visit` returns false. Throws
/// BudgetExceeded when prod_i #subspaces(F_p^{d_i}) exceeds `budget`.
void for_each_subrepresentation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                const std::function<bool(const Subrepresentation&)>& visit,
                                std::uint64_t budget = kDefaultBudget);

std::vector<Subrepresentation> enumerate_subrepresentations(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                            std::uint64_t budget = kDefaultBudget);

/// Smallest subrepresentation containing the given vectors (one generator
/// matrix per vertex, rows are vectors; empty matrices allowed).
Subrepresentation generated_subrepresentation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                              const std::vector<Matrix<std::int64_t>>& generators);

/// Subrepresentations generated by a single vector at a single vertex.
std::vector<Subrepresentation> cyclic_subrepresentations(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                         std::uint64_t budget = kDefaultBudget);

/// Every subrepresentation, obtained as iterated sums of cyclic ones. An
/// enumeration route independent of the subspace-tuple search.
std::vector<Subrepresentation> subrepresentations_by_generation(const Quiver& q, const FiniteFieldRepresentation& rep,
                                                                std::uint64_t budget = kDefaultBudget);

struct StabilityVerdict {
    bool semistable = true;
    bool stable = true;  // over F_p
    /// True when `stable` also decides geometric stability: d is
    /// theta-coprime, or a destabilizing F_p-subrepresentation was found.
    bool stable_is_geometric = true;
    std::optional<Subrepresentation> destabilizing;
};

StabilityVerdict king_stability(const Quiver& q, const FiniteFieldRepresentation& rep, const StabilityParameter& theta,
                                std::uint64_t budget = kDefaultBudget);

/// Same verdict computed from an explicit list of subrepresentations.
StabilityVerdict stability_from_subrepresentations(const std::vector<Subrepresentation>& subreps,
                                                   const DimensionVector& dims, const StabilityParameter& theta,
                                                   bool coprime);

struct OracleOptions {
    std::int64_t prime = 2;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t sample_size = 4096;
};

struct EquivalenceFailure {
    std::string point;  // human-readable (v, M, phi)
    bool expected = false;
    bool semistable = false;
    bool stable = false;
};

/// Result of checking, at every point (v, M, phi) of Rep(Qbar, dbar)(F_p):
///   (v, M, phi) thetabar-stable <=> thetabar-semistable <=> (M theta-stable, v != 0, phi != 0).
struct EquivalenceReport {
    std::uint64_t instances_checked = 0;
    Integer total_points;
    bool exhaustive = true;
    bool below_minimal_scale = false;
    std::int64_t prime = 2;
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> warnings;
    std::vector<EquivalenceFailure> failures;

    bool passed() const { return failures.empty(); }
};

/// Throws AssumptionViolated unless d is theta-coprime. Falls back to seeded
/// uniform sampling when p^(#entries) exceeds the budget.
EquivalenceReport verify_double_framing_equivalence(const Quiver& q, const DimensionVector& d,
                                                    const StabilityParameter& theta, VertexIndex i, VertexIndex j,
                                                    std::int64_t scale, const OracleOptions& options = {});

/// f_p(g . M) == g_{t(p)} g_{s(p)}^{-1} f_p(M).
bool verify_semiinvariant_weight(const Quiver& q, const FiniteFieldRepresentation& rep, const Path& p,
                                 const GroupElement<PrimeField>& g);

struct WeightLawReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    bool passed() const { return failures == 0; }
};

/// Random trials of the weight law on the framed datum, using paths 0 -> ∞
/// (both endpoints have dimension 1).
WeightLawReport verify_weight_law_on_framing(const FramingResult& f, std::int64_t prime, std::uint64_t trials,
                                             std::uint64_t seed);

}  // namespace quiverkit
