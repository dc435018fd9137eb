#pragma once

// Dimension-vector level stability decisions.

#include "quiverkit/quiver.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quiverkit {

/// Calls `visit(e)` for every 0 <= e <= d in lexicographic order (vertex 0
/// most significant). Stops early when `visit` returns false.
void for_each_subvector(const DimensionVector& d, const std::function<bool(const DimensionVector&)>& visit);

/// Number of e with 0 <= e <= d, i.e. prod_i (d_i + 1).
Integer subvector_count(const DimensionVector& d);

/// Throws PairingNonzero unless theta(d) == 0.
void require_zero_pairing(const StabilityParameter& theta, const DimensionVector& d);

/// mu(e) = theta(e) / |e|; undefined (nullopt) for e = 0.
std::optional<Rational> slope(const StabilityParameter& theta, const DimensionVector& e);

struct BSets {
    std::vector<DimensionVector> plus;
    std::vector<DimensionVector> minus;
    std::vector<DimensionVector> zero;
};

BSets b_sets(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta);

struct CoprimalityResult {
    bool coprime = true;
    std::optional<DimensionVector> witness;  // first e with 0 < e < d and theta(e) == 0
};

CoprimalityResult is_theta_coprime(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta);

struct StrongAmpleStabilityResult {
    bool strongly_amply_stable = true;
    std::vector<DimensionVector> witnesses;  // every violating e, lexicographic
};

/// Checks <e, d - e> <= -2 for every 0 < e < d with theta(e) >= 0.
StrongAmpleStabilityResult is_strongly_amply_stable(const Quiver& q, const DimensionVector& d,
                                                    const StabilityParameter& theta);

enum class Tristate { Yes, Unknown, No };
std::string to_string(Tristate t);

enum class AssumptionCheck { Acyclic, Indivisible, Coprime, StronglyAmplyStable, AmplyStable };
std::string to_string(AssumptionCheck c);

struct FailingWitness {
    AssumptionCheck check;
    DimensionVector subdimension;
};

/// Outcome of checking the standing hypotheses on (Q, d, theta): acyclic Q,
/// indivisible d, semistable = stable (via theta-coprimality), and ample
/// stability (decided only through the strong criterion).
struct AssumptionsReport {
    bool acyclic = false;
    bool indivisible = false;
    bool coprime = false;
    bool strongly_amply_stable = false;
    Tristate amply_stable = Tristate::Unknown;
    std::vector<FailingWitness> failing_witnesses;
    std::vector<ArrowIndex> cycle;
    std::vector<std::string> notes;

    /// Acyclic, indivisible, coprime and amply stable (certified).
    bool all_pass() const {
        return acyclic && indivisible && coprime && amply_stable == Tristate::Yes;
    }
    /// The hypotheses needed for semistable = stable moduli with a universal
    /// representation; ample stability not required.
    bool structural_pass() const { return acyclic && indivisible && coprime; }
    /// Name of the first failing hypothesis, or empty.
    std::string first_failure() const;
};

AssumptionsReport assumptions_report(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta);

}  // namespace quiverkit
