#include "quiverkit/stability.hpp"

namespace quiverkit {

void for_each_subvector(const DimensionVector& d, const std::function<bool(const DimensionVector&)>& visit) {
    const auto n = static_cast<Eigen::Index>(d.size());
    IntVector e = IntVector::Zero(n);
    while (true) {
        if (!visit(DimensionVector(e))) return;
        Eigen::Index k = n - 1;
        while (k >= 0 && e(k) == d.values()(k)) {
            e(k) = 0;
            --k;
        }
        if (k < 0) return;
        ++e(k);
    }
}

Integer subvector_count(const DimensionVector& d) {
    Integer count(1);
    for (std::size_t i = 0; i < d.size(); ++i) count *= Integer(d[i] + 1);
    return count;
}

void require_zero_pairing(const StabilityParameter& theta, const DimensionVector& d) {
    const auto value = theta(d);
    if (value != 0)
        throw Error(ErrorKind::PairingNonzero, "theta" + to_string(theta) + " pairs to " + std::to_string(value) +
                                                   " with d" + to_string(d));
}

std::optional<Rational> slope(const StabilityParameter& theta, const DimensionVector& e) {
    const auto total = e.total();
    if (total == 0) return std::nullopt;
    return make_rational(Integer(theta(e)), Integer(total));
}

BSets b_sets(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, d);
    BSets out;
    for_each_subvector(d, [&](const DimensionVector& e) {
        const auto value = theta(e);
        (value > 0 ? out.plus : value < 0 ? out.minus : out.zero).push_back(e);
        return true;
    });
    return out;
}

CoprimalityResult is_theta_coprime(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, d);
    CoprimalityResult out;
    for_each_subvector(d, [&](const DimensionVector& e) {
        if (e.is_zero() || e == d) return true;
        if (theta(e) == 0) {
            out.coprime = false;
            out.witness = e;
            return false;
        }
        return true;
    });
    return out;
}

StrongAmpleStabilityResult is_strongly_amply_stable(const Quiver& q, const DimensionVector& d,
                                                    const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    require_zero_pairing(theta, d);
    q.require_acyclic();
    StrongAmpleStabilityResult out;
    // mu(e) >= mu(d - e) is equivalent to theta(e) >= 0 once theta(d) = 0.
    for_each_subvector(d, [&](const DimensionVector& e) {
        if (e.is_zero() || e == d) return true;
        if (theta(e) >= 0 && euler_form(q, e, d.minus(e)) > -2) {
            out.strongly_amply_stable = false;
            out.witnesses.push_back(e);
        }
        return true;
    });
    return out;
}

std::string to_string(Tristate t) {
    switch (t) {
    case Tristate::Yes: return "yes";
    case Tristate::Unknown: return "unknown";
    case Tristate::No: return "no";
    }
    return "unknown";
}

std::string to_string(AssumptionCheck c) {
    switch (c) {
    case AssumptionCheck::Acyclic: return "acyclic";
    case AssumptionCheck::Indivisible: return "indivisible";
    case AssumptionCheck::Coprime: return "coprime";
    case AssumptionCheck::StronglyAmplyStable: return "strongly_amply_stable";
    case AssumptionCheck::AmplyStable: return "amply_stable";
    }
    return "unknown";
}

std::string AssumptionsReport::first_failure() const {
    if (!acyclic) return to_string(AssumptionCheck::Acyclic);
    if (!indivisible) return to_string(AssumptionCheck::Indivisible);
    if (!coprime) return to_string(AssumptionCheck::Coprime);
    if (amply_stable != Tristate::Yes) return to_string(AssumptionCheck::AmplyStable);
    return {};
}

AssumptionsReport assumptions_report(const Quiver& q, const DimensionVector& d, const StabilityParameter& theta) {
    require_same_vertex_set(q, d);
    require_same_vertex_set(q, theta);
    AssumptionsReport report;

    auto cert = is_acyclic(q);
    report.acyclic = cert.acyclic;
    if (!cert.acyclic) {
        report.cycle = cert.cycle;
        report.notes.push_back("oriented cycle present; strong ample stability not evaluated");
    }

    const auto g = gcd_of_entries(d);
    report.indivisible = g == 1;
    if (!report.indivisible) {
        if (g > 1) {
            // d / g is a proper subdimension vector pairing to zero with theta.
            report.failing_witnesses.push_back({AssumptionCheck::Indivisible, DimensionVector(IntVector(d.values() / g))});
        } else {
            report.notes.push_back("zero dimension vector");
        }
    }

    if (theta(d) != 0) {
        report.notes.push_back("theta(d) = " + std::to_string(theta(d)) + " != 0; stability checks not evaluated");
        report.amply_stable = Tristate::Unknown;
        return report;
    }

    auto coprime = is_theta_coprime(q, d, theta);
    report.coprime = coprime.coprime;
    if (coprime.witness) report.failing_witnesses.push_back({AssumptionCheck::Coprime, *coprime.witness});

    if (report.acyclic) {
        auto strong = is_strongly_amply_stable(q, d, theta);
        report.strongly_amply_stable = strong.strongly_amply_stable;
        for (auto& w : strong.witnesses) report.failing_witnesses.push_back({AssumptionCheck::StronglyAmplyStable, w});
    }
    report.amply_stable = report.strongly_amply_stable ? Tristate::Yes : Tristate::Unknown;
    if (report.acyclic && !report.strongly_amply_stable)
        report.notes.push_back("strong criterion fails; ample stability undecided");
    return report;
}

}  // namespace quiverkit
