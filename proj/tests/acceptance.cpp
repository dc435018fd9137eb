// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Runtime limits are part of each criterion.

#include "quiverkit/cohomology.hpp"
#include "quiverkit/ff_oracle.hpp"
#include "quiverkit/framing.hpp"
#include "quiverkit/stability.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace quiverkit;
using namespace quiverkit_test;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first failure and keeps counting.
class Checker {
public:
    void expect(bool condition, const std::string& what) {
        ++checks_;
        if (!condition && first_failure_.empty()) first_failure_ = what;
        if (!condition) ++failures_;
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
        return {false, std::to_string(failures_) + " of " + std::to_string(checks_) +
                           " checks failed; first: " + first_failure_};
    }

private:
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
    std::string first_failure_;
};

Quiver three_vertex() { return Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}, {1, 2}, {0, 2}}); }
Quiver kronecker(int arrows = 2) { return Quiver::with_numbered_vertices(2, std::vector<Arrow>(arrows, Arrow{0, 1})); }

RationalRepresentation random_rational_rep(const Quiver& q, const DimensionVector& d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(-2, 2);
    RationalRepresentation rep{RationalField{}, d, {}};
    for (const auto& a : q.arrows()) {
        Matrix<Rational> m(d[a.target], d[a.source]);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Rational(entry(rng));
        rep.arrow_matrices.push_back(std::move(m));
    }
    return rep;
}

Outcome three_vertex_example() {
    Checker c;
    const auto q = three_vertex();
    const DimensionVector d{1, 1, 1};
    const auto theta = canonical_stability(q, d);
    c.expect(theta == StabilityParameter{2, 1, -3}, "canonical stability " + to_string(theta));
    c.expect(hochschild1_dim(q) == 6, "hh1");
    c.expect(hh1_oracle(q) == 6, "hh1 oracle");
    c.expect(path_count_matrix(q)(1, 2) == Integer(2) && dfs_path_count(q, 1, 2) == 2, "p(2,3)");
    const auto good = assumptions_report(q, d, theta);
    c.expect(good.all_pass(), "assumptions for theta_can");
    c.expect(vector_fields_dim(q, d, theta).dimension == 6, "vector fields for theta_can");

    const StabilityParameter other{2, -1, -1};
    const auto bad = assumptions_report(q, d, other);
    c.expect(!bad.strongly_amply_stable, "strong criterion for (2,-1,-1)");
    bool witness = false;
    for (const auto& w : bad.failing_witnesses) witness = witness || w.subdimension == DimensionVector{1, 0, 1};
    c.expect(witness, "witness (1,0,1)");
    bool refused = false;
    try {
        vector_fields_dim(q, d, other);
    } catch (const Error& e) {
        refused = e.kind() == ErrorKind::AssumptionViolated;
    }
    c.expect(refused, "vector fields refused for (2,-1,-1)");
    return c.outcome("theta_can=(2,1,-3), hh1=6, p(2,3)=2, vector fields 6, (2,-1,-1) refused at (1,0,1)");
}

Outcome vector_fields_match_hh1() {
    Checker c;
    std::mt19937_64 rng(2024);
    int found = 0;
    std::uint64_t attempts = 0;
    while (found < 200 && attempts < 2'000'000) {
        ++attempts;
        const auto n = 2 + static_cast<std::size_t>(rng() % 5);
        const auto q = random_connected_acyclic_quiver(rng, n, 2);
        const auto d = random_dimension(rng, n, 1, attempts % 3 == 0 ? 2 : 1);
        const auto theta = random_stability(rng, d, 4);
        if (!theta) continue;
        const auto report = assumptions_report(q, d, *theta);
        if (!report.all_pass()) continue;
        ++found;
        const auto vf = vector_fields_dim(q, d, *theta);
        const auto expected = hh1_oracle(q);
        c.expect(vf.dimension == hochschild1_dim(q) && vf.dimension == expected,
                 "vector fields " + std::to_string(vf.dimension) + " vs hh1 " + std::to_string(expected) + " for d " +
                     to_string(d));
        const std::vector<std::int64_t> t(theta->values().begin(), theta->values().end());
        c.expect(strong_oracle(q, as_vector(d), t), "strong criterion disagrees with the oracle at " + to_string(d));
    }
    c.expect(found == 200, "only " + std::to_string(found) + " instances found");
    return c.outcome(std::to_string(found) + " instances");
}

Outcome framed_b_sets() {
    Checker c;
    std::mt19937_64 rng(77);
    int instances = 0;
    std::uint64_t points = 0;
    while (instances < 50) {
        const auto n = 1 + static_cast<std::size_t>(rng() % 4);
        const auto q = random_acyclic_quiver(rng, n, 2);
        const auto d = random_dimension(rng, n, 0, 3);
        if (subvector_count(d) > Integer(1024)) continue;
        const auto theta = random_stability(rng, d, 4);
        if (!theta) continue;
        ++instances;
        const auto i = static_cast<VertexIndex>(rng() % n);
        const auto j = static_cast<VertexIndex>(rng() % n);
        const auto check = verify_lemma_new_b(double_frame(q, d, *theta, i, j, 2), b_sets(q, d, *theta));
        points += check.checked;
        c.expect(check.passed, "discrepancy for d " + to_string(d) + " theta " + to_string(*theta));
    }
    const auto bad = verify_lemma_new_b(double_frame(kronecker(), {1, 1}, {1, -1}, 0, 1, 1),
                                        b_sets(kronecker(), {1, 1}, {1, -1}));
    c.expect(!bad.passed, "N=1 Kronecker counterexample passed");
    bool documented = false;
    for (const auto& x : bad.discrepancies)
        documented = documented || (x.framed_subdimension == DimensionVector{1, 0, 1, 0} &&
                                    x.actual == BSetKind::Zero && x.predicted == BSetKind::Minus);
    c.expect(documented, "N=1 witness (1,(0,1),0) missing");
    return c.outcome("50 instances, " + std::to_string(points) + " framed subdimension vectors, N=1 fails with " +
                     std::to_string(bad.discrepancies.size()) + " discrepancies");
}

Outcome double_framing_equivalence() {
    Checker c;
    struct Instance {
        std::string name;
        Quiver q;
        DimensionVector d;
        StabilityParameter theta;
        VertexIndex i, j;
    };
    const std::vector<Instance> catalog = {
        {"Kronecker (1,1)", kronecker(), {1, 1}, {1, -1}, 0, 1},
        {"A2", Quiver::with_numbered_vertices(2, {{0, 1}}), {1, 1}, {1, -1}, 0, 1},
        {"A3 thin", Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}}), {1, 1, 1}, {2, -1, -1}, 0, 2},
        {"three-vertex theta_can", three_vertex(), {1, 1, 1}, {2, 1, -3}, 1, 2},
    };
    std::uint64_t points = 0;
    for (const auto& inst : catalog)
        for (std::int64_t p : {2, 3}) {
            OracleOptions options;
            options.prime = p;
            options.budget = 100'000;
            const auto report = verify_double_framing_equivalence(inst.q, inst.d, inst.theta, inst.i, inst.j, 2, options);
            points += report.instances_checked;
            const auto where = inst.name + " over F_" + std::to_string(p);
            c.expect(report.exhaustive, where + " not exhaustive");
            c.expect(report.passed(), where + ": " + std::to_string(report.failures.size()) + " failures" +
                                          (report.failures.empty() ? "" : " at " + report.failures.front().point));
        }
    return c.outcome("4 instances over F_2 and F_3, " + std::to_string(points) + " points, 0 failures");
}

Outcome projective_hom_ext() {
    Checker c;
    std::mt19937_64 rng(55);
    int reps = 0;
    for (int k = 0; k < 20; ++k) {
        const auto n = 1 + static_cast<std::size_t>(k % 5);
        const auto q = random_acyclic_quiver(rng, n, 2);
        std::vector<RationalRepresentation> projectives;
        for (VertexIndex v = 0; v < n; ++v) projectives.push_back(projective_representation(q, v));
        for (VertexIndex i = 0; i < n; ++i)
            for (VertexIndex j = 0; j < n; ++j) {
                const auto r = hom_ext(q, projectives[j], projectives[i]);
                c.expect(r.hom_dim == dfs_path_count(q, i, j) && r.ext_dim == 0,
                         "Hom/Ext(P_" + std::to_string(j) + ", P_" + std::to_string(i) + ")");
            }
        for (int t = 0; t < 5; ++t) {
            const auto dm = random_dimension(rng, n, 0, 2);
            const auto dn = random_dimension(rng, n, 0, 2);
            const auto r = hom_ext(q, random_rational_rep(q, dm, rng), random_rational_rep(q, dn, rng));
            ++reps;
            c.expect(r.hom_dim - r.ext_dim == euler_oracle(q, as_vector(dm), as_vector(dn)),
                     "hom - ext vs euler form at " + to_string(dm) + ", " + to_string(dn));
        }
    }
    return c.outcome("20 quivers, " + std::to_string(reps) + " random representation pairs");
}

Outcome reduction_cases() {
    Checker c;
    struct Instance {
        Quiver q;
        DimensionVector d;
        StabilityParameter theta;
        VertexIndex i, j;
        ReductionCase expected;
    };
    const std::vector<Instance> catalog = {
        {kronecker(3), {2, 3}, {3, -2}, 0, 1, ReductionCase::BothBig},
        {kronecker(), {2, 1}, {1, -2}, 0, 1, ReductionCase::SourceThin},
        {kronecker(), {1, 2}, {2, -1}, 0, 1, ReductionCase::TargetThin},
        {three_vertex(), {1, 1, 1}, {2, 1, -3}, 1, 2, ReductionCase::BothThin},
    };
    for (const auto& inst : catalog) {
        const auto f = double_frame(inst.q, inst.d, inst.theta, inst.i, inst.j, 2);
        const auto r = reduce(f, inst.d);
        const auto where = to_string(inst.d) + " " + to_string(inst.theta);
        c.expect(r.case_tag == inst.expected, "case tag at " + where);
        c.expect(r.reduced_stability(r.reduced_dimension) == 0, "pairing at " + where);
        c.expect(r.reduced_dimension[r.marked_source] == 1 && r.reduced_dimension[r.marked_target] == 1,
                 "thin marks at " + where);
        const auto reduced_paths = dfs_path_count(r.reduced_quiver, r.marked_source, r.marked_target);
        c.expect(reduced_paths == dfs_path_count(inst.q, inst.i, inst.j), "path counts at " + where);
        c.expect(verify_reduction_pairing(r).passed, "reduction check at " + where);
        c.expect(verify_path_bijection(r, f).bijective, "path bijection at " + where);
        if (inst.expected == ReductionCase::SourceThin)
            c.expect(r.reduced_stability == StabilityParameter{3, 7, -17},
                     "case (b) gives " + to_string(r.reduced_stability));
    }
    return c.outcome("all four cases, source_thin theta'=(3,7,-17)");
}

Outcome weight_law() {
    Checker c;
    const PrimeField f5(5);
    struct Instance {
        Quiver q;
        DimensionVector d;
    };
    const std::vector<Instance> catalog = {{three_vertex(), {1, 1, 1}},
                                           {kronecker(), {1, 1}},
                                           {Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}}), {1, 1, 1}}};
    std::mt19937_64 rng(5);
    std::size_t evaluations = 0;
    for (const auto& inst : catalog) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto g = random_group_element(inst.d, f5, rng);
            const auto rep = random_representation(inst.q, inst.d, f5, rng);
            const auto moved = act(inst.q, g, rep);
            for (VertexIndex s = 0; s < inst.q.vertex_count(); ++s)
                for (VertexIndex t = 0; t < inst.q.vertex_count(); ++t)
                    for (const auto& p : enumerate_paths(inst.q, s, t, 1000)) {
                        ++evaluations;
                        c.expect(verify_semiinvariant_weight(inst.q, rep, p, g), "weight law");
                        // direct: f_p(g.N) = g_t g_s^{-1} f_p(N)
                        const auto scale = f5.mul(g.components[t](0, 0), f5.inv(g.components[s](0, 0)));
                        c.expect(path_semiinvariant(inst.q, moved, p) ==
                                     f5.mul(scale, path_semiinvariant(inst.q, rep, p)),
                                 "direct weight law");
                    }
        }
    }
    return c.outcome("100 group elements over F_5 on 3 thin fixtures, " + std::to_string(evaluations) +
                     " path evaluations");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string name;
        double limit_seconds;  // 0 when the criterion has no runtime limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "three-vertex example end to end", 1.0, three_vertex_example},
        {2, "vector fields agree with HH^1 on 200 random instances", 10.0, vector_fields_match_hh1},
        {3, "framed B-set partition at N = 2 and the N = 1 counterexample", 10.0, framed_b_sets},
        {4, "double framing equivalence over F_2 and F_3", 60.0, double_framing_equivalence},
        {5, "Hom/Ext of projectives and the Euler form", 10.0, projective_hom_ext},
        {6, "reduction to thin marked vertices, all four cases", 1.0, reduction_cases},
        {7, "semi-invariant weight law over F_5", 0.0, weight_law},
    };
    bool all = true;
    for (const auto& criterion : criteria) {
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.limit_seconds > 0 && seconds >= criterion.limit_seconds) {
            outcome.ok = false;
            outcome.detail += "; exceeded the " + std::to_string(criterion.limit_seconds) + " s limit";
        }
        all = all && outcome.ok;
        std::ostringstream time;
        time.precision(3);
        time << std::fixed << seconds;
        std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << criterion.number << ": " << criterion.name
                  << " [" << time.str() << " s] " << outcome.detail << '\n';
    }
    return all ? 0 : 1;
}
