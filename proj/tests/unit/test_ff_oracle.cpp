#include "quiverkit/ff_oracle.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace quiverkit;
using namespace quiverkit_test;

namespace {

Quiver kronecker() { return Quiver::with_numbered_vertices(2, {{0, 1}, {0, 1}}); }
Quiver three_vertex() { return Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}, {1, 2}, {0, 2}}); }

Matrix<std::int64_t> scalar(std::int64_t x) {
    Matrix<std::int64_t> m(1, 1);
    m(0, 0) = x;
    return m;
}

std::set<std::vector<std::int64_t>> as_keys(const std::vector<Subrepresentation>& subs) {
    std::set<std::vector<std::int64_t>> keys;
    for (const auto& s : subs) {
        std::vector<std::int64_t> key;
        for (const auto& u : s.subspaces) {
            key.push_back(u.dimension());
            for (Eigen::Index r = 0; r < u.basis.rows(); ++r)
                for (Eigen::Index c = 0; c < u.basis.cols(); ++c) key.push_back(u.basis(r, c));
        }
        keys.insert(key);
    }
    return keys;
}

// Number of subspaces of F_q^n by counting ordered bases (independent of the
// product formula): #k-subspaces = prod (q^n - q^t) / prod (q^k - q^t).
std::int64_t subspaces_by_bases(std::int64_t n, std::int64_t k, std::int64_t q) {
    auto pw = [](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    std::int64_t num = 1, den = 1;
    for (std::int64_t t = 0; t < k; ++t) {
        num *= pw(q, n) - pw(q, t);
        den *= pw(q, k) - pw(q, t);
    }
    return num / den;
}

}  // namespace

TEST_SUITE("ff_oracle") {
TEST_CASE("subspace enumeration matches the subspace counts") {
    for (std::int64_t p : {2, 3, 5}) {
        const PrimeField field(p);
        for (Eigen::Index n = 0; n <= (p == 5 ? 3 : 4); ++n) {
            const auto subs = enumerate_subspaces(n, field);
            std::int64_t expected = 0;
            for (std::int64_t k = 0; k <= n; ++k) {
                const auto count = subspaces_by_bases(n, k, p);
                CHECK(gaussian_binomial(n, k, p) == Integer(count));
                CHECK(std::count_if(subs.begin(), subs.end(), [&](const Subspace& s) { return s.dimension() == k; }) ==
                      count);
                expected += count;
            }
            CHECK(static_cast<std::int64_t>(subs.size()) == expected);
            CHECK(subspace_count(n, p) == Integer(expected));
            // canonical forms are distinct and fixed by re-echelonisation
            for (std::size_t a = 0; a < subs.size(); ++a) {
                CHECK(span_of_rows(subs[a].basis, field) == subs[a]);
                if (a > 0) CHECK_FALSE(subs[a] == subs[a - 1]);
                CHECK(subs[a].ambient() == n);
            }
            // ordered by dimension
            for (std::size_t a = 1; a < subs.size(); ++a) CHECK(subs[a - 1].dimension() <= subs[a].dimension());
        }
    }
    CHECK(gaussian_binomial(2, 1, 2) == Integer(3));
}

TEST_CASE("subspace membership") {
    const PrimeField f3(3);
    Matrix<std::int64_t> gens(1, 2);
    gens << 1, 2;
    const auto line = span_of_rows(gens, f3);
    Vector<std::int64_t> v(2);
    v << 2, 1;
    CHECK(line.contains(v, f3));
    v << 1, 1;
    CHECK_FALSE(line.contains(v, f3));
}

TEST_CASE("subrepresentations of small Kronecker representations") {
    const PrimeField f2(2);
    FiniteFieldRepresentation both{f2, {1, 1}, {scalar(1), scalar(1)}};
    const auto subs = enumerate_subrepresentations(kronecker(), both);
    REQUIRE(subs.size() == 3);
    CHECK(subs[0].dims == DimensionVector{0, 0});
    CHECK(subs[1].dims == DimensionVector{0, 1});
    CHECK(subs[2].dims == DimensionVector{1, 1});

    const auto zero = zero_representation(kronecker(), {1, 1}, f2);
    CHECK(enumerate_subrepresentations(kronecker(), zero).size() == 4);

    const auto point = zero_representation(Quiver::with_numbered_vertices(1, {}), {2}, f2);
    CHECK(enumerate_subrepresentations(Quiver::with_numbered_vertices(1, {}), point).size() == 5);
}

TEST_CASE("zero representation: every subspace tuple is a subrepresentation") {
    const PrimeField f2(2);
    const auto q = three_vertex();
    const DimensionVector d{1, 2, 2};
    const auto subs = enumerate_subrepresentations(q, zero_representation(q, d, f2));
    Integer expected(1);
    for (std::size_t v = 0; v < d.size(); ++v) expected *= subspace_count(d[v], 2);
    CHECK(Integer(static_cast<long long>(subs.size())) == expected);
}

TEST_CASE("budget is enforced") {
    const PrimeField f2(2);
    const auto q = Quiver::with_numbered_vertices(1, {});
    const auto rep = zero_representation(q, {6}, f2);
    try {
        enumerate_subrepresentations(q, rep, 100);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
}

TEST_CASE("King stability on Kronecker examples") {
    const PrimeField f2(2);
    const StabilityParameter theta{1, -1};
    const auto stable = king_stability(kronecker(), {f2, {1, 1}, {scalar(1), scalar(0)}}, theta);
    CHECK(stable.stable);
    CHECK(stable.semistable);
    CHECK(stable.stable_is_geometric);
    CHECK_FALSE(stable.destabilizing.has_value());

    const auto unstable = king_stability(kronecker(), {f2, {1, 1}, {scalar(0), scalar(0)}}, theta);
    CHECK_FALSE(unstable.semistable);
    CHECK_FALSE(unstable.stable);
    REQUIRE(unstable.destabilizing.has_value());
    CHECK(unstable.destabilizing->dims == DimensionVector{1, 0});

    const auto trivial = king_stability(kronecker(), {f2, {1, 1}, {scalar(1), scalar(1)}}, {0, 0});
    CHECK(trivial.semistable);
    CHECK_FALSE(trivial.stable);
    REQUIRE(trivial.destabilizing.has_value());
    CHECK(trivial.destabilizing->dims == DimensionVector{0, 1});

    try {
        king_stability(kronecker(), {f2, {1, 1}, {scalar(1), scalar(1)}}, {1, 1});
        FAIL("expected PairingNonzero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PairingNonzero);
    }
}

TEST_CASE("verdicts are monotone and match the two enumeration routes") {
    std::mt19937_64 rng(51);
    const PrimeField f2(2);
    int checked = 0;
    while (checked < 150) {
        const auto q = random_acyclic_quiver(rng, 1 + checked % 4, 2);
        const auto d = random_dimension(rng, q.vertex_count(), 0, 2);
        const auto theta = random_stability(rng, d, 3);
        if (!theta) continue;
        ++checked;
        const auto rep = random_representation(q, d, f2, rng);
        const auto verdict = king_stability(q, rep, *theta);
        if (verdict.stable) CHECK(verdict.semistable);
        if (!verdict.semistable) {
            REQUIRE(verdict.destabilizing.has_value());
            CHECK((*theta)(verdict.destabilizing->dims) > 0);
        } else if (!verdict.stable) {
            REQUIRE(verdict.destabilizing.has_value());
            CHECK((*theta)(verdict.destabilizing->dims) == 0);
        }

        const auto direct = enumerate_subrepresentations(q, rep);
        const auto generated = subrepresentations_by_generation(q, rep);
        CHECK(as_keys(direct) == as_keys(generated));
        const bool coprime = is_theta_coprime(q, d, *theta).coprime;
        const auto from_list = stability_from_subrepresentations(direct, d, *theta, coprime);
        CHECK(from_list.semistable == verdict.semistable);
        CHECK(from_list.stable == verdict.stable);
        const auto from_generated = stability_from_subrepresentations(generated, d, *theta, coprime);
        CHECK(from_generated.semistable == verdict.semistable);
    }
}

TEST_CASE("single-vector closures alone can miss a destabilizer") {
    // 1 -> 3 <- 2 with both maps onto the same line of F_2^2
    const auto q = Quiver::with_numbered_vertices(3, {{0, 2}, {1, 2}});
    const PrimeField f2(2);
    Matrix<std::int64_t> to_line(2, 1);
    to_line << 1, 0;
    const FiniteFieldRepresentation rep{f2, {1, 1, 2}, {to_line, to_line}};
    const StabilityParameter theta{1, 1, -1};

    const auto verdict = king_stability(q, rep, theta);
    CHECK_FALSE(verdict.semistable);
    REQUIRE(verdict.destabilizing.has_value());
    CHECK(verdict.destabilizing->dims == DimensionVector{1, 1, 1});

    const auto cyclic = cyclic_subrepresentations(q, rep);
    CHECK(stability_from_subrepresentations(cyclic, rep.dims, theta, false).semistable);
    const auto generated = subrepresentations_by_generation(q, rep);
    CHECK_FALSE(stability_from_subrepresentations(generated, rep.dims, theta, false).semistable);
}

TEST_CASE("double framing equivalence on the fixture catalog") {
    const auto a2 = Quiver::with_numbered_vertices(2, {{0, 1}});
    const auto a3 = Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}});
    for (std::int64_t p : {2, 3}) {
        OracleOptions options;
        options.prime = p;
        const auto k = verify_double_framing_equivalence(kronecker(), {1, 1}, {1, -1}, 0, 1, 2, options);
        CHECK(k.passed());
        CHECK(k.exhaustive);
        CHECK(k.instances_checked == static_cast<std::uint64_t>(p * p * p * p));
        CHECK(k.total_points == Integer(p * p * p * p));
        CHECK(verify_double_framing_equivalence(a2, {1, 1}, {1, -1}, 0, 1, 2, options).passed());
        CHECK(verify_double_framing_equivalence(a3, {1, 1, 1}, {2, -1, -1}, 0, 2, 2, options).passed());
        CHECK(verify_double_framing_equivalence(three_vertex(), {1, 1, 1}, {2, 1, -3}, 1, 2, 2, options).passed());
    }
}

TEST_CASE("equivalence below the minimal scale is labelled") {
    const auto report = verify_double_framing_equivalence(kronecker(), {1, 1}, {1, -1}, 0, 1, 1);
    CHECK(report.below_minimal_scale);
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("equivalence requires coprime data and falls back to sampling") {
    try {
        verify_double_framing_equivalence(kronecker(), {2, 2}, {1, -1}, 0, 1, 2);
        FAIL("expected AssumptionViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AssumptionViolated);
    }
    OracleOptions options;
    options.budget = 40;
    options.sample_size = 50;
    options.seed = 3;
    const auto sampled = verify_double_framing_equivalence(three_vertex(), {1, 1, 1}, {2, 1, -3}, 0, 2, 2, options);
    CHECK_FALSE(sampled.exhaustive);
    CHECK(sampled.instances_checked == 50);
    CHECK(sampled.passed());
    const auto again = verify_double_framing_equivalence(three_vertex(), {1, 1, 1}, {2, 1, -3}, 0, 2, 2, options);
    CHECK(again.instances_checked == sampled.instances_checked);
}

TEST_CASE("path semi-invariants") {
    const auto q = three_vertex();
    const PrimeField f5(5);
    FiniteFieldRepresentation rep{f5, {1, 1, 1}, {scalar(2), scalar(3), scalar(4), scalar(1)}};
    CHECK(path_semiinvariant(q, rep, Path{0, {0, 1}}) == 1);  // 2 * 3 = 6 = 1 mod 5
    CHECK(path_semiinvariant(q, rep, Path{1, {}}) == 1);
    auto ones = rep;
    for (auto& m : ones.arrow_matrices) m = scalar(1);
    CHECK(path_semiinvariant(q, ones, Path{0, {0, 2}}) == 1);

    const FiniteFieldRepresentation fat{f5, {1, 2, 1}, {Matrix<std::int64_t>::Ones(2, 1), Matrix<std::int64_t>::Ones(1, 2),
                                                        Matrix<std::int64_t>::Ones(1, 2), scalar(1)}};
    CHECK_THROWS_AS(path_semiinvariant(q, fat, Path{1, {1}}), Error);

    // multiplicative under concatenation through a thin vertex
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = random_representation(q, {1, 1, 1}, f5, rng);
        const Path p{0, {0}}, s{1, {2}};
        CHECK(path_semiinvariant(q, r, concatenate(p, s, q)) ==
              f5.mul(path_semiinvariant(q, r, p), path_semiinvariant(q, r, s)));
    }
}

TEST_CASE("weight law of path semi-invariants") {
    const auto q = three_vertex();
    const PrimeField f5(5);
    std::mt19937_64 rng(53);
    const auto rep = random_representation(q, {1, 1, 1}, f5, rng);
    GroupElement<PrimeField> identity_element{{scalar(1), scalar(1), scalar(1)}};
    CHECK(path_semiinvariant(q, act(q, identity_element, rep), Path{0, {0, 1}}) ==
          path_semiinvariant(q, rep, Path{0, {0, 1}}));

    GroupElement<PrimeField> scale_target{{scalar(1), scalar(1), scalar(3)}};
    CHECK(path_semiinvariant(q, act(q, scale_target, rep), Path{0, {3}}) ==
          f5.mul(3, path_semiinvariant(q, rep, Path{0, {3}})));

    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_group_element({1, 1, 1}, f5, rng);
        const auto r = random_representation(q, {1, 1, 1}, f5, rng);
        CHECK(verify_semiinvariant_weight(q, r, Path{0, {0, 1}}, g));
        CHECK(verify_semiinvariant_weight(q, r, Path{1, {2}}, g));
    }

    const auto f = double_frame(kronecker(), {2, 3}, {3, -2}, 0, 1, 2);
    const auto report = verify_weight_law_on_framing(f, 5, 30, 54);
    CHECK(report.trials == 30);
    CHECK(report.passed());
}
}
