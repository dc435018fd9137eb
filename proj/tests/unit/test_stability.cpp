#include "quiverkit/stability.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <set>

using namespace quiverkit;
using namespace quiverkit_test;

namespace {

Quiver three_vertex() { return Quiver::with_numbered_vertices(3, {{0, 1}, {1, 2}, {1, 2}, {0, 2}}); }
Quiver kronecker(int arrows = 2) {
    std::vector<Arrow> a(static_cast<std::size_t>(arrows), Arrow{0, 1});
    return Quiver::with_numbered_vertices(2, a);
}

}  // namespace

TEST_SUITE("stability") {
TEST_CASE("subvector enumeration is lexicographic and complete") {
    const DimensionVector d{1, 2, 0};
    std::vector<DimensionVector> seen;
    for_each_subvector(d, [&](const DimensionVector& e) {
        seen.push_back(e);
        return true;
    });
    REQUIRE(seen.size() == 6);
    CHECK(subvector_count(d) == Integer(6));
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(seen.front() == DimensionVector{0, 0, 0});
    CHECK(seen.back() == DimensionVector{1, 2, 0});

    int visits = 0;
    for_each_subvector(d, [&](const DimensionVector&) { return ++visits < 3; });
    CHECK(visits == 3);
}

TEST_CASE("slope") {
    const StabilityParameter theta{1, -1};
    CHECK_FALSE(slope(theta, {0, 0}).has_value());
    CHECK(*slope(theta, {1, 0}) == Rational(1));
    CHECK(*slope(theta, {1, 2}) == make_rational(Integer(-1), Integer(3)));
}

TEST_CASE("nonzero pairing is rejected") {
    try {
        b_sets(kronecker(), {1, 1}, {1, 1});
        FAIL("expected PairingNonzero");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PairingNonzero);
    }
    CHECK_THROWS_AS(is_theta_coprime(kronecker(), {1, 1}, {1, 0}), Error);
}

TEST_CASE("B-sets partition the subvectors by the sign of theta") {
    std::mt19937_64 rng(21);
    int checked = 0;
    while (checked < 80) {
        const auto q = random_acyclic_quiver(rng, 1 + checked % 4, 2);
        const auto d = random_dimension(rng, q.vertex_count(), 0, 3);
        const auto theta = random_stability(rng, d, 3);
        if (!theta) continue;
        ++checked;
        const auto b = b_sets(q, d, *theta);
        CHECK(Integer(static_cast<long long>(b.plus.size() + b.minus.size() + b.zero.size())) == subvector_count(d));
        std::set<DimensionVector> all;
        for (const auto& e : b.plus) {
            CHECK((*theta)(e) > 0);
            all.insert(e);
        }
        for (const auto& e : b.minus) {
            CHECK((*theta)(e) < 0);
            all.insert(e);
        }
        for (const auto& e : b.zero) {
            CHECK((*theta)(e) == 0);
            all.insert(e);
        }
        CHECK(Integer(static_cast<long long>(all.size())) == subvector_count(d));
        // e and d - e lie in opposite sets
        for (const auto& e : b.plus) CHECK((*theta)(d.minus(e)) < 0);
    }
}

TEST_CASE("coprimality and the strong criterion agree with the definitions") {
    std::mt19937_64 rng(22);
    int checked = 0;
    while (checked < 150) {
        const auto q = random_acyclic_quiver(rng, 1 + checked % 4, 3);
        const auto d = random_dimension(rng, q.vertex_count(), 0, 2);
        const auto theta = random_stability(rng, d, 3);
        if (!theta) continue;
        ++checked;
        const auto dv = as_vector(d);
        const std::vector<std::int64_t> th(theta->values().begin(), theta->values().end());
        const auto coprime = is_theta_coprime(q, d, *theta);
        CHECK(coprime.coprime == coprime_oracle(dv, th));
        if (!coprime.coprime) {
            REQUIRE(coprime.witness.has_value());
            CHECK((*theta)(*coprime.witness) == 0);
            CHECK_FALSE(coprime.witness->is_zero());
            CHECK(*coprime.witness != d);
        }
        const auto strong = is_strongly_amply_stable(q, d, *theta);
        CHECK(strong.strongly_amply_stable == strong_oracle(q, dv, th));
        for (const auto& w : strong.witnesses) {
            CHECK((*theta)(w) >= 0);
            CHECK(euler_form(q, w, d.minus(w)) > -2);
        }
        // slope formulation of the strong criterion is the same condition
        bool by_slope = true;
        for_each_subvector(d, [&](const DimensionVector& e) {
            if (e.is_zero() || e == d) return true;
            if (*slope(*theta, e) >= *slope(*theta, d.minus(e)) && euler_form(q, e, d.minus(e)) > -2) by_slope = false;
            return true;
        });
        CHECK(by_slope == strong.strongly_amply_stable);
    }
}

TEST_CASE("three-vertex example: canonical parameter passes every check") {
    const auto q = three_vertex();
    const DimensionVector d{1, 1, 1};
    const auto theta = canonical_stability(q, d);
    CHECK(theta == StabilityParameter{2, 1, -3});
    const auto r = assumptions_report(q, d, theta);
    CHECK(r.acyclic);
    CHECK(r.indivisible);
    CHECK(r.coprime);
    CHECK(r.strongly_amply_stable);
    CHECK(r.amply_stable == Tristate::Yes);
    CHECK(r.all_pass());
    CHECK(r.first_failure().empty());
}

TEST_CASE("three-vertex example: the other chamber fails the strong criterion at (1,0,1)") {
    const auto q = three_vertex();
    const DimensionVector d{1, 1, 1};
    const StabilityParameter theta{2, -1, -1};
    const auto strong = is_strongly_amply_stable(q, d, theta);
    CHECK_FALSE(strong.strongly_amply_stable);
    REQUIRE(strong.witnesses.size() == 1);
    CHECK(strong.witnesses.front() == DimensionVector{1, 0, 1});
    CHECK(euler_form(q, {1, 0, 1}, {0, 1, 0}) == -1);

    const auto r = assumptions_report(q, d, theta);
    CHECK(r.structural_pass());
    CHECK_FALSE(r.all_pass());
    CHECK(r.amply_stable == Tristate::Unknown);
    CHECK(r.first_failure() == "amply_stable");
    bool witnessed = false;
    for (const auto& w : r.failing_witnesses)
        witnessed = witnessed || (w.check == AssumptionCheck::StronglyAmplyStable && w.subdimension == DimensionVector{1, 0, 1});
    CHECK(witnessed);
}

TEST_CASE("assumption failures carry witnesses") {
    const auto div = assumptions_report(kronecker(), {2, 2}, {1, -1});
    CHECK_FALSE(div.indivisible);
    CHECK_FALSE(div.coprime);
    CHECK(div.first_failure() == "indivisible");
    REQUIRE_FALSE(div.failing_witnesses.empty());
    CHECK(div.failing_witnesses.front().subdimension == DimensionVector{1, 1});

    const auto cyclic = Quiver::with_numbered_vertices(2, {{0, 1}, {1, 0}});
    const auto cyc = assumptions_report(cyclic, {1, 2}, {2, -1});
    CHECK_FALSE(cyc.acyclic);
    CHECK(cyc.first_failure() == "acyclic");
    CHECK(cyc.cycle.size() == 2);
    CHECK_THROWS_AS(is_strongly_amply_stable(cyclic, {1, 2}, {2, -1}), Error);
}

TEST_CASE("kronecker with three arrows at (2,3) is amply stable") {
    const auto r = assumptions_report(kronecker(3), {2, 3}, {3, -2});
    CHECK(r.all_pass());
}
}
