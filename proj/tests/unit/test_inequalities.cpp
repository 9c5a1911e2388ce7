#include <doctest.h>

#include <cmath>

#include "birkhoff/inequalities.hpp"
#include "oracles.hpp"

using namespace birkhoff;
using namespace testutil;

namespace {

CheckConfig cfg() { return CheckConfig{}; }

const ScalarFunction kOne = ScalarFunction::constant(1.0);
const ScalarFunction kZero = ScalarFunction::constant(0.0);

}  // namespace

TEST_CASE("conjugate pairs") {
    CHECK(ConjugatePair::from_p(2.0).q == doctest::Approx(2.0));
    CHECK(ConjugatePair::from_p(0.5).q == doctest::Approx(-1.0));
    CHECK(ConjugatePair::from_p(4.0).q == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS(ConjugatePair::from_p(1.0), BadBounds);
    CHECK_THROWS_AS(ConjugatePair::from_p(-2.0), BadBounds);
    CHECK_THROWS_AS(ConjugatePair(2.0, 3.0), BadBounds);
    for (const double p : {1.1, 1.5, 2.0, 3.0, 10.0, 0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto cp = ConjugatePair::from_p(p);
        CHECK(std::abs(1.0 / cp.p + 1.0 / cp.q - 1.0) <= 1e-12);
    }
}

TEST_CASE("holder examples") {
    const auto nu = geom_additive();
    SUBCASE("equality at u = v = chi_0, p = q = 2") {
        const auto v = holder_check(chi({0}), chi({0}), ConjugatePair::from_p(2.0), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("zero function") {
        const auto v = holder_check(kZero, chi({1}), ConjugatePair::from_p(2.0), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == 0.0);
    }
    SUBCASE("disjoint supports") {
        const auto v = holder_check(chi({0}), chi({1}), ConjugatePair::from_p(2.0), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == 0.0);
        CHECK(v.rhs ==
              doctest::Approx(std::sqrt(0.5) * std::sqrt(0.25)).epsilon(1e-12));
    }
    SUBCASE("p <= 1 is out of domain") {
        CHECK_THROWS_AS(holder_check(kOne, kOne, ConjugatePair::from_p(0.5), nu, cfg()),
                        BadBounds);
    }
}

TEST_CASE("minkowski examples") {
    const auto nu = geom_additive();
    SUBCASE("equality at u = v = chi_0") {
        const auto v = minkowski_check(chi({0}), chi({0}), 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("zero v gives equality") {
        const auto v = minkowski_check(chi({0, 3}), kZero, 3.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("disjoint supports") {
        const auto v = minkowski_check(chi({0}), chi({1}), 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(std::sqrt(0.5) + 0.5).epsilon(1e-12));
    }
}

TEST_CASE("reverse holder examples") {
    const auto nu = geom_additive();
    SUBCASE("chi_0 against the constant one") {
        const auto v =
            reverse_holder_check(chi({0}), kOne, ConjugatePair::from_p(0.5), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("degenerate branch at u = 0") {
        const auto v = reverse_holder_check(kZero, kOne, ConjugatePair::from_p(0.5), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.rhs == 0.0);
    }
    SUBCASE("constants give equality") {
        const auto v = reverse_holder_check(kOne, kOne, ConjugatePair::from_p(0.5), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("vanishing v on massive points is rejected") {
        CHECK_THROWS_AS(
            reverse_holder_check(kOne, chi({0}), ConjugatePair::from_p(0.5), nu, cfg()),
            ZeroDenominator);
    }
    SUBCASE("points of measure zero are exempt from the guard") {
        // v vanishes only at n = 0, which carries no mass
        const auto null_at_zero = SetFunction::additive(
            WeightSequence::explicit_list({0.0, 0.5, 0.25, 0.125, 0.0625}), "null-atom");
        const auto v = ScalarFunction::indicator(MeasurableSet::cofinite({0}, "T\\{0}"));
        const auto verdict = reverse_holder_check(chi({1}), v, ConjugatePair::from_p(0.5),
                                                  null_at_zero, cfg());
        CHECK(verdict.outcome == CheckOutcome::Holds);
    }
}

TEST_CASE("reverse minkowski examples") {
    const auto nu = geom_additive();
    SUBCASE("frozen fixture: chi_0, chi_1 at p = 1/2") {
        const auto v = reverse_minkowski_check(chi({0}), chi({1}), 0.5, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.lhs - 0.5625) <= 1e-12);
        CHECK(std::abs(v.rhs - 0.3125) <= 1e-12);
        CHECK(v.slack == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("zero v gives equality") {
        const auto v = reverse_minkowski_check(chi({0}), kZero, 0.5, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("equal functions double the mass") {
        const auto v = reverse_minkowski_check(chi({0}), chi({0}), 0.5, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("weighted examples") {
    const auto nu = geom_additive();
    SUBCASE("p = 2 direction") {
        const auto v = weighted_check(chi({0}), kOne, ConjugatePair::from_p(2.0), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("constants give equality in both branches") {
        for (const double p : {2.0, 0.5}) {
            const auto v = weighted_check(kOne, kOne, ConjugatePair::from_p(p), nu, cfg());
            CHECK(v.outcome == CheckOutcome::Holds);
            CHECK(std::abs(v.slack) <= 1e-9);
        }
    }
    SUBCASE("reverse direction at p = 1/2") {
        const auto v = weighted_check(chi({0}), kOne, ConjugatePair::from_p(0.5), nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
        CHECK(v.rhs == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("radon ratio examples") {
    const auto nu = geom_additive();
    SUBCASE("constants give equality") {
        const auto v = radon_ratio_check(kOne, kOne, 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("p = 2 direction") {
        const auto v = radon_ratio_check(chi({0}), kOne, 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v.rhs == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("p = 1/2 flips the direction") {
        const auto v = radon_ratio_check(chi({0}), kOne, 0.5, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(v.rhs == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    }
}

TEST_CASE("bounded ratio part a") {
    const auto nu = geom_additive();
    const auto cp = ConjugatePair::from_p(2.0);
    SUBCASE("alpha = beta = 1 on constants is sharp") {
        const auto v = bounded_ratio_check_a(kOne, kOne, cp, 1.0, 1.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("proportional functions are sharp") {
        const auto two = ScalarFunction::constant(2.0);
        const auto v = bounded_ratio_check_a(two, kOne, cp, 2.0, 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("worked example with a genuine gap") {
        const auto u = pw_sum(kOne, chi({0}));
        const auto v = bounded_ratio_check_a(u, kOne, cp, 1.0, 2.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(1.5)).epsilon(1e-9));
        CHECK(v.rhs ==
              doctest::Approx(std::pow(2.0, 0.25) * (std::sqrt(2.0) * 0.5 + 0.5)).epsilon(1e-9));
    }
    SUBCASE("violated pointwise bound is reported, not silently checked") {
        const auto u = pw_sum(kOne, chi({0}));  // ratio reaches 2
        const auto v = bounded_ratio_check_a(u, kOne, cp, 1.0, 1.5, nu, cfg());
        CHECK(v.outcome == CheckOutcome::HypothesesViolated);
    }
    SUBCASE("bad bounds throw") {
        CHECK_THROWS_AS(bounded_ratio_check_a(kOne, kOne, cp, 2.0, 1.0, nu, cfg()), BadBounds);
        CHECK_THROWS_AS(bounded_ratio_check_a(kOne, kOne, cp, -1.0, 1.0, nu, cfg()), BadBounds);
    }
}

TEST_CASE("bounded ratio part b") {
    const auto nu = geom_additive();
    const auto cp = ConjugatePair::from_p(2.0);
    SUBCASE("constants are sharp") {
        const auto v = bounded_ratio_check_b(kOne, kOne, cp, 1.0, 1.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(std::abs(v.slack) <= 1e-9);
    }
    SUBCASE("scaled constants are sharp with alpha = beta = 4") {
        const auto two = ScalarFunction::constant(2.0);
        const auto v = bounded_ratio_check_b(two, kOne, cp, 4.0, 4.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(v.rhs == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("worked example") {
        const auto u = pw_sum(kOne, chi({0}));
        const auto v = bounded_ratio_check_b(u, kOne, cp, 1.0, 4.0, nu, cfg());
        CHECK(v.outcome == CheckOutcome::Holds);
        CHECK(v.lhs == doctest::Approx(std::sqrt(2.5)).epsilon(1e-9));
        CHECK(v.rhs == doctest::Approx(std::sqrt(2.0) * 1.5).epsilon(1e-9));
    }
}

TEST_CASE("duality of the holder bound") {
    const auto nu = geom_additive();
    const auto u = pw_sum(chi({0}), pw_scale(chi({2}), 3.0));
    const auto v = pw_sum(chi({0, 1}), kOne);
    const auto a = holder_check(u, v, ConjugatePair::from_p(3.0), nu, cfg());
    const auto b = holder_check(v, u, ConjugatePair::from_p(1.5), nu, cfg());
    CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-10));
    CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-10));
}

TEST_CASE("positive scaling leaves outcomes invariant") {
    const auto nu = geom_additive();
    const auto u = pw_sum(chi({0}), pw_scale(chi({3}), 2.0));
    const auto v = pw_sum(kOne, chi({1}));
    for (const double c : {0.25, 5.0}) {
        const auto base = holder_check(u, v, ConjugatePair::from_p(2.0), nu, cfg());
        const auto scaled =
            holder_check(pw_scale(u, c), v, ConjugatePair::from_p(2.0), nu, cfg());
        CHECK(base.outcome == scaled.outcome);
        CHECK(scaled.rhs == doctest::Approx(c * base.rhs).epsilon(1e-10));
        CHECK(scaled.lhs == doctest::Approx(c * base.lhs).epsilon(1e-10));
    }
}

TEST_CASE("max measure gates every checker") {
    const auto nu = geom_max();
    const auto u = pw_sum(kOne, chi({0}));
    const auto cp2 = ConjugatePair::from_p(2.0);
    const auto cph = ConjugatePair::from_p(0.5);

    CHECK(holder_check(u, kOne, cp2, nu, cfg()).outcome == CheckOutcome::HypothesesViolated);
    CHECK(minkowski_check(u, kOne, 2.0, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);
    CHECK(reverse_holder_check(u, kOne, cph, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);
    CHECK(reverse_minkowski_check(u, kOne, 0.5, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);
    CHECK(weighted_check(u, kOne, cp2, nu, cfg()).outcome == CheckOutcome::HypothesesViolated);
    CHECK(radon_ratio_check(u, kOne, 2.0, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);
    CHECK(bounded_ratio_check_a(u, kOne, cp2, 1.0, 2.0, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);
    CHECK(bounded_ratio_check_b(u, kOne, cp2, 1.0, 4.0, nu, cfg()).outcome ==
          CheckOutcome::HypothesesViolated);

    // exploratory mode still reports the sides where computable
    const auto v = holder_check(chi({0}), chi({0}), cp2, nu, cfg());
    CHECK(v.outcome == CheckOutcome::HypothesesViolated);
    CHECK(std::isfinite(v.lhs));
    CHECK(std::isfinite(v.rhs));
    REQUIRE(!v.hypothesis_audits.empty());
    bool some_failed = false;
    for (const auto& a : v.hypothesis_audits) some_failed = some_failed || !a.passed();
    CHECK(some_failed);
}

TEST_CASE("sweeps") {
    const auto nu = geom_additive();
    const auto u = pw_sum(chi({0}), chi({2}));
    SUBCASE("grid of valid exponents") {
        const auto verdicts = sweep("holder", u, kOne, {1.5, 2.0, 3.0}, nu, cfg());
        REQUIRE(verdicts.size() == 3);
        for (const auto& v : verdicts) CHECK(v.outcome == CheckOutcome::Holds);
    }
    SUBCASE("empty grid") {
        CHECK(sweep("holder", u, kOne, {}, nu, cfg()).empty());
    }
    SUBCASE("p = 1 is embedded as an error, not fatal") {
        const auto verdicts = sweep("holder", u, kOne, {2.0, 1.0, 3.0}, nu, cfg());
        REQUIRE(verdicts.size() == 3);
        CHECK(verdicts[0].outcome == CheckOutcome::Holds);
        CHECK(verdicts[1].error.find("conjugate") != std::string::npos);
        CHECK(verdicts[2].outcome == CheckOutcome::Holds);
    }
    SUBCASE("bounded ratio sweeps compute tight bounds") {
        const auto up = pw_sum(kOne, chi({0}));
        const auto verdicts = sweep("bounded_ratio_a", up, kOne, {2.0, 3.0}, nu, cfg());
        REQUIRE(verdicts.size() == 2);
        for (const auto& v : verdicts) {
            CHECK(v.outcome == CheckOutcome::Holds);
            CHECK(*v.alpha == doctest::Approx(1.0));
            CHECK(*v.beta == doctest::Approx(2.0));
        }
    }
    SUBCASE("deterministic across repeated runs") {
        const auto a = sweep("reverse_holder", u, kOne, {0.25, 0.5}, nu, cfg());
        const auto b = sweep("reverse_holder", u, kOne, {0.25, 0.5}, nu, cfg());
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].lhs == b[i].lhs);
            CHECK(a[i].rhs == b[i].rhs);
            CHECK(a[i].slack == b[i].slack);
        }
    }
    SUBCASE("unknown checker names are rejected") {
        CHECK_THROWS_AS(sweep("frobnicate", u, kOne, {2.0}, nu, cfg()), BadBounds);
    }
}

TEST_CASE("inequality battery over a random corpus") {
    TestRng rng(4097);
    const auto nu = geom_additive();
    MeasureHypotheses hyp = audit_measure_hypotheses(nu, RunConfig{});
    CheckConfig shared;
    shared.cached_hypotheses = &hyp;

    for (int trial = 0; trial < 12; ++trial) {
        const auto u = random_finite_support(rng, 12);
        const auto v_bump = random_finite_support(rng, 12);
        const auto v = pw_sum(ScalarFunction::constant(0.5), v_bump);  // strictly positive

        for (const double p : {1.5, 2.0, 3.0}) {
            CHECK(holder_check(u, v, ConjugatePair::from_p(p), nu, shared).outcome ==
                  CheckOutcome::Holds);
            CHECK(minkowski_check(u, v, p, nu, shared).outcome == CheckOutcome::Holds);
            CHECK(weighted_check(u, v, ConjugatePair::from_p(p), nu, shared).outcome ==
                  CheckOutcome::Holds);
            CHECK(radon_ratio_check(u, v, p, nu, shared).outcome == CheckOutcome::Holds);
        }
        for (const double p : {0.25, 0.5, 0.75}) {
            CHECK(reverse_holder_check(u, v, ConjugatePair::from_p(p), nu, shared).outcome ==
                  CheckOutcome::Holds);
            CHECK(reverse_minkowski_check(u, v, p, nu, shared).outcome == CheckOutcome::Holds);
            CHECK(weighted_check(u, v, ConjugatePair::from_p(p), nu, shared).outcome ==
                  CheckOutcome::Holds);
            CHECK(radon_ratio_check(u, v, p, nu, shared).outcome == CheckOutcome::Holds);
        }
    }
}
