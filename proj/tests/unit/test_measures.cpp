#include <doctest.h>

#include <cmath>

#include "birkhoff/measures.hpp"
#include "oracles.hpp"

using namespace birkhoff;
using namespace testutil;

TEST_CASE("evaluation on finite sets is exact by kind") {
    const auto nu = geom_additive();
    CHECK(evaluate(nu, MeasurableSet::finite({0, 1})) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(evaluate(nu, MeasurableSet::empty()) == 0.0);
    CHECK(evaluate(geom_max(), MeasurableSet::empty()) == 0.0);
    CHECK(evaluate(geom_distorted(Distortion::Sqrt), MeasurableSet::empty()) == 0.0);
}

TEST_CASE("infinite sets use the below-continuity limit") {
    // sup of geometric weights is attained at 0 already
    CHECK(evaluate(geom_max(), MeasurableSet::all()) == 0.5);
    CHECK(evaluate(geom_additive(), MeasurableSet::all()) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(evaluate(geom_additive(), MeasurableSet::predicate(PredicateKind::Even, 0)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    // the limit stops once successive iterates settle below the tail tolerance
    CHECK(std::abs(evaluate(geom_additive(), MeasurableSet::all()) - 1.0) <= 1e-9);
}

TEST_CASE("unknown finiteness is rejected") {
    const auto mystery =
        MeasurableSet::predicate([](Nat n) { return n % 3 == 0; }, Finiteness::Unknown, "?");
    CHECK_THROWS_AS(evaluate(geom_additive(), mystery), UnknownFiniteness);
}

TEST_CASE("subadditivity audits") {
    PairSampler sampler;
    sampler.count = 64;
    sampler.seed = 7;

    CHECK(subadditivity_audit(geom_additive(), sampler, 1e-9).passed());
    CHECK(subadditivity_audit(geom_max(), sampler, 1e-9).passed());
    CHECK(subadditivity_audit(geom_distorted(Distortion::Sqrt), sampler, 1e-9).passed());

    const auto audit = subadditivity_audit(geom_distorted(Distortion::Square), sampler, 1e-9);
    CHECK(audit.verdict == AuditVerdict::Failed);
    REQUIRE(audit.witness.has_value());
    CHECK(audit.witness->gap > 1e-9);
}

TEST_CASE("square distortion counterexample numbers") {
    const auto nu = geom_distorted(Distortion::Square);
    CHECK(nu.evaluate_finite({0}) == doctest::Approx(0.25));
    CHECK(nu.evaluate_finite({1}) == doctest::Approx(0.0625));
    CHECK(nu.evaluate_finite({0, 1}) == doctest::Approx(0.5625));
    // 0.5625 > 0.25 + 0.0625: subadditivity fails on the pair {0},{1}
    CHECK(nu.evaluate_finite({0, 1}) - nu.evaluate_finite({0}) - nu.evaluate_finite({1}) ==
          doctest::Approx(0.25));
}

TEST_CASE("continuity from below audits") {
    std::vector<SetChain> chains;
    chains.push_back(prefix_chain(MeasurableSet::all(), 64));

    SUBCASE("additive limit reaches the total mass") {
        const auto audit = continuity_below_audit(geom_additive(), chains, 1e-8);
        CHECK(audit.passed());
    }
    SUBCASE("max measure limit is the sup, already attained") {
        const auto audit = continuity_below_audit(geom_max(), chains, 1e-8);
        CHECK(audit.passed());
    }
    SUBCASE("constant chains are trivially continuous") {
        SetChain constant;
        constant.union_set = MeasurableSet::finite({0, 1});
        for (int i = 0; i < 3; ++i) constant.steps.push_back(MeasurableSet::finite({0, 1}));
        const auto audit = continuity_below_audit(geom_additive(), {constant}, 1e-8);
        CHECK(audit.passed());
    }
}

TEST_CASE("a-integrability audits") {
    SUBCASE("additive measures pass for finite sets") {
        const auto audit =
            a_integrability_audit(geom_additive(), MeasurableSet::finite({0}), 16, 1e-9);
        CHECK(audit.passed());
        for (const auto& elems :
             {std::vector<Nat>{1}, std::vector<Nat>{0, 2, 5}, std::vector<Nat>{3, 4}}) {
            CHECK(a_integrability_audit(geom_additive(), MeasurableSet::finite(elems), 16, 1e-9)
                      .passed());
        }
    }
    SUBCASE("max measure fails with the coarse-vs-singleton witness") {
        const auto audit =
            a_integrability_audit(geom_max(), MeasurableSet::finite({0, 1}), 16, 1e-9);
        CHECK(audit.verdict == AuditVerdict::Failed);
        REQUIRE(audit.witness.has_value());
        CHECK(audit.witness->lhs == 0.75);  // singleton resolution
        CHECK(audit.witness->rhs == 0.5);   // nu({0,1}) = coarse cell sum
        CHECK(audit.witness->gap == doctest::Approx(0.25));
    }
    SUBCASE("empty set is trivially integrable") {
        CHECK(a_integrability_audit(geom_max(), MeasurableSet::empty(), 16, 1e-9).passed());
    }
    SUBCASE("sqrt distortion fails on a two-point set") {
        const auto audit = a_integrability_audit(geom_distorted(Distortion::Sqrt),
                                                 MeasurableSet::finite({0, 1}), 16, 1e-9);
        CHECK(audit.verdict == AuditVerdict::Failed);
    }
}

TEST_CASE("nu-a.e. equality") {
    const auto null_at_zero = SetFunction::additive(
        WeightSequence::explicit_list({0.0, 0.5, 0.25, 0.125, 0.0625}), "null-atom");
    const auto massive = geom_additive();
    const auto u = chi({0});
    const auto zero = ScalarFunction::constant(0.0);

    CHECK(nu_ae_equal(u, u, massive, 32));
    CHECK(nu_ae_equal(u, zero, null_at_zero, 32));
    CHECK_FALSE(nu_ae_equal(u, zero, massive, 32));

    // agrees with zero on the probe window but has no declared support:
    // the tail disagreement set cannot be classified
    const auto far_tail = ScalarFunction::from_expr(
        make_indicator("G", MeasurableSet::predicate(PredicateKind::Geq, 40, "G")),
        std::nullopt, "far-tail");
    CHECK_THROWS_AS(nu_ae_equal(far_tail, zero, massive, 32), UnknownFiniteness);
    // a massive disagreement inside the probe window decides without support info
    const auto no_support =
        ScalarFunction::from_expr(make_geom(0.5), std::nullopt, "no-support");
    CHECK_FALSE(nu_ae_equal(no_support, zero, massive, 32));
}

TEST_CASE("additive measures are additive on disjoint finite sets") {
    const auto nu = geom_additive();
    for (Nat a = 0; a < 6; ++a) {
        for (Nat b = 6; b < 12; ++b) {
            const double va = nu.evaluate_finite({a});
            const double vb = nu.evaluate_finite({b});
            const double vu = nu.evaluate_finite({a, b});
            CHECK(std::abs(vu - va - vb) <= 1e-12);
        }
    }
}

TEST_CASE("max measure takes max on unions, exactly") {
    const auto nu = geom_max();
    const auto a = MeasurableSet::finite({1, 4});
    const auto b = MeasurableSet::finite({2, 7});
    CHECK(evaluate(nu, set_union(a, b)) ==
          std::max(evaluate(nu, a), evaluate(nu, b)));
}

TEST_CASE("empty set measures to zero across the zoo") {
    for (const auto& nu :
         {geom_additive(), geom_max(), geom_distorted(Distortion::Sqrt),
          geom_distorted(Distortion::Square),
          SetFunction::additive(WeightSequence::uniform(8), "uniform"),
          SetFunction::additive(WeightSequence::zeta2(), "zeta2")}) {
        CHECK(evaluate(nu, MeasurableSet::empty()) == 0.0);
    }
}

TEST_CASE("claimed flags match the zoo design") {
    CHECK(geom_additive().claims_all_mcs());
    CHECK_FALSE(geom_max().claims(MeasureFlag::AIntegrable));
    CHECK(geom_max().claims(MeasureFlag::Subadditive));
    CHECK(geom_max().claims(MeasureFlag::ContinuousFromBelow));
    CHECK(geom_distorted(Distortion::Sqrt).claims(MeasureFlag::Subadditive));
    CHECK_FALSE(geom_distorted(Distortion::Square).claims(MeasureFlag::Subadditive));
}

TEST_CASE("weight tail bounds are sound upper bounds") {
    const auto w = WeightSequence::geometric(0.5);
    double tail = 0.0;
    for (Nat n = 10; n < 80; ++n) tail += w.at(n);
    REQUIRE(w.tail_bound(10).has_value());
    CHECK(*w.tail_bound(10) >= tail);
    CHECK(*w.tail_bound(10) == doctest::Approx(std::pow(0.5, 10)));

    CHECK(*WeightSequence::uniform(8).tail_bound(8) == 0.0);
    CHECK_FALSE(WeightSequence::zeta2().tail_bound(4, 0.5).has_value());  // diverges
    double z2tail = 0.0;
    const auto z2 = WeightSequence::zeta2();
    for (Nat n = 16; n < 100000; ++n) z2tail += z2.at(n);
    CHECK(*z2.tail_bound(16) >= z2tail);
}
