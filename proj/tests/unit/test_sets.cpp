#include <doctest.h>

#include "birkhoff/sets.hpp"

using namespace birkhoff;

TEST_CASE("membership by kind") {
    CHECK(MeasurableSet::finite({0, 2}).member(2));
    CHECK_FALSE(MeasurableSet::cofinite({0}).member(0));
    CHECK(MeasurableSet::cofinite({0}).member(5));
    CHECK_FALSE(MeasurableSet::finite({}).member(7));
    CHECK(MeasurableSet::predicate(PredicateKind::Even, 0).member(4));
    CHECK_FALSE(MeasurableSet::predicate(PredicateKind::Even, 0).member(3));
}

TEST_CASE("finite list is normalized") {
    const auto s = MeasurableSet::finite({3, 1, 3, 0});
    CHECK(s.explicit_list() == std::vector<Nat>{0, 1, 3});
}

TEST_CASE("set algebra examples") {
    const auto a = MeasurableSet::finite({0, 1});
    const auto b = MeasurableSet::finite({1, 2});
    const auto u = set_union(a, b);
    CHECK(u.kind() == MeasurableSet::Kind::Finite);
    CHECK(u.explicit_list() == std::vector<Nat>{0, 1, 2});

    const auto c = set_complement(MeasurableSet::finite({0}));
    CHECK(c.kind() == MeasurableSet::Kind::Cofinite);
    CHECK(c.explicit_list() == std::vector<Nat>{0});

    const auto i = set_intersect(MeasurableSet::cofinite({0}), MeasurableSet::finite({0, 1}));
    CHECK(i.kind() == MeasurableSet::Kind::Finite);
    CHECK(i.explicit_list() == std::vector<Nat>{1});
}

TEST_CASE("enumerate_prefix examples") {
    CHECK(MeasurableSet::cofinite({1}).enumerate_prefix(3) == std::vector<Nat>{0, 2});
    CHECK(MeasurableSet::finite({5}).enumerate_prefix(3).empty());
    CHECK(MeasurableSet::predicate(PredicateKind::Even, 0).enumerate_prefix(6) ==
          std::vector<Nat>{0, 2, 4});
}

TEST_CASE("finiteness propagation is sound") {
    const auto fin = MeasurableSet::finite({0, 1, 2});
    const auto even = MeasurableSet::predicate(PredicateKind::Even, 0);
    // finite ∩ anything stays finite with an explicit list
    CHECK(set_intersect(fin, even).kind() == MeasurableSet::Kind::Finite);
    CHECK(set_intersect(fin, even).explicit_list() == std::vector<Nat>{0, 2});
    // infinite ∪ anything is infinite
    CHECK(set_union(even, fin).finiteness() == Finiteness::Infinite);
    // infinite ∩ infinite is not decidable in general
    const auto odd = MeasurableSet::predicate(PredicateKind::Odd, 0);
    CHECK(set_intersect(even, odd).finiteness() == Finiteness::Unknown);
    // structured complements
    CHECK(set_complement(even).member(3));
    CHECK(set_complement(MeasurableSet::predicate(PredicateKind::Lt, 4)).member(4));
    CHECK(set_complement(MeasurableSet::predicate(PredicateKind::Lt, 4)).finiteness() ==
          Finiteness::Infinite);
}

namespace {

MeasurableSet sample_set(int which) {
    switch (which % 6) {
        case 0: return MeasurableSet::finite({0, 3, 7});
        case 1: return MeasurableSet::finite({});
        case 2: return MeasurableSet::cofinite({1, 2});
        case 3: return MeasurableSet::predicate(PredicateKind::Even, 0);
        case 4: return MeasurableSet::predicate(PredicateKind::Geq, 5);
        default: return MeasurableSet::predicate(PredicateKind::Lt, 9);
    }
}

}  // namespace

TEST_CASE("pointwise agreement of the boolean algebra over the horizon") {
    constexpr Nat horizon = 64;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            const auto a = sample_set(i);
            const auto b = sample_set(j);
            const auto un = set_union(a, b);
            const auto in = set_intersect(a, b);
            const auto di = set_difference(a, b);
            const auto co = set_complement(a);
            for (Nat n = 0; n < horizon; ++n) {
                CAPTURE(i);
                CAPTURE(j);
                CAPTURE(n);
                CHECK(un.member(n) == (a.member(n) || b.member(n)));
                CHECK(in.member(n) == (a.member(n) && b.member(n)));
                CHECK(di.member(n) == (a.member(n) && !b.member(n)));
                CHECK(co.member(n) == !a.member(n));
            }
        }
    }
}

TEST_CASE("De Morgan identities hold pointwise") {
    constexpr Nat horizon = 64;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            const auto a = sample_set(i);
            const auto b = sample_set(j);
            const auto lhs1 = set_complement(set_union(a, b));
            const auto rhs1 = set_intersect(set_complement(a), set_complement(b));
            const auto lhs2 = set_complement(set_intersect(a, b));
            const auto rhs2 = set_union(set_complement(a), set_complement(b));
            for (Nat n = 0; n < horizon; ++n) {
                CHECK(lhs1.member(n) == rhs1.member(n));
                CHECK(lhs2.member(n) == rhs2.member(n));
            }
        }
    }
}
