#include <doctest.h>

#include <set>

#include "birkhoff/partitions.hpp"

using namespace birkhoff;

namespace {

bool same_cells(const Partition& a, const Partition& b, Nat horizon) {
    return a.is_finer_than(b, horizon) && b.is_finer_than(a, horizon);
}

}  // namespace

TEST_CASE("cell_at examples") {
    const Partition p({{0, 1}}, Partition::TailRule::Singletons);
    CHECK(p.cell_elements(0) == std::vector<Nat>{0, 1});
    CHECK(p.cell_elements(1) == std::vector<Nat>{2});  // first uncovered natural
    CHECK(p.cell_elements(5) == std::vector<Nat>{6});

    const Partition blocks({}, Partition::TailRule::Blocks, {2});
    CHECK(blocks.cell_elements(0) == std::vector<Nat>{0, 1});
    CHECK(blocks.cell_elements(1) == std::vector<Nat>{2, 3});

    CHECK(cell_at(p, 0).member(1));
    CHECK_FALSE(cell_at(p, 0).member(2));
}

TEST_CASE("tail cells skip covered ground") {
    const Partition p({{1, 3}}, Partition::TailRule::Blocks, {2, 1});
    // uncovered: 0, 2, 4, 5, 6, ...; blocks of cyclic lengths 2,1
    CHECK(p.cell_elements(1) == std::vector<Nat>{0, 2});
    CHECK(p.cell_elements(2) == std::vector<Nat>{4});
    CHECK(p.cell_elements(3) == std::vector<Nat>{5, 6});
    CHECK(p.cell_index_of(2) == 1);
    CHECK(p.cell_index_of(4) == 2);
    CHECK(p.cell_index_of(6) == 3);
    CHECK(p.cell_index_of(3) == 0);
}

TEST_CASE("is_finer examples") {
    const Partition singles = Partition::singletons();
    const Partition coarse({{0, 1}}, Partition::TailRule::Singletons);
    CHECK(is_finer(singles, coarse, 32));
    CHECK_FALSE(is_finer(coarse, singles, 32));
    CHECK(is_finer(coarse, coarse, 32));
    CHECK(is_finer(singles, singles, 32));
}

TEST_CASE("is_finer is transitive on sampled refinements") {
    const Partition base({{0, 1, 2, 3}, {4, 5}}, Partition::TailRule::Singletons);
    const auto fine = sample_refinements(base, 8, 11);
    for (const auto& tp : fine) {
        const auto finer = sample_refinements(tp.partition, 4, 13);
        for (const auto& tp2 : finer) {
            CHECK(is_finer(tp2.partition, tp.partition, 32));
            CHECK(is_finer(tp2.partition, base, 32));
        }
    }
}

TEST_CASE("common refinement examples") {
    SUBCASE("p with itself") {
        const Partition p({{0, 1}, {2, 3}}, Partition::TailRule::Singletons);
        CHECK(same_cells(common_refinement(p, p), p, 40));
    }
    SUBCASE("worked two-partition example") {
        const Partition p({{0, 1}, {2, 3}}, Partition::TailRule::Singletons);
        const Partition q({{0}, {1, 2, 3}}, Partition::TailRule::Singletons);
        const Partition expected({{0}, {1}, {2, 3}}, Partition::TailRule::Singletons);
        const Partition r = common_refinement(p, q);
        CHECK(same_cells(r, expected, 40));
        CHECK(is_finer(r, p, 40));
        CHECK(is_finer(r, q, 40));
    }
    SUBCASE("singletons absorb everything") {
        const Partition p({{0, 2}, {1, 5}}, Partition::TailRule::Blocks, {3});
        const Partition r = common_refinement(p, Partition::singletons());
        CHECK(same_cells(r, Partition::singletons(), 48));
    }
    SUBCASE("cyclic block tails intersect into a periodic pattern") {
        const Partition p({}, Partition::TailRule::Blocks, {3});
        const Partition q({}, Partition::TailRule::Blocks, {2});
        const Partition r = common_refinement(p, q);
        CHECK(is_finer(r, p, 60));
        CHECK(is_finer(r, q, 60));
        // every r-cell is an intersection of a 3-block and a 2-block
        for (Nat n = 0; n < 48; ++n) {
            const auto cell = r.cell_elements(r.cell_index_of(n));
            for (Nat m : cell) {
                CHECK(p.cell_index_of(m) == p.cell_index_of(n));
                CHECK(q.cell_index_of(m) == q.cell_index_of(n));
            }
        }
        // and it is the coarsest such: adjacent points sharing both host
        // cells share the refinement cell
        for (Nat n = 1; n < 48; ++n) {
            if (p.cell_index_of(n) == p.cell_index_of(n - 1) &&
                q.cell_index_of(n) == q.cell_index_of(n - 1)) {
                CHECK(r.cell_index_of(n) == r.cell_index_of(n - 1));
            }
        }
    }
    SUBCASE("misaligned heads with block tails") {
        const Partition p({{0, 1, 2}}, Partition::TailRule::Blocks, {2});
        const Partition q({{0}, {1, 2, 3, 4}}, Partition::TailRule::Blocks, {3});
        const Partition r = common_refinement(p, q);
        CHECK(is_finer(r, p, 80));
        CHECK(is_finer(r, q, 80));
        for (Nat n = 1; n < 60; ++n) {
            if (p.cell_index_of(n) == p.cell_index_of(n - 1) &&
                q.cell_index_of(n) == q.cell_index_of(n - 1)) {
                CHECK(r.cell_index_of(n) == r.cell_index_of(n - 1));
            }
        }
    }
}

TEST_CASE("refine_cell") {
    SUBCASE("splitting a head cell") {
        const Partition p({{0, 1}}, Partition::TailRule::Singletons);
        const Partition r = p.refine_cell(0, {0}, {1});
        CHECK(r.cell_elements(0) == std::vector<Nat>{0});
        CHECK(r.cell_elements(1) == std::vector<Nat>{1});
        CHECK(is_finer(r, p, 32));
    }
    SUBCASE("splitting a tail block materializes it into the head") {
        const Partition p({}, Partition::TailRule::Blocks, {2});
        const Partition r = p.refine_cell(1, {2}, {3});
        CHECK(r.head_size() == 3);  // {0,1} materialized, then {2}, {3}
        CHECK(r.cell_elements(0) == std::vector<Nat>{0, 1});
        CHECK(r.cell_elements(1) == std::vector<Nat>{2});
        CHECK(r.cell_elements(2) == std::vector<Nat>{3});
        CHECK(r.cell_elements(3) == std::vector<Nat>{4, 5});  // blocks continue
        CHECK(is_finer(r, p, 32));
    }
    SUBCASE("invalid splits") {
        const Partition p({{0, 1}}, Partition::TailRule::Singletons);
        CHECK_THROWS_AS(p.refine_cell(0, {0}, {0, 1}), BadSplit);   // overlap
        CHECK_THROWS_AS(p.refine_cell(0, {}, {0, 1}), BadSplit);    // empty part
        CHECK_THROWS_AS(p.refine_cell(0, {0}, {2}), BadSplit);      // wrong cover
    }
}

TEST_CASE("sample_refinements is deterministic and sound") {
    const Partition base({{0, 1, 2}, {3, 4}}, Partition::TailRule::Singletons);
    const auto a = sample_refinements(base, 12, 99);
    const auto b = sample_refinements(base, 12, 99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].partition.head() == b[i].partition.head());
        CHECK(a[i].explicit_tags == b[i].explicit_tags);
        CHECK(is_finer(a[i].partition, base, 32));
        for (std::size_t k = 0; k < a[i].partition.head_size(); ++k) {
            const auto cell = a[i].partition.cell_elements(k);
            const Nat tag = a[i].tag_at(k);
            CHECK(std::find(cell.begin(), cell.end(), tag) != cell.end());
        }
    }
    // a different seed changes the draw
    const auto c = sample_refinements(base, 12, 100);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].partition.head() != c[i].partition.head() ||
            a[i].explicit_tags != c[i].explicit_tags) {
            any_diff = true;
        }
    }
    CHECK(any_diff);
}

TEST_CASE("refinements of singletons are singletons with forced tags") {
    const auto samples = sample_refinements(Partition::singletons(), 3, 5);
    for (const auto& tp : samples) {
        CHECK(same_cells(tp.partition, Partition::singletons(), 32));
        for (std::size_t k = 0; k < 8; ++k) {
            CHECK(tp.tag_at(k) == tp.partition.cell_elements(k).front());
        }
    }
}

TEST_CASE("cells tile the horizon") {
    const Partition p({{5}, {0, 2}}, Partition::TailRule::Blocks, {2, 3});
    std::set<Nat> seen;
    for (std::size_t k = 0; k < 40; ++k) {
        for (Nat n : p.cell_elements(k)) {
            CHECK(seen.insert(n).second);       // pairwise disjoint
            CHECK(p.cell_index_of(n) == k);     // index agrees
        }
    }
    for (Nat n = 0; n < 64; ++n) CHECK(seen.count(n) == 1);
}

TEST_CASE("tags must live in their cells") {
    const Partition p({{0, 1}}, Partition::TailRule::Singletons);
    CHECK_THROWS_AS(TaggedPartition(p, {2}), BadSplit);
    const TaggedPartition ok(p, {1});
    CHECK(ok.tag_at(0) == 1);
    CHECK(ok.tag_at(1) == 2);  // least-element default beyond explicit tags
}
