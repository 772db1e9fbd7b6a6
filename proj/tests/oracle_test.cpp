#include <doctest.h>

#include <random>

#include "lpht/corpus.hpp"
#include "lpht/oracle.hpp"
#include "support.hpp"

using namespace lpht;

TEST_CASE("paths are planar in both modes") {
    for (int k = 1; k <= 4; ++k) {
        const ProperLevelGraph p = testing::path(k);
        const auto r = brute_level(p);
        CHECK(r.planar);
        CHECK(r.states == 1);
        REQUIRE(r.witness.has_value());
        CHECK(count_crossings_level(*r.witness, p).planar());
        const ReferenceChoice c = choose_reference_sets(p);
        CHECK(brute_radial(c.graph, c.refs).planar);
    }
}

TEST_CASE("K2,2") {
    const ProperLevelGraph g = testing::k22();
    const auto level = brute_level(g);
    CHECK_FALSE(level.planar);
    CHECK_FALSE(level.witness.has_value());
    CHECK(level.states == 4);

    const ReferenceChoice c = choose_reference_sets(g);
    const auto radial = brute_radial(c.graph, c.refs);
    CHECK(radial.planar);
    REQUIRE(radial.witness.has_value());
    CHECK_NOTHROW(check_drawing(c.graph, c.refs, *radial.witness));
    CHECK(count_crossings_radial(*radial.witness, c.graph, c.refs).planar());
}

TEST_CASE("disjoint edges") {
    const ProperLevelGraph g = testing::proper(2, {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}}, {{"a", "d"}, {"b", "c"}});
    const auto r = brute_level(g);
    CHECK(r.planar);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->order[0].size() == 2);
}

TEST_CASE("rows are searched in full when insertion order differs from id order") {
    // Inserted b, a, d, c: ids sort against index order on both levels.
    const ProperLevelGraph g = testing::proper(2, {{"b", 1}, {"a", 1}, {"d", 2}, {"c", 2}}, {{"a", "d"}, {"b", "c"}});
    CHECK(brute_level(g).planar);
    const ReferenceChoice c = choose_reference_sets(g);
    CHECK(brute_radial(c.graph, c.refs).planar);
}

TEST_CASE("state space sizes") {
    CHECK(level_state_space(testing::k22()) == 4);
    CHECK(level_state_space(testing::proper(1, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}, {})) == 24);
    const ProperLevelGraph g = testing::proper(2, {{"a", 1}, {"b", 1}, {"c", 1}, {"x", 2}}, {{"a", "x"}, {"b", "x"}, {"c", "x"}});
    const ReferenceChoice c = choose_reference_sets(g);
    // Two cyclic orders on level 1, two flagged edges at x besides the reference edge.
    CHECK(radial_state_space(c.graph, c.refs) == 2 * 4);
}

TEST_CASE("budget") {
    const ProperLevelGraph g = testing::proper(1, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}, {});
    CHECK_THROWS_AS(brute_level(g, 23), BudgetExceeded);
    CHECK_NOTHROW(brute_level(g, 24));
    try {
        brute_level(g, 5);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required == 24);
        CHECK(e.budget == 5);
    }
}

TEST_CASE("level planar implies radial planar, for every reference choice") {
    for (const ProperLevelGraph& g : exhaustive_corpus({3, 2, 3000})) {
        const bool level = brute_level(g).planar;
        std::optional<bool> radial;
        for (const ReferenceChoice& c : enumerate_reference_sets(g, 4)) {
            const bool r = brute_radial(c.graph, c.refs).planar;
            if (radial) CHECK(*radial == r);
            radial = r;
        }
        REQUIRE(radial.has_value());
        if (level) CHECK(*radial);
    }
}

TEST_CASE("verdicts do not depend on labels") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 300; ++round) {
        const ProperLevelGraph g = random_proper_graph(rng, 3, 3);
        const ProperLevelGraph h = shuffled_copy(g, rng);
        CHECK(brute_level(g).planar == brute_level(h).planar);
        const ReferenceChoice cg = choose_reference_sets(g);
        const ReferenceChoice ch = choose_reference_sets(h);
        CHECK(brute_radial(cg.graph, cg.refs).planar == brute_radial(ch.graph, ch.refs).planar);
    }
}

TEST_CASE("witnesses have no crossings") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 200; ++round) {
        const ProperLevelGraph g = random_proper_graph(rng, 4, 3, 0.4);
        if (const auto r = brute_level(g); r.planar) {
            CHECK_NOTHROW(check_drawing(g, *r.witness));
            CHECK(count_crossings_level(*r.witness, g).planar());
        }
        const ReferenceChoice c = choose_reference_sets(g);
        if (const auto r = brute_radial(c.graph, c.refs); r.planar) {
            CHECK_NOTHROW(check_drawing(c.graph, c.refs, *r.witness));
            CHECK(count_crossings_radial(*r.witness, c.graph, c.refs).planar());
        }
    }
}
