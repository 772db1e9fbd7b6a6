#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lpht/corpus.hpp"
#include "lpht/oracle.hpp"
#include "lpht/transform.hpp"
#include "support.hpp"

using namespace lpht;

namespace {

std::set<std::pair<std::string, std::string>> edge_names(const LevelGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Edge& e : g.edges()) out.emplace(g.id(e.tail), g.id(e.head));
    return out;
}

// The owner rule written out independently of the library.
Vertex expected_origin(const StarForm& sf, const PlusGraph& pg, Vertex v) {
    const auto carrier = pg.carrier(v);
    if (!carrier) return sf.owner[v];
    const auto& src = sf.edge_source[*carrier];
    if (src.stretch) return static_cast<Vertex>(src.index);
    const Edge& e = sf.star.edge(*carrier);
    const bool tail_block = sf.original_level(pg.graph().level(v)) == sf.original_level(sf.star.level(e.tail));
    return tail_block ? sf.owner[e.tail] : sf.owner[e.head];
}

}  // namespace

TEST_CASE("level star form of a single edge") {
    const ProperLevelGraph g = testing::proper(2, {{"u", 1}, {"v", 2}}, {{"u", "v"}});
    const StarForm sf = build_star_level(g);
    CHECK(sf.star.level_count() == 4);
    CHECK(edge_names(sf.star) ==
          std::set<std::pair<std::string, std::string>>{{"u'", "u''"}, {"u''", "v'"}, {"v'", "v''"}});
    CHECK(sf.star.level(sf.bot[g->at("u")]) == 1);
    CHECK(sf.star.level(sf.top[g->at("u")]) == 2);
    CHECK(sf.star.level(sf.bot[g->at("v")]) == 3);
    CHECK(sf.level_map == std::vector<int>{1, 1, 2, 2});

    const PlusGraph pg = build_plus(sf);
    CHECK(pg.graph() == sf.star);
    for (const auto& path : pg.sub.paths) CHECK(path.size() == 2);
}

TEST_CASE("level star form sizes") {
    const ProperLevelGraph three = testing::proper(1, {{"a", 1}, {"b", 1}, {"c", 1}}, {});
    CHECK(build_star_level(three).star.level_count() == 6);

    const StarForm sf = build_star_level(testing::k22());
    CHECK(sf.star.level_count() == 8);
    CHECK(sf.star.vertex_count() == 8);
    CHECK(sf.star.edge_count() == 8);
    CHECK(std::ranges::count_if(sf.edge_source, [](const auto& s) { return s.stretch; }) == 4);
    for (int j = 1; j <= 8; ++j) CHECK(sf.star.on_level(j).size() == 1);
    CHECK(sf.block(1) == std::pair{1, 4});
    CHECK(sf.block(2) == std::pair{5, 8});
}

TEST_CASE("every stretch edge of a level crosses the block boundary n_i") {
    std::mt19937_64 rng(2);
    for (int round = 0; round < 50; ++round) {
        const ProperLevelGraph g = random_proper_graph(rng, 3, 4);
        const StarForm sf = build_star_level(g);
        for (int i = 1; i <= g->level_count(); ++i) {
            const int boundary = sf.block(i).first - 1 + static_cast<int>(g->on_level(i).size());
            for (Vertex v : g->on_level(i)) {
                CHECK(sf.star.level(sf.bot[v]) <= boundary);
                CHECK(sf.star.level(sf.top[v]) > boundary);
            }
        }
    }
}

TEST_CASE("radial star form sizes") {
    const ProperLevelGraph g =
        testing::proper(2, {{"a", 1}, {"b", 1}, {"c", 1}, {"x", 2}}, {{"a", "x"}, {"b", "x"}, {"c", "x"}});
    ReferenceSets unequal{{g->at("b"), g->at("x")}, {g->at("a"), g->at("x")}, {}};
    // Level 1: plus == minus forced; make a second level with three vertices and distinct anchors.
    const ProperLevelGraph h = testing::proper(
        3, {{"p", 1}, {"a", 2}, {"b", 2}, {"c", 2}, {"q", 3}}, {{"p", "a"}, {"c", "q"}, {"b", "q"}});
    ReferenceSets distinct{{h->at("p"), h->at("c"), h->at("q")}, {h->at("p"), h->at("a"), h->at("q")}, {}};
    const RadialStarForm r = build_star_radial(h, distinct);
    CHECK(r.form.block(2).second - r.form.block(2).first + 1 == 5);
    const int m = r.middle_of(2);
    CHECK(r.form.star.on_level(m).size() == 2);
    CHECK(r.form.star.level(r.form.top[h->at("a")]) == m);
    CHECK(r.form.star.level(r.form.bot[h->at("c")]) == m);

    ReferenceSets same{{h->at("p"), h->at("b"), h->at("q")}, {h->at("p"), h->at("b"), h->at("q")}, {}};
    const ProperLevelGraph h2 =
        testing::proper(3, {{"p", 1}, {"a", 2}, {"b", 2}, {"c", 2}, {"q", 3}}, {{"p", "b"}, {"b", "q"}, {"a", "q"}});
    const RadialStarForm r2 = build_star_radial(h2, same);
    CHECK(r2.form.block(2).second - r2.form.block(2).first + 1 == 7);
    CHECK(r2.form.star.on_level(r2.middle_of(2)).empty());

    const RadialStarForm p = build_star_radial(testing::path(4), choose_reference_sets(testing::path(4)).refs);
    CHECK(p.form.star.level_count() == 12);
    for (int i = 1; i <= 4; ++i) CHECK(p.form.block(i).second - p.form.block(i).first + 1 == 3);

    CHECK_THROWS_AS(build_star_radial(g, unequal), ReferenceError);
}

TEST_CASE("radial anchors of G+") {
    const ProperLevelGraph h = testing::proper(
        3, {{"p", 1}, {"a", 2}, {"b", 2}, {"c", 2}, {"q", 3}}, {{"p", "a"}, {"c", "q"}, {"b", "q"}});
    ReferenceSets refs{{h->at("p"), h->at("c"), h->at("q")}, {h->at("p"), h->at("a"), h->at("q")}, {}};
    const RadialStarForm r = build_star_radial(h, refs);
    const PlusGraph pg = build_plus(r);
    REQUIRE(pg.references.has_value());
    const ReferenceSets& b = *pg.references;
    const auto [first, last] = r.form.block(2);
    const int m = r.middle_of(2);
    CHECK(b.minus(m) == r.form.top[h->at("a")]);
    CHECK(b.plus(m) == r.form.bot[h->at("c")]);
    for (int j = first; j < m; ++j) CHECK(pg.origin[b.minus(j)] == h->at("a"));
    for (int j = m + 1; j <= last; ++j) CHECK(pg.origin[b.plus(j)] == h->at("c"));
    CHECK_NOTHROW(check_reference_sets(pg.graph(), b));
}

TEST_CASE("origin map follows the owner rule") {
    const ProperLevelGraph g = testing::k22();
    const StarForm sf = build_star_level(g);
    const PlusGraph pg = build_plus(sf);
    REQUIRE(pg.origin.size() == pg.graph().vertex_count());
    for (Vertex v = 0; v < pg.graph().vertex_count(); ++v) {
        CHECK(pg.origin[v] == expected_origin(sf, pg, v));
        CHECK(pg.origin[v] < g->vertex_count());
    }

    std::mt19937_64 rng(9);
    for (int round = 0; round < 50; ++round) {
        const ProperLevelGraph h = random_proper_graph(rng, 3, 3);
        const ReferenceChoice c = choose_reference_sets(h);
        const RadialStarForm r = build_star_radial(c.graph, c.refs);
        const PlusGraph p = build_plus(r);
        for (Vertex v = 0; v < p.graph().vertex_count(); ++v) CHECK(p.origin[v] == expected_origin(r.form, p, v));
        for (int i = 1; i <= h->level_count(); ++i) {
            std::set<Vertex> owners;
            for (Vertex v : p.graph().on_level(r.middle_of(i))) CHECK(owners.insert(p.origin[v]).second);
            // Every stretch edge of level i crosses the middle sublevel.
            for (Vertex v : c.graph->on_level(i)) {
                CHECK(r.form.star.level(r.form.bot[v]) <= r.middle_of(i));
                CHECK(r.form.star.level(r.form.top[v]) >= r.middle_of(i));
            }
        }
    }
}

TEST_CASE("path_segment") {
    const ProperLevelGraph g = testing::k22();
    const StarForm sf = build_star_level(g);
    const PlusGraph pg = build_plus(sf);
    const EdgeIndex e = sf.stretch[g->at("a")];
    const int lo = sf.star.level(sf.bot[g->at("a")]);
    const int hi = sf.star.level(sf.top[g->at("a")]);
    CHECK(path_segment(pg, e, lo, lo) == std::vector<Vertex>{sf.bot[g->at("a")]});
    CHECK(path_segment(pg, e, lo, hi) == pg.sub.paths[e]);
    const auto middle = path_segment(pg, e, lo + 1, hi - 1);
    REQUIRE(middle.size() == static_cast<std::size_t>(hi - lo - 1));
    for (std::size_t i = 0; i < middle.size(); ++i) {
        CHECK(pg.graph().level(middle[i]) == lo + 1 + static_cast<int>(i));
        CHECK(pg.sub.paths[e][i + 1] == middle[i]);
    }
    CHECK_THROWS_AS(path_segment(pg, e, lo, hi + 1), GraphError);
}

TEST_CASE("G, G* and G+ get the same oracle verdicts") {
    std::size_t compared = 0;
    for (const ProperLevelGraph& g : exhaustive_corpus({2, 2, 1000})) {
        const StarForm sf = build_star_level(g);
        const PlusGraph pg = build_plus(sf);
        if (level_state_space(pg.graph()) > 2'000'000) continue;
        const bool planar = brute_level(g).planar;
        CHECK(brute_level(ProperLevelGraph(pg.graph()), 2'000'000).planar == planar);
        ++compared;
    }
    CHECK(compared > 10);

    std::size_t radial = 0;
    for (const ProperLevelGraph& g : exhaustive_corpus({2, 2, 1000})) {
        const ReferenceChoice c = choose_reference_sets(g);
        const RadialStarForm r = build_star_radial(c.graph, c.refs);
        const PlusGraph pg = build_plus(r);
        if (radial_state_space(pg.graph(), *pg.references) > 2'000'000) continue;
        const bool planar = brute_radial(c.graph, c.refs).planar;
        CHECK(brute_radial(pg.proper(), *pg.references, 2'000'000).planar == planar);
        ++radial;
    }
    CHECK(radial > 10);
}
