#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lpht/corpus.hpp"
#include "lpht/oracle.hpp"
#include "lpht/render.hpp"
#include "support.hpp"

using namespace lpht;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

std::size_t marks(const std::string& svg) { return count(svg, "stroke=\"red\""); }

std::string golden(const std::string& name) {
    std::ifstream in(std::string(LPHT_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("level SVG of a path matches the golden file") {
    const ProperLevelGraph p = testing::path(3);
    const std::string svg = render_level_svg(p, *brute_level(p).witness);
    CHECK(svg == golden("path3_level.svg"));
    CHECK(marks(svg) == 0);
    CHECK(count(svg, "<text") == 3);
}

TEST_CASE("crossed K2,2 matches the golden file") {
    const ProperLevelGraph g = testing::k22();
    const LevelDrawing d{{{g->at("a"), g->at("b")}, {g->at("c"), g->at("d")}}};
    const std::string svg = render_level_svg(g, d);
    CHECK(svg == golden("k22_level.svg"));
    CHECK(marks(svg) == 1);
}

TEST_CASE("two long edges swapped on both gaps show two crossings") {
    const LevelGraph h = testing::graph(3, {{"a", 1}, {"b", 1}, {"c", 3}, {"d", 3}}, {{"a", "c"}, {"b", "d"}});
    const ProperizeResult sub = properize(h);
    const LevelGraph& s = sub.graph;
    const LevelDrawing d{{{s.at("a"), s.at("b")}, {s.at("b~d~2"), s.at("a~c~2")}, {s.at("c"), s.at("d")}}};
    CHECK(marks(render_level_svg(sub.graph, d)) == 2);
}

TEST_CASE("radial K2,2 oracle witness has no crossings") {
    const ReferenceChoice c = choose_reference_sets(testing::k22());
    const auto r = brute_radial(c.graph, c.refs);
    REQUIRE(r.planar);
    const std::string svg = render_radial_svg(c.graph, c.refs, *r.witness);
    CHECK(marks(svg) == 0);
    CHECK(count(svg, "<text") == 4);
}

TEST_CASE("one mark per counted crossing") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 100; ++round) {
        const ProperLevelGraph g = random_proper_graph(rng, 3, 4);
        const LevelDrawing ld = random_level_drawing(g, rng);
        CHECK(marks(render_level_svg(g, ld)) == count_crossings_level(ld, g).total());
        const ReferenceChoice c = choose_reference_sets(g);
        const RadialDrawing rd = random_radial_drawing(c.graph, c.refs, rng);
        CHECK(marks(render_radial_svg(c.graph, c.refs, rd)) == count_crossings_radial(rd, c.graph, c.refs).total());
    }
}

TEST_CASE("ids are escaped") {
    const ProperLevelGraph g = testing::proper(1, {{"a<b", 1}}, {});
    const std::string svg = render_level_svg(g, LevelDrawing{{{0}}});
    CHECK(svg.find("a&lt;b") != std::string::npos);
}
