#pragma once

#include <initializer_list>
#include <string>
#include <utility>

#include "lpht/graph.hpp"

namespace testing {

using VertexList = std::initializer_list<std::pair<const char*, int>>;
using EdgeList = std::initializer_list<std::pair<const char*, const char*>>;

inline lpht::GraphDescription describe(int levels, VertexList vertices, EdgeList edges) {
    lpht::GraphDescription d;
    d.levels = levels;
    for (const auto& [id, level] : vertices) d.vertices.emplace_back(id, level);
    for (const auto& [t, h] : edges) d.edges.emplace_back(t, h);
    return d;
}

inline lpht::LevelGraph graph(int levels, VertexList vertices, EdgeList edges) {
    return lpht::LevelGraph::from_description(describe(levels, vertices, edges));
}

inline lpht::ProperLevelGraph proper(int levels, VertexList vertices, EdgeList edges) {
    return lpht::ProperLevelGraph(graph(levels, vertices, edges));
}

inline lpht::ProperLevelGraph k22() {
    return proper(2, {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

inline lpht::ProperLevelGraph path(int k) {
    lpht::LevelGraph::Builder b(k);
    lpht::Vertex prev = 0;
    for (int i = 1; i <= k; ++i) {
        const lpht::Vertex v = b.add_vertex("p" + std::to_string(i), i);
        if (i > 1) b.add_edge(prev, v);
        prev = v;
    }
    return lpht::ProperLevelGraph(std::move(b).build());
}

}  // namespace testing
