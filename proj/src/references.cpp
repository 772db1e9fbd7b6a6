#include "lpht/references.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace lpht {

namespace {

void require_nonempty_levels(const LevelGraph& g) {
    if (g.level_count() < 1) throw ReferenceError("reference sets need at least one level");
    for (int i = 1; i <= g.level_count(); ++i) {
        if (g.on_level(i).empty()) throw ReferenceError("level " + std::to_string(i) + " is empty");
    }
}

bool id_less(const LevelGraph& g, const Edge& a, const Edge& b) {
    if (g.id(a.tail) != g.id(b.tail)) return g.id(a.tail) < g.id(b.tail);
    return g.id(a.head) < g.id(b.head);
}

std::vector<Edge> gap_edges(const LevelGraph& g, int gap) {
    std::vector<Edge> out;
    for (Vertex u : g.on_level(gap)) {
        for (EdgeIndex e : g.out_edges(u)) out.push_back(g.edge(e));
    }
    std::ranges::sort(out, [&g](const Edge& a, const Edge& b) { return id_less(g, a, b); });
    return out;
}

// Smallest-id directed path visiting every level, if any.
std::optional<std::vector<Vertex>> full_path(const LevelGraph& g) {
    const int k = g.level_count();
    std::vector<Vertex> path;
    std::vector<std::vector<bool>> dead(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) dead[static_cast<std::size_t>(i - 1)].assign(g.vertex_count(), false);

    std::function<bool(Vertex)> extend = [&](Vertex v) -> bool {
        path.push_back(v);
        if (g.level(v) == k) return true;
        std::vector<Vertex> next;
        for (EdgeIndex e : g.out_edges(v)) next.push_back(g.edge(e).head);
        std::ranges::sort(next, [&g](Vertex a, Vertex b) { return g.id(a) < g.id(b); });
        for (Vertex w : next) {
            if (dead[static_cast<std::size_t>(g.level(w) - 1)][w]) continue;
            if (extend(w)) return true;
            dead[static_cast<std::size_t>(g.level(w) - 1)][w] = true;
        }
        path.pop_back();
        return false;
    };
    for (Vertex v : g.on_level(1)) {
        if (extend(v)) return path;
    }
    return std::nullopt;
}

ReferenceSets from_gap_edges(const LevelGraph& g, const std::vector<Edge>& chosen, std::vector<Edge> inserted) {
    const auto k = static_cast<std::size_t>(g.level_count());
    ReferenceSets r;
    r.alpha_plus.assign(k, 0);
    r.alpha_minus.assign(k, 0);
    r.inserted_edges = std::move(inserted);
    if (k == 1) {
        r.alpha_plus[0] = r.alpha_minus[0] = g.on_level(1).front();
        return r;
    }
    for (std::size_t gap = 0; gap + 1 < k; ++gap) {
        r.alpha_plus[gap] = chosen[gap].tail;
        r.alpha_minus[gap + 1] = chosen[gap].head;
    }
    r.alpha_minus[0] = r.alpha_plus[0];
    r.alpha_plus[k - 1] = r.alpha_minus[k - 1];
    return r;
}

}  // namespace

void check_reference_sets(const LevelGraph& g, const ReferenceSets& refs) {
    require_nonempty_levels(g);
    const auto k = static_cast<std::size_t>(g.level_count());
    if (refs.alpha_plus.size() != k || refs.alpha_minus.size() != k) {
        throw ReferenceError("reference sets must name one vertex per level");
    }
    for (int i = 1; i <= g.level_count(); ++i) {
        for (Vertex v : {refs.plus(i), refs.minus(i)}) {
            if (v >= g.vertex_count() || g.level(v) != i) {
                throw ReferenceError("reference vertex for level " + std::to_string(i) + " is not on that level");
            }
        }
    }
    if (refs.plus(1) != refs.minus(1)) throw ReferenceError("first level must have equal reference vertices");
    if (refs.plus(g.level_count()) != refs.minus(g.level_count())) {
        throw ReferenceError("last level must have equal reference vertices");
    }
    for (int gap = 1; gap < g.level_count(); ++gap) {
        const Edge e = refs.reference_edge(gap);
        if (!g.find_edge(e.tail, e.head)) {
            throw ReferenceError("missing reference edge " + g.id(e.tail) + "->" + g.id(e.head));
        }
    }
}

ProperLevelGraph with_reference_edges(const ProperLevelGraph& g, const ReferenceSets& refs) {
    if (refs.inserted_edges.empty()) return g;
    LevelGraph::Builder b(g->level_count());
    for (Vertex v = 0; v < g->vertex_count(); ++v) b.add_vertex(g->id(v), g->level(v));
    for (const Edge& e : g->edges()) b.add_edge(e.tail, e.head);
    for (const Edge& e : refs.inserted_edges) b.add_edge(e.tail, e.head);
    return ProperLevelGraph(std::move(b).build());
}

ReferenceChoice choose_reference_sets(const ProperLevelGraph& g, std::optional<std::uint64_t> seed) {
    require_nonempty_levels(g);
    const int k = g->level_count();
    std::vector<Edge> chosen;
    std::vector<Edge> inserted;
    std::mt19937_64 rng(seed.value_or(0));

    if (!seed && k > 1) {
        if (auto path = full_path(g)) {
            for (std::size_t i = 0; i + 1 < path->size(); ++i) chosen.push_back({(*path)[i], (*path)[i + 1]});
            auto refs = from_gap_edges(g, chosen, {});
            return {g, refs};
        }
    }

    std::optional<Vertex> anchor;  // head of the previous reference edge
    for (int gap = 1; gap < k; ++gap) {
        auto edges = gap_edges(g, gap);
        Edge pick{};
        if (edges.empty()) {
            auto lower = g->on_level(gap);
            auto upper = g->on_level(gap + 1);
            if (seed) {
                pick = {lower[rng() % lower.size()], upper[rng() % upper.size()]};
            } else {
                pick = {anchor.value_or(lower.front()), upper.front()};
            }
            inserted.push_back(pick);
        } else if (seed) {
            pick = edges[rng() % edges.size()];
        } else {
            auto it = std::ranges::find_if(edges, [&](const Edge& e) { return anchor && e.tail == *anchor; });
            pick = it != edges.end() ? *it : edges.front();
        }
        chosen.push_back(pick);
        anchor = pick.head;
    }
    if (k == 1 && seed) {
        auto level = g->on_level(1);
        ReferenceSets r;
        r.alpha_plus = r.alpha_minus = {level[rng() % level.size()]};
        return {g, r};
    }
    auto refs = from_gap_edges(g, chosen, inserted);
    return {with_reference_edges(g, refs), refs};
}

std::vector<ReferenceChoice> enumerate_reference_sets(const ProperLevelGraph& g, std::size_t limit) {
    require_nonempty_levels(g);
    const int k = g->level_count();
    std::vector<ReferenceChoice> out;
    if (k == 1) {
        for (Vertex v : g->on_level(1)) {
            if (out.size() >= limit) break;
            ReferenceSets r;
            r.alpha_plus = r.alpha_minus = {v};
            out.push_back({g, r});
        }
        return out;
    }

    // Per gap: the candidate edges and whether they would be inserted.
    std::vector<std::vector<Edge>> options;
    std::vector<bool> synthetic;
    for (int gap = 1; gap < k; ++gap) {
        auto edges = gap_edges(g, gap);
        synthetic.push_back(edges.empty());
        if (edges.empty()) {
            for (Vertex u : g->on_level(gap)) {
                for (Vertex w : g->on_level(gap + 1)) edges.push_back({u, w});
            }
        }
        options.push_back(std::move(edges));
    }

    std::vector<std::size_t> pick(options.size(), 0);
    while (out.size() < limit) {
        std::vector<Edge> chosen;
        std::vector<Edge> inserted;
        for (std::size_t gap = 0; gap < options.size(); ++gap) {
            chosen.push_back(options[gap][pick[gap]]);
            if (synthetic[gap]) inserted.push_back(chosen.back());
        }
        auto refs = from_gap_edges(g, chosen, inserted);
        out.push_back({with_reference_edges(g, refs), refs});

        std::size_t gap = 0;
        while (gap < pick.size() && ++pick[gap] == options[gap].size()) pick[gap++] = 0;
        if (gap == pick.size()) break;
    }
    return out;
}

}  // namespace lpht
