#include "lpht/transform.hpp"

#include <algorithm>

namespace lpht {

std::pair<int, int> StarForm::block(int level) const {
    auto first = std::ranges::find(level_map, level);
    if (first == level_map.end()) return {1, 0};
    auto last = std::find(level_map.rbegin(), level_map.rend(), level);
    return {static_cast<int>(first - level_map.begin()) + 1, static_cast<int>(level_map.rend() - last)};
}

namespace {

// Sublevel positions (1-based inside the block) of bot and top for each vertex of a level.
struct LevelLayout {
    std::vector<Vertex> order;
    std::vector<int> bot;
    std::vector<int> top;
    int sublevels = 0;
};

StarForm assemble(const LevelGraph& g, const std::vector<LevelLayout>& layouts) {
    int total = 0;
    for (const auto& l : layouts) total += l.sublevels;

    StarForm sf;
    sf.bot.assign(g.vertex_count(), 0);
    sf.top.assign(g.vertex_count(), 0);
    sf.stretch.assign(g.vertex_count(), 0);
    LevelGraph::Builder b(total);

    int base = 0;
    for (std::size_t i = 0; i < layouts.size(); ++i) {
        const auto& layout = layouts[i];
        for (int s = 0; s < layout.sublevels; ++s) sf.level_map.push_back(static_cast<int>(i) + 1);
        for (std::size_t j = 0; j < layout.order.size(); ++j) {
            const Vertex v = layout.order[j];
            sf.bot[v] = b.add_vertex(g.id(v) + "'", base + layout.bot[j]);
            sf.owner.push_back(v);
            sf.top[v] = b.add_vertex(g.id(v) + "''", base + layout.top[j]);
            sf.owner.push_back(v);
        }
        base += layout.sublevels;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        sf.stretch[v] = b.add_edge(sf.bot[v], sf.top[v]);
        sf.edge_source.push_back({true, v});
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        sf.star_edge.push_back(b.add_edge(sf.top[g.edge(e).tail], sf.bot[g.edge(e).head]));
        sf.edge_source.push_back({false, e});
    }
    sf.star = std::move(b).build();
    return sf;
}

}  // namespace

StarForm build_star_level(const ProperLevelGraph& pg) {
    const LevelGraph& g = pg;
    std::vector<LevelLayout> layouts;
    for (int i = 1; i <= g.level_count(); ++i) {
        LevelLayout l;
        auto vs = g.on_level(i);
        const int n = static_cast<int>(vs.size());
        l.order.assign(vs.begin(), vs.end());
        for (int j = 1; j <= n; ++j) {
            l.bot.push_back(j);
            l.top.push_back(n + j);
        }
        l.sublevels = 2 * n;
        layouts.push_back(std::move(l));
    }
    return assemble(g, layouts);
}

RadialStarForm build_star_radial(const ProperLevelGraph& pg, const ReferenceSets& refs) {
    const LevelGraph& g = pg;
    check_reference_sets(g, refs);

    std::vector<LevelLayout> layouts;
    std::vector<int> local_middle;
    for (int i = 1; i <= g.level_count(); ++i) {
        LevelLayout l;
        const Vertex plus = refs.plus(i);
        const Vertex minus = refs.minus(i);
        auto vs = g.on_level(i);
        const int n = static_cast<int>(vs.size());
        if (plus != minus) {
            // v_1 = minus, v_n = plus; stretch of v_j spans j .. n-1+j.
            l.order.push_back(minus);
            for (Vertex v : vs) {
                if (v != plus && v != minus) l.order.push_back(v);
            }
            l.order.push_back(plus);
            for (int j = 1; j <= n; ++j) {
                l.bot.push_back(j);
                l.top.push_back(n - 1 + j);
            }
            l.sublevels = 2 * n - 1;
            local_middle.push_back(n);
        } else {
            // v_1 = the anchor spanning the whole block; sublevel n+1 stays empty.
            l.order.push_back(plus);
            for (Vertex v : vs) {
                if (v != plus) l.order.push_back(v);
            }
            l.bot.push_back(1);
            l.top.push_back(2 * n + 1);
            for (int j = 2; j <= n; ++j) {
                l.bot.push_back(j);
                l.top.push_back(n + j);
            }
            l.sublevels = 2 * n + 1;
            local_middle.push_back(n + 1);
        }
        layouts.push_back(std::move(l));
    }

    RadialStarForm r;
    r.form = assemble(g, layouts);
    r.refs = refs;
    int base = 0;
    for (int i = 1; i <= g.level_count(); ++i) {
        const auto& layout = layouts[static_cast<std::size_t>(i - 1)];
        const int m = base + local_middle[static_cast<std::size_t>(i - 1)];
        r.middle.push_back(m);
        for (int s = 1; s <= layout.sublevels; ++s) {
            const int j = base + s;
            if (j < m) {
                r.beta_minus_owner.push_back(refs.minus(i));
                r.beta_plus_owner.push_back(refs.minus(i));
            } else if (j > m) {
                r.beta_minus_owner.push_back(refs.plus(i));
                r.beta_plus_owner.push_back(refs.plus(i));
            } else {
                // Middle sublevel: the anchor path climbs e(minus) up to here and leaves along e(plus).
                r.beta_minus_owner.push_back(refs.minus(i));
                r.beta_plus_owner.push_back(refs.plus(i));
            }
        }
        base += layout.sublevels;
    }
    return r;
}

namespace {

std::vector<Vertex> origin_map(const StarForm& sf, const ProperizeResult& sub) {
    std::vector<Vertex> origin(sub.graph->vertex_count(), 0);
    for (Vertex v = 0; v < origin.size(); ++v) {
        const auto carrier = sub.vertex_origin[v];
        if (!carrier) {
            origin[v] = sf.owner[v];
            continue;
        }
        const auto& source = sf.edge_source[*carrier];
        if (source.stretch) {
            origin[v] = static_cast<Vertex>(source.index);
            continue;
        }
        const Edge& star = sf.star.edge(*carrier);
        const int here = sf.original_level(sub.graph->level(v));
        origin[v] = here == sf.original_level(sf.star.level(star.tail)) ? sf.owner[star.tail] : sf.owner[star.head];
    }
    return origin;
}

}  // namespace

PlusGraph build_plus(const StarForm& sf) {
    PlusGraph pg;
    pg.sub = properize(sf.star);
    pg.origin = origin_map(sf, pg.sub);
    return pg;
}

PlusGraph build_plus(const RadialStarForm& rsf) {
    PlusGraph pg = build_plus(rsf.form);
    const int k = pg.graph().level_count();
    ReferenceSets b;
    for (int j = 1; j <= k; ++j) {
        const auto idx = static_cast<std::size_t>(j - 1);
        b.alpha_minus.push_back(pg.sub.path_vertex(rsf.form.stretch[rsf.beta_minus_owner[idx]], j));
        b.alpha_plus.push_back(pg.sub.path_vertex(rsf.form.stretch[rsf.beta_plus_owner[idx]], j));
    }
    check_reference_sets(pg.graph(), b);
    pg.references = std::move(b);
    return pg;
}

std::vector<Vertex> path_segment(const PlusGraph& pg, EdgeIndex e, int from, int to) {
    if (from > to) std::swap(from, to);
    std::vector<Vertex> out;
    for (int level = from; level <= to; ++level) out.push_back(pg.sub.path_vertex(e, level));
    return out;
}

}  // namespace lpht
