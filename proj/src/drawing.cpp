#include "lpht/drawing.hpp"

#include <algorithm>
#include <limits>

namespace lpht {

std::size_t CrossingReport::count(EdgeIndex e, EdgeIndex f) const {
    auto it = per_pair.find({std::min(e, f), std::max(e, f)});
    return it == per_pair.end() ? 0 : it->second;
}

std::size_t CrossingReport::total() const {
    std::size_t sum = 0;
    for (const auto& [pair, c] : per_pair) sum += c;
    return sum;
}

namespace {

// Position of every vertex within its level order.
std::vector<std::size_t> positions(const LevelGraph& g, const std::vector<std::vector<Vertex>>& order) {
    if (order.size() != static_cast<std::size_t>(g.level_count())) {
        throw DrawingError("drawing has " + std::to_string(order.size()) + " levels, graph has " +
                           std::to_string(g.level_count()));
    }
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> pos(g.vertex_count(), unset);
    for (int i = 1; i <= g.level_count(); ++i) {
        const auto& row = order[static_cast<std::size_t>(i - 1)];
        if (row.size() != g.on_level(i).size()) {
            throw DrawingError("level " + std::to_string(i) + " order has the wrong size");
        }
        for (std::size_t p = 0; p < row.size(); ++p) {
            const Vertex v = row[p];
            if (v >= g.vertex_count() || g.level(v) != i || pos[v] != unset) {
                throw DrawingError("level " + std::to_string(i) + " order is not a permutation of the level");
            }
            pos[v] = p;
        }
    }
    return pos;
}

std::vector<EdgeIndex> gap_edges(const LevelGraph& g, int gap) {
    std::vector<EdgeIndex> out;
    for (Vertex u : g.on_level(gap)) {
        for (EdgeIndex e : g.out_edges(u)) out.push_back(e);
    }
    return out;
}

bool adjacent(const Edge& a, const Edge& b) {
    return a.tail == b.tail || a.tail == b.head || a.head == b.tail || a.head == b.head;
}

void add_crossing(CrossingReport& r, EdgeIndex e, EdgeIndex f) { ++r.per_pair[{std::min(e, f), std::max(e, f)}]; }

std::vector<Edge> flagged_edges(const LevelGraph& g, const ReferenceSets& refs) {
    std::vector<Edge> out;
    for (int gap = 1; gap < g.level_count(); ++gap) {
        const GapEdges ge = classify_gap(g, refs, gap);
        for (EdgeIndex e : ge.plus) out.push_back(g.edge(e));
        for (EdgeIndex e : ge.minus) out.push_back(g.edge(e));
    }
    return out;
}

}  // namespace

void check_drawing(const LevelGraph& g, const LevelDrawing& d) { positions(g, d.order); }

void check_drawing(const LevelGraph& g, const ReferenceSets& refs, const RadialDrawing& d) {
    positions(g, d.order);
    check_reference_sets(g, refs);
    const auto expected = flagged_edges(g, refs);
    if (expected.size() != d.left.size()) {
        throw DrawingError("drawing has " + std::to_string(d.left.size()) + " flags, expected " +
                           std::to_string(expected.size()));
    }
    for (const Edge& e : expected) {
        if (!d.left.contains(e)) throw DrawingError("missing flag for edge " + g.id(e.tail) + "->" + g.id(e.head));
    }
}

std::vector<EdgePair> verify_hanani_tutte(const CrossingReport& report, const LevelGraph& g) {
    std::vector<EdgePair> out;
    for (const auto& [pair, c] : report.per_pair) {
        if (c % 2 == 1 && g.independent(pair.first, pair.second)) out.push_back(pair);
    }
    return out;
}

CrossingReport count_crossings_level(const LevelDrawing& d, const ProperLevelGraph& pg) {
    const LevelGraph& g = pg;
    const auto pos = positions(g, d.order);
    CrossingReport r;
    for (int gap = 1; gap < g.level_count(); ++gap) {
        const auto edges = gap_edges(g, gap);
        for (std::size_t p = 0; p < edges.size(); ++p) {
            for (std::size_t q = p + 1; q < edges.size(); ++q) {
                const Edge& a = g.edge(edges[p]);
                const Edge& b = g.edge(edges[q]);
                if (adjacent(a, b)) continue;
                if ((pos[a.tail] < pos[b.tail]) != (pos[a.head] < pos[b.head])) add_crossing(r, edges[p], edges[q]);
            }
        }
    }
    r.ht_violations = verify_hanani_tutte(r, g);
    return r;
}

CrossingReport count_crossings_radial(const RadialDrawing& d, const ProperLevelGraph& pg, const ReferenceSets& refs) {
    const LevelGraph& g = pg;
    check_drawing(g, refs, d);
    const auto pos = positions(g, d.order);
    // Offset of v from the cut right after `anchor`, going clockwise.
    auto cut = [&](Vertex anchor, Vertex v) {
        const auto n = static_cast<long long>(g.on_level(g.level(v)).size());
        return (static_cast<long long>(pos[v]) - static_cast<long long>(pos[anchor]) - 1 + 2 * n) % n;
    };
    constexpr long long far = std::numeric_limits<long long>::max() / 4;

    CrossingReport r;
    for (int gap = 1; gap < g.level_count(); ++gap) {
        const Edge ref = refs.reference_edge(gap);
        struct Strip {
            EdgeIndex index;
            long long bottom;
            long long top;
        };
        std::vector<Strip> strips;
        for (EdgeIndex e : gap_edges(g, gap)) {
            const Edge& edge = g.edge(e);
            if (edge == ref) continue;
            Strip s{e, cut(ref.tail, edge.tail), cut(ref.head, edge.head)};
            if (edge.tail == ref.tail) s.bottom = d.left.at(edge) ? far : -far;
            if (edge.head == ref.head) s.top = d.left.at(edge) ? far : -far;
            strips.push_back(s);
        }
        for (std::size_t p = 0; p < strips.size(); ++p) {
            for (std::size_t q = p + 1; q < strips.size(); ++q) {
                const Strip& a = strips[p];
                const Strip& b = strips[q];
                if (adjacent(g.edge(a.index), g.edge(b.index))) continue;
                if ((a.bottom < b.bottom) != (a.top < b.top)) add_crossing(r, a.index, b.index);
            }
        }
    }
    r.ht_violations = verify_hanani_tutte(r, g);
    return r;
}

CrossingReport aggregate(const CrossingReport& fine, const ProperizeResult& sub, const LevelGraph& source) {
    CrossingReport r;
    for (const auto& [pair, c] : fine.per_pair) {
        const EdgeIndex e = sub.edge_origin[pair.first];
        const EdgeIndex f = sub.edge_origin[pair.second];
        if (e == f) continue;
        r.per_pair[{std::min(e, f), std::max(e, f)}] += c;
    }
    r.ht_violations = verify_hanani_tutte(r, source);
    return r;
}

bool clockwise(const std::vector<Vertex>& cyclic, Vertex a, Vertex b, Vertex c) {
    const auto n = static_cast<long long>(cyclic.size());
    auto at = [&](Vertex v) { return static_cast<long long>(std::ranges::find(cyclic, v) - cyclic.begin()); };
    const long long pa = at(a);
    const long long pb = at(b);
    const long long pc = at(c);
    if (pa == n || pb == n || pc == n) throw DrawingError("vertex missing from cyclic order");
    return (pb - pa + n) % n < (pc - pa + n) % n;
}

Assignment induced_assignment(const ConstraintSystem& s, const LevelGraph& g, const LevelDrawing& d) {
    const auto pos = positions(g, d.order);
    Assignment a;
    for (const BoolVar& v : s.variables()) {
        if (v.kind != BoolVar::Kind::PairOrder) throw DrawingError("level drawings only decide pair variables");
        a.value.push_back(pos[v.a] < pos[v.b] ? 1 : 0);
    }
    return a;
}

Assignment induced_assignment(const ConstraintSystem& s, const LevelGraph& g, const RadialDrawing& d) {
    const auto pos = positions(g, d.order);
    Assignment a;
    for (const BoolVar& v : s.variables()) {
        switch (v.kind) {
            case BoolVar::Kind::TripleOrder: {
                const auto n = static_cast<long long>(g.on_level(g.level(v.a)).size());
                const auto pa = static_cast<long long>(pos[v.a]);
                const auto db = (static_cast<long long>(pos[v.b]) - pa + n) % n;
                const auto dc = (static_cast<long long>(pos[v.c]) - pa + n) % n;
                a.value.push_back(db < dc ? 1 : 0);
                break;
            }
            case BoolVar::Kind::LeftFlag: {
                auto it = d.left.find(Edge{v.a, v.b});
                if (it == d.left.end()) throw DrawingError("missing flag for edge " + g.id(v.a) + "->" + g.id(v.b));
                a.value.push_back(it->second ? 1 : 0);
                break;
            }
            case BoolVar::Kind::PairOrder:
                throw DrawingError("radial drawings do not decide pair variables");
        }
    }
    return a;
}

namespace {

void require_satisfying(const ConstraintSystem& s, const Assignment& a, const char* what) {
    const auto violations = evaluate(s, a);
    if (!violations.empty()) {
        throw AssignmentError(std::string(what) + " violates " + std::to_string(violations.size()) + " constraint(s)");
    }
}

void require_hanani_tutte(const CrossingReport& star_report, const LevelGraph& star) {
    const auto odd = verify_hanani_tutte(star_report, star);
    if (!odd.empty()) {
        const auto [e, f] = odd.front();
        throw NotHananiTutte("edges " + star.edge_name(e) + " and " + star.edge_name(f) + " cross an odd number of times",
                             e,
                             f);
    }
}

EdgeIndex source_edge(const StarForm& sf, EdgeIndex star_edge) {
    const auto& src = sf.edge_source[star_edge];
    if (src.stretch) throw DrawingError("expected a subdivided edge, found a stretch edge");
    return src.index;
}

}  // namespace

LevelStructures make_level_structures(const ProperLevelGraph& g) {
    LevelStructures ls{g, build_star_level(g), {}, build_level_reduced(g), {}};
    ls.plus = build_plus(ls.star);
    ls.plus_system = build_level_reduced(ls.plus.proper());
    return ls;
}

Assignment lift_assignment_level(const LevelStructures& ls, const Assignment& phi) {
    require_satisfying(ls.system, phi, "assignment");
    const LevelGraph& g = ls.graph;
    Assignment out;
    for (const BoolVar& v : ls.plus_system.variables()) {
        const Vertex a = ls.plus.origin[v.a];
        const Vertex b = ls.plus.origin[v.b];
        if (a != b) {
            out.value.push_back(phi.get(ls.system, BoolVar::pair(a, b)));
            continue;
        }
        // Same owner: two edges leaving it or two edges entering it.
        const Edge& e = g.edge(source_edge(ls.star, *ls.plus.carrier(v.a)));
        const Edge& f = g.edge(source_edge(ls.star, *ls.plus.carrier(v.b)));
        if (e.tail == f.tail) {
            out.value.push_back(phi.get(ls.system, BoolVar::pair(e.head, f.head)));
        } else {
            out.value.push_back(phi.get(ls.system, BoolVar::pair(e.tail, f.tail)));
        }
    }
    return out;
}

LevelSynthesis drawing_from_assignment_level(const LevelStructures& ls, const Assignment& phi_plus) {
    require_satisfying(ls.plus_system, phi_plus, "lifted assignment");
    const LevelGraph& gp = ls.plus.graph();
    LevelSynthesis out;
    for (int j = 1; j <= gp.level_count(); ++j) {
        const auto level = gp.on_level(j);
        auto pivot = std::ranges::find_if(level, [&](Vertex v) { return !ls.plus.carrier(v); });
        if (pivot == level.end()) throw DrawingError("sublevel " + std::to_string(j) + " has no star-form vertex");
        std::vector<Vertex> left;
        std::vector<Vertex> right;
        for (Vertex w : level) {
            if (w == *pivot) continue;
            (phi_plus.get(ls.plus_system, BoolVar::pair(*pivot, w)) ? right : left).push_back(w);
        }
        left.push_back(*pivot);
        left.insert(left.end(), right.begin(), right.end());
        out.plus_drawing.order.push_back(std::move(left));
    }
    const auto fine = count_crossings_level(out.plus_drawing, ls.plus.proper());
    out.star_report = aggregate(fine, ls.plus.sub, ls.star.star);
    return out;
}

LevelExtraction assignment_from_drawing_level(const LevelStructures& ls, const LevelDrawing& plus_drawing) {
    const auto fine = count_crossings_level(plus_drawing, ls.plus.proper());
    const auto star_report = aggregate(fine, ls.plus.sub, ls.star.star);
    require_hanani_tutte(star_report, ls.star.star);

    const LevelGraph& gp = ls.plus.graph();
    const LevelGraph& star = ls.star.star;
    const auto pos = positions(gp, plus_drawing.order);
    auto psi = [&](Vertex p, Vertex q) -> std::uint8_t { return pos[p] < pos[q] ? 1 : 0; };

    LevelExtraction out;
    for (const BoolVar& v : ls.plus_system.variables()) {
        const auto ce = ls.plus.carrier(v.a);
        const auto cf = ls.plus.carrier(v.b);
        if (!ce || !cf) {
            out.phi_plus.value.push_back(psi(v.a, v.b));
            continue;
        }
        const Edge& e = star.edge(*ce);
        const Edge& f = star.edge(*cf);
        int at = 0;
        if (!adjacent(e, f)) {
            const Limits lim = limits(star, CriticalPair{*ce, *cf}, ls.plus.sub);
            out.phi_plus.value.push_back(psi(lim.u_prime, lim.w_prime));
            continue;
        }
        if (e.tail == f.tail) {
            at = std::min(star.level(e.head), star.level(f.head));
        } else if (e.head == f.head) {
            at = std::max(star.level(e.tail), star.level(f.tail));
        } else {
            throw DrawingError("edges " + star.edge_name(*ce) + " and " + star.edge_name(*cf) + " share no level");
        }
        out.phi_plus.value.push_back(psi(ls.plus.sub.path_vertex(*ce, at), ls.plus.sub.path_vertex(*cf, at)));
    }

    for (const BoolVar& v : ls.system.variables()) {
        const EdgeIndex su = ls.star.stretch[v.a];
        const EdgeIndex sw = ls.star.stretch[v.b];
        const int at = std::max(star.level(ls.star.bot[v.a]), star.level(ls.star.bot[v.b]));
        const Vertex p = ls.plus.sub.path_vertex(su, at);
        const Vertex q = ls.plus.sub.path_vertex(sw, at);
        out.phi.value.push_back(out.phi_plus.get(ls.plus_system, BoolVar::pair(p, q)));
    }
    return out;
}

RadialStructures make_radial_structures(const ProperLevelGraph& g, const ReferenceSets& refs) {
    RadialStructures rs{g, refs, build_star_radial(g, refs), {}, build_radial_reduced(g, refs), {}};
    rs.plus = build_plus(rs.star);
    rs.plus_system = build_radial_reduced(rs.plus.proper(), rs.plus_refs());
    return rs;
}

namespace {

// Clockwise order of the reference edge, e and f in the gap they share, read from phi.
bool psi_order(const RadialStructures& rs, const Assignment& phi, const Edge& e, const Edge& f) {
    const LevelGraph& g = rs.graph;
    const Edge ref = rs.refs.reference_edge(g.level(e.tail));
    const Vertex a = ref.tail;
    const Vertex b = ref.head;
    auto value = [&](const BoolVar& v) { return phi.get(rs.system, v); };

    std::optional<bool> result;
    auto offer = [&](bool x) {
        if (result && *result != x) {
            throw DrawingError("inconsistent order for edges " + g.id(e.tail) + "->" + g.id(e.head) + " and " +
                               g.id(f.tail) + "->" + g.id(f.head));
        }
        result = x;
    };
    if (a != e.tail && a != f.tail && e.tail != f.tail) offer(value(BoolVar::triple(a, e.tail, f.tail)));
    if (b != e.head && b != f.head && e.head != f.head) offer(value(BoolVar::triple(b, e.head, f.head)));
    if ((a == f.tail && f.tail != e.tail) || (b == f.head && f.head != e.head)) offer(value(BoolVar::left(f)));
    if ((a == e.tail && e.tail != f.tail) || (b == e.head && e.head != f.head)) offer(!value(BoolVar::left(e)));
    if (!result) throw DrawingError("no rule orders edges " + g.id(e.tail) + "->" + g.id(e.head));
    return *result;
}

}  // namespace

Assignment lift_assignment_radial(const RadialStructures& rs, const Assignment& phi) {
    require_satisfying(rs.system, phi, "assignment");
    const LevelGraph& g = rs.graph;
    const auto& origin = rs.plus.origin;
    Assignment out;
    for (const BoolVar& v : rs.plus_system.variables()) {
        if (v.kind == BoolVar::Kind::LeftFlag) {
            out.value.push_back(phi.get(rs.system, BoolVar::left(Edge{origin[v.a], origin[v.b]})));
            continue;
        }
        const Vertex x = origin[v.a];
        const Vertex y = origin[v.b];
        const Vertex z = origin[v.c];
        if (x != y && y != z && x != z) {
            out.value.push_back(phi.get(rs.system, BoolVar::triple(x, y, z)));
            continue;
        }
        if (y != z) throw DrawingError("anchor shares its origin with another vertex of its sublevel");
        const Edge& e = g.edge(source_edge(rs.star.form, *rs.plus.carrier(v.b)));
        const Edge& f = g.edge(source_edge(rs.star.form, *rs.plus.carrier(v.c)));
        out.value.push_back(psi_order(rs, phi, e, f) ? 1 : 0);
    }
    return out;
}

RadialSynthesis drawing_from_assignment_radial(const RadialStructures& rs, const Assignment& phi_plus) {
    require_satisfying(rs.plus_system, phi_plus, "lifted assignment");
    const LevelGraph& gp = rs.plus.graph();
    const ReferenceSets& b = rs.plus_refs();
    auto value = [&](const BoolVar& v) { return phi_plus.get(rs.plus_system, v); };

    RadialSynthesis out;
    for (int j = 1; j <= gp.level_count(); ++j) {
        const auto level = gp.on_level(j);
        const Vertex minus = b.minus(j);
        const Vertex plus = b.plus(j);
        std::vector<Vertex> order{minus};
        std::vector<Vertex> rest;
        if (j == rs.star.middle_of(rs.star.form.original_level(j))) {
            if (minus == plus) {
                order.assign(level.begin(), level.end());
            } else {
                for (Vertex v : level) {
                    if (v == minus || v == plus) continue;
                    (value(BoolVar::triple(minus, v, plus)) ? order : rest).push_back(v);
                }
                order.push_back(plus);
            }
        } else {
            auto xi = std::ranges::find_if(level, [&](Vertex v) { return !rs.plus.carrier(v); });
            if (xi == level.end()) throw DrawingError("sublevel " + std::to_string(j) + " has no star-form vertex");
            if (*xi == minus) {
                order.assign(level.begin(), level.end());
            } else {
                for (Vertex v : level) {
                    if (v == minus || v == *xi) continue;
                    (value(BoolVar::triple(minus, *xi, v)) ? rest : order).push_back(v);
                }
                order.push_back(*xi);
            }
        }
        order.insert(order.end(), rest.begin(), rest.end());
        out.plus_drawing.order.push_back(std::move(order));
    }
    for (std::size_t i = 0; i < rs.plus_system.variables().size(); ++i) {
        const BoolVar& v = rs.plus_system.variables()[i];
        if (v.kind == BoolVar::Kind::LeftFlag) out.plus_drawing.left[Edge{v.a, v.b}] = phi_plus.at(i);
    }
    const auto fine = count_crossings_radial(out.plus_drawing, rs.plus.proper(), b);
    out.star_report = aggregate(fine, rs.plus.sub, rs.star.form.star);
    return out;
}

Assignment assignment_from_drawing_radial(const RadialStructures& rs, const RadialDrawing& plus_drawing) {
    const LevelGraph& gp = rs.plus.graph();
    const LevelGraph& star = rs.star.form.star;
    const ReferenceSets& b = rs.plus_refs();
    const auto fine = count_crossings_radial(plus_drawing, rs.plus.proper(), b);
    const auto star_report = aggregate(fine, rs.plus.sub, star);
    require_hanani_tutte(star_report, star);

    // Crossings between two star edges, as (gap, count) per segment pair.
    std::map<EdgePair, std::vector<std::pair<int, std::size_t>>> by_gap;
    for (const auto& [pair, c] : fine.per_pair) {
        const EdgeIndex e = rs.plus.sub.edge_origin[pair.first];
        const EdgeIndex f = rs.plus.sub.edge_origin[pair.second];
        if (e == f) continue;
        by_gap[{std::min(e, f), std::max(e, f)}].emplace_back(gp.level(gp.edge(pair.first).tail), c);
    }
    // Crossings of two star edges below sublevel j, plus one for an odd pair sharing a tail.
    auto pcr = [&](std::optional<EdgeIndex> e, std::optional<EdgeIndex> f, int j) -> std::size_t {
        if (!e || !f || *e == *f) return 0;
        std::size_t sum = 0;
        auto it = by_gap.find({std::min(*e, *f), std::max(*e, *f)});
        if (it != by_gap.end()) {
            for (const auto& [gap, c] : it->second) {
                if (gap < j) sum += c;
            }
        }
        if (star.edge(*e).tail == star.edge(*f).tail && star_report.count(*e, *f) % 2 == 1) ++sum;
        return sum;
    };

    Assignment psi = induced_assignment(rs.plus_system, gp, plus_drawing);
    Assignment out;
    const auto vars = rs.plus_system.variables();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const BoolVar& v = vars[i];
        std::size_t flip = 0;
        if (v.kind == BoolVar::Kind::TripleOrder) {
            const int j = gp.level(v.a);
            const auto ex = rs.plus.carrier(v.a);
            const auto ey = rs.plus.carrier(v.b);
            const auto ez = rs.plus.carrier(v.c);
            flip = pcr(ex, ey, j) + pcr(ex, ez, j) + pcr(ey, ez, j);
        } else {
            const int j = gp.level(v.a);
            const Edge ref = b.reference_edge(j);
            const EdgeIndex e = rs.plus.sub.edge_origin[*gp.find_edge(v.a, v.b)];
            const EdgeIndex r = rs.plus.sub.edge_origin[*gp.find_edge(ref.tail, ref.head)];
            if (e != r) flip = star_report.count(e, r);
        }
        out.value.push_back(static_cast<std::uint8_t>((psi.at(i) + flip) % 2));
    }
    return out;
}

std::vector<CriticalPair> limit_parity_mismatches(const LevelGraph& source,
                                                  const ProperizeResult& sub,
                                                  const LevelDrawing& d) {
    const LevelGraph& g = sub.graph;
    const CrossingReport star = aggregate(count_crossings_level(d, sub.graph), sub, source);
    std::vector<std::size_t> pos(g.vertex_count());
    for (const auto& row : d.order) {
        for (std::size_t p = 0; p < row.size(); ++p) pos[row[p]] = p;
    }
    std::vector<CriticalPair> out;
    for (const CriticalPair& pair : critical_pairs(source)) {
        const Limits lim = limits(source, pair, sub);
        const bool agree = (pos[lim.u_prime] < pos[lim.w_prime]) == (pos[lim.v_prime] < pos[lim.x_prime]);
        if (agree != (star.count(pair.e, pair.f) % 2 == 0)) out.push_back(pair);
    }
    return out;
}

bool three_curves_consistent(const LevelGraph& g,
                             const RadialDrawing& d,
                             const CrossingReport& fine,
                             const std::array<std::vector<Vertex>, 3>& paths,
                             int lo,
                             int hi) {
    auto at = [&](const std::vector<Vertex>& path, int level) {
        const int offset = level - g.level(path.front());
        if (offset < 0 || offset >= static_cast<int>(path.size())) throw DrawingError("path does not reach level");
        return path[static_cast<std::size_t>(offset)];
    };
    auto segment = [&](const std::vector<Vertex>& path, int gap) {
        auto e = g.find_edge(at(path, gap), at(path, gap + 1));
        if (!e) throw DrawingError("path is not a path of the graph");
        return *e;
    };
    std::size_t crossings = 0;
    for (int gap = lo; gap < hi; ++gap) {
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) crossings += fine.count(segment(paths[i], gap), segment(paths[j], gap));
        }
    }
    auto orientation = [&](int level) {
        return clockwise(d.order[static_cast<std::size_t>(level - 1)], at(paths[0], level), at(paths[1], level),
                         at(paths[2], level));
    };
    return (orientation(lo) == orientation(hi)) == (crossings % 2 == 0);
}

}  // namespace lpht
