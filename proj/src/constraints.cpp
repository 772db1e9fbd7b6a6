#include "lpht/constraints.hpp"

#include <algorithm>

namespace lpht {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::PairConsistency: return "pair-consistency";
        case Rule::PairTransitivity: return "pair-transitivity";
        case Rule::PairPlanarity: return "pair-planarity";
        case Rule::TripleConsistency: return "triple-consistency";
        case Rule::TripleTransitivity: return "triple-transitivity";
        case Rule::InnerPlanarity: return "inner-planarity";
        case Rule::FlagOpposition: return "flag-opposition";
        case Rule::PlusPlanarity: return "plus-planarity";
        case Rule::MinusPlanarity: return "minus-planarity";
        case Rule::CyclicMerge: return "cyclic-merge";
        case Rule::CyclicRotation: return "cyclic-rotation";
    }
    return "?";
}

const char* system_kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::LevelFull: return "level-full";
        case SystemKind::LevelReduced: return "level-reduced";
        case SystemKind::RadialFull: return "radial-full";
        case SystemKind::RadialReduced: return "radial-reduced";
    }
    return "?";
}

std::optional<std::size_t> ConstraintSystem::find(const BoolVar& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ConstraintSystem::index(const BoolVar& v) const {
    auto i = find(v);
    if (!i) throw Error("undeclared constraint variable");
    return *i;
}

std::size_t ConstraintSystem::declare(const BoolVar& v) {
    auto [it, inserted] = index_.emplace(v, vars_.size());
    if (inserted) vars_.push_back(v);
    return it->second;
}

void ConstraintSystem::add_xor(XorEquation eq) {
    if (eq.vars.empty()) throw Error("empty xor equation");
    for (auto i : eq.vars) {
        if (i >= vars_.size()) throw Error("xor equation references an undeclared variable");
    }
    xors_.push_back(std::move(eq));
}

void ConstraintSystem::add_transitivity(TransitivityClause clause) {
    for (auto i : {clause.a, clause.b, clause.c}) {
        if (i >= vars_.size()) throw Error("transitivity clause references an undeclared variable");
    }
    transitivity_.push_back(clause);
}

std::string variable_name(const LevelGraph& g, const BoolVar& v) {
    switch (v.kind) {
        case BoolVar::Kind::PairOrder: return "x(" + g.id(v.a) + "," + g.id(v.b) + ")";
        case BoolVar::Kind::TripleOrder: return "x(" + g.id(v.a) + "," + g.id(v.b) + "," + g.id(v.c) + ")";
        case BoolVar::Kind::LeftFlag: return "l(" + g.id(v.a) + "," + g.id(v.b) + ")";
    }
    return "?";
}

namespace {

std::vector<EdgeIndex> edges_leaving_level(const LevelGraph& g, int level) {
    std::vector<EdgeIndex> out;
    for (Vertex u : g.on_level(level)) {
        for (EdgeIndex e : g.out_edges(u)) out.push_back(e);
    }
    std::ranges::sort(out, [&g](EdgeIndex a, EdgeIndex b) {
        const Edge& x = g.edge(a);
        const Edge& y = g.edge(b);
        if (x.tail != y.tail) return g.rank(x.tail) < g.rank(y.tail);
        return g.rank(x.head) < g.rank(y.head);
    });
    return out;
}

ConstraintSystem build_level(const ProperLevelGraph& pg, bool full) {
    const LevelGraph& g = pg;
    ConstraintSystem s(full ? SystemKind::LevelFull : SystemKind::LevelReduced);
    for (int i = 1; i <= g.level_count(); ++i) {
        for (Vertex u : g.on_level(i)) {
            for (Vertex w : g.on_level(i)) {
                if (u != w) s.declare(BoolVar::pair(u, w));
            }
        }
    }
    for (int i = 1; i <= g.level_count(); ++i) {
        auto vs = g.on_level(i);
        for (std::size_t p = 0; p < vs.size(); ++p) {
            for (std::size_t q = p + 1; q < vs.size(); ++q) {
                s.add_xor({{s.index(BoolVar::pair(vs[p], vs[q])), s.index(BoolVar::pair(vs[q], vs[p]))},
                           true,
                           Rule::PairConsistency});
            }
        }
        if (full) {
            for (Vertex u : vs) {
                for (Vertex w : vs) {
                    for (Vertex y : vs) {
                        if (u == w || w == y || u == y) continue;
                        s.add_transitivity({s.index(BoolVar::pair(u, w)),
                                            s.index(BoolVar::pair(w, y)),
                                            s.index(BoolVar::pair(u, y)),
                                            false,
                                            Rule::PairTransitivity});
                    }
                }
            }
        }
    }
    for (int i = 1; i < g.level_count(); ++i) {
        auto edges = edges_leaving_level(g, i);
        for (std::size_t p = 0; p < edges.size(); ++p) {
            for (std::size_t q = p + 1; q < edges.size(); ++q) {
                if (!g.independent(edges[p], edges[q])) continue;
                const Edge& e = g.edge(edges[p]);
                const Edge& f = g.edge(edges[q]);
                s.add_xor({{s.index(BoolVar::pair(e.tail, f.tail)), s.index(BoolVar::pair(e.head, f.head))},
                           false,
                           Rule::PairPlanarity});
            }
        }
    }
    return s;
}

void declare_anchor(ConstraintSystem& s, const LevelGraph& g, int level, Vertex anchor) {
    for (Vertex u : g.on_level(level)) {
        for (Vertex v : g.on_level(level)) {
            if (u != anchor && v != anchor && u != v) s.declare(BoolVar::triple(anchor, u, v));
        }
    }
}

void linear_ordering(ConstraintSystem& s, const LevelGraph& g, int level, Vertex anchor, bool full) {
    auto vs = g.on_level(level);
    for (std::size_t p = 0; p < vs.size(); ++p) {
        for (std::size_t q = p + 1; q < vs.size(); ++q) {
            const Vertex u = vs[p];
            const Vertex v = vs[q];
            if (u == anchor || v == anchor) continue;
            s.add_xor({{s.index(BoolVar::triple(anchor, u, v)), s.index(BoolVar::triple(anchor, v, u))},
                       true,
                       Rule::TripleConsistency});
        }
    }
    if (!full) return;
    for (Vertex u : vs) {
        for (Vertex v : vs) {
            for (Vertex w : vs) {
                if (u == anchor || v == anchor || w == anchor || u == v || v == w || u == w) continue;
                // u before v and v before w forbid w before u.
                s.add_transitivity({s.index(BoolVar::triple(anchor, u, v)),
                                    s.index(BoolVar::triple(anchor, v, w)),
                                    s.index(BoolVar::triple(anchor, w, u)),
                                    true,
                                    Rule::TripleTransitivity});
            }
        }
    }
}

ConstraintSystem build_radial(const ProperLevelGraph& pg, const ReferenceSets& refs, bool full) {
    const LevelGraph& g = pg;
    check_reference_sets(g, refs);
    ConstraintSystem s(full ? SystemKind::RadialFull : SystemKind::RadialReduced);
    const int k = g.level_count();

    for (int i = 1; i <= k; ++i) {
        declare_anchor(s, g, i, refs.minus(i));
        if (refs.plus(i) != refs.minus(i)) declare_anchor(s, g, i, refs.plus(i));
    }
    std::vector<GapEdges> gaps;
    for (int i = 1; i < k; ++i) {
        gaps.push_back(classify_gap(g, refs, i));
        for (EdgeIndex e : gaps.back().plus) s.declare(BoolVar::left(g.edge(e)));
        for (EdgeIndex e : gaps.back().minus) s.declare(BoolVar::left(g.edge(e)));
    }

    for (int i = 1; i <= k; ++i) {
        const Vertex plus = refs.plus(i);
        const Vertex minus = refs.minus(i);
        linear_ordering(s, g, i, minus, full);
        if (plus == minus) continue;
        linear_ordering(s, g, i, plus, full);

        auto vs = g.on_level(i);
        for (std::size_t p = 0; p < vs.size(); ++p) {
            for (std::size_t q = p + 1; q < vs.size(); ++q) {
                const Vertex u = vs[p];
                const Vertex v = vs[q];
                if (u == plus || u == minus || v == plus || v == minus) continue;
                s.add_xor({{s.index(BoolVar::triple(minus, u, v)),
                            s.index(BoolVar::triple(plus, u, v)),
                            s.index(BoolVar::triple(minus, u, plus)),
                            s.index(BoolVar::triple(minus, v, plus))},
                           false,
                           Rule::CyclicMerge});
            }
        }
        for (Vertex v : vs) {
            if (v == plus || v == minus) continue;
            s.add_xor({{s.index(BoolVar::triple(minus, v, plus)), s.index(BoolVar::triple(plus, minus, v))},
                       false,
                       Rule::CyclicRotation});
        }
    }

    for (int i = 1; i < k; ++i) {
        const GapEdges& gap = gaps[static_cast<std::size_t>(i - 1)];
        const Vertex a = gap.reference.tail;
        const Vertex b = gap.reference.head;
        for (std::size_t p = 0; p < gap.inner.size(); ++p) {
            for (std::size_t q = p + 1; q < gap.inner.size(); ++q) {
                if (!g.independent(gap.inner[p], gap.inner[q])) continue;
                const Edge& e = g.edge(gap.inner[p]);
                const Edge& f = g.edge(gap.inner[q]);
                s.add_xor({{s.index(BoolVar::triple(a, e.tail, f.tail)), s.index(BoolVar::triple(b, e.head, f.head))},
                           false,
                           Rule::InnerPlanarity});
            }
        }
        for (EdgeIndex ep : gap.plus) {
            for (EdgeIndex fm : gap.minus) {
                s.add_xor({{s.index(BoolVar::left(g.edge(ep))), s.index(BoolVar::left(g.edge(fm)))},
                           true,
                           Rule::FlagOpposition});
            }
        }
        for (EdgeIndex ep : gap.plus) {
            const Vertex far = g.edge(ep).head;
            for (EdgeIndex f : gap.inner) {
                const Vertex v = g.edge(f).head;
                if (v == far) continue;
                s.add_xor({{s.index(BoolVar::left(g.edge(ep))), s.index(BoolVar::triple(b, v, far))},
                           false,
                           Rule::PlusPlanarity});
            }
        }
        for (EdgeIndex em : gap.minus) {
            const Vertex far = g.edge(em).tail;
            for (EdgeIndex f : gap.inner) {
                const Vertex u = g.edge(f).tail;
                if (u == far) continue;
                s.add_xor({{s.index(BoolVar::left(g.edge(em))), s.index(BoolVar::triple(a, u, far))},
                           false,
                           Rule::MinusPlanarity});
            }
        }
    }
    return s;
}

}  // namespace

GapEdges classify_gap(const LevelGraph& g, const ReferenceSets& refs, int gap) {
    GapEdges out;
    out.reference = refs.reference_edge(gap);
    for (EdgeIndex e : edges_leaving_level(g, gap)) {
        const Edge& edge = g.edge(e);
        if (edge == out.reference) continue;
        if (edge.tail == out.reference.tail) {
            out.plus.push_back(e);
        } else if (edge.head == out.reference.head) {
            out.minus.push_back(e);
        } else {
            out.inner.push_back(e);
        }
    }
    return out;
}

ConstraintSystem build_level_full(const ProperLevelGraph& g) { return build_level(g, true); }
ConstraintSystem build_level_reduced(const ProperLevelGraph& g) { return build_level(g, false); }

ConstraintSystem build_radial_full(const ProperLevelGraph& g, const ReferenceSets& refs) {
    return build_radial(g, refs, true);
}
ConstraintSystem build_radial_reduced(const ProperLevelGraph& g, const ReferenceSets& refs) {
    return build_radial(g, refs, false);
}

std::vector<ConstraintViolation> evaluate(const ConstraintSystem& system, const Assignment& a) {
    if (a.value.size() != system.variables().size()) {
        throw AssignmentError("assignment covers " + std::to_string(a.value.size()) + " of " +
                              std::to_string(system.variables().size()) + " variables");
    }
    std::vector<ConstraintViolation> out;
    const auto xors = system.xors();
    for (std::size_t i = 0; i < xors.size(); ++i) {
        bool sum = false;
        for (auto v : xors[i].vars) sum ^= a.at(v);
        if (sum != xors[i].parity) out.push_back({ConstraintViolation::Kind::Xor, i});
    }
    const auto clauses = system.transitivity();
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const auto& c = clauses[i];
        if (a.at(c.a) && a.at(c.b) && a.at(c.c) == c.negated_head) {
            out.push_back({ConstraintViolation::Kind::Transitivity, i});
        }
    }
    return out;
}

}  // namespace lpht
