#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "lpht/corpus.hpp"
#include "lpht/drawing.hpp"
#include "lpht/oracle.hpp"
#include "lpht/xorsat.hpp"

using namespace lpht;

namespace {

using Clock = std::chrono::steady_clock;

int failed = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail, Clock::time_point start) {
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %d: %s (%s; %.1f s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    failed += !ok;
}

// Counts checks and prints the first few failures.
struct Tally {
    std::size_t checked = 0;
    std::size_t bad = 0;

    void operator()(bool ok, const std::function<std::string()>& describe) {
        ++checked;
        if (ok) return;
        if (++bad <= 5) std::cerr << "  " << describe() << "\n";
    }
};

std::optional<Assignment> solve_system(const ConstraintSystem& s) {
    const SolveResult r = solve(to_xor_system(s));
    if (const auto* sat = std::get_if<Sat>(&r)) return Assignment{sat->assignment};
    return std::nullopt;
}

// A pseudo-random solution of `s` among its first few.
std::optional<Assignment> random_solution(const ConstraintSystem& s, std::mt19937_64& rng) {
    const XorSystem x = to_xor_system(s);
    const SolveResult r = solve(x);
    const auto* sat = std::get_if<Sat>(&r);
    if (!sat) return std::nullopt;
    const std::size_t free = std::min<std::size_t>(sat->free_vars.size(), 6);
    const std::size_t pick = rng() % (std::size_t{1} << free);
    Assignment out;
    std::size_t seen = 0;
    for_each_solution(x, pick + 1, [&](std::span<const std::uint8_t> y) {
        if (seen++ == pick) out.value.assign(y.begin(), y.end());
        return true;
    });
    return out;
}

std::string key(const ProperLevelGraph& g) { return canonical_form(g); }

bool level_synthesis_ok(const LevelStructures& ls, const Assignment& phi) {
    const Assignment lifted = lift_assignment_level(ls, phi);
    const LevelSynthesis syn = drawing_from_assignment_level(ls, lifted);
    check_drawing(ls.plus.graph(), syn.plus_drawing);
    return syn.star_report.ht_violations.empty() && verify_hanani_tutte(syn.star_report, ls.star.star).empty();
}

bool radial_synthesis_ok(const RadialStructures& rs, const Assignment& phi) {
    const Assignment lifted = lift_assignment_radial(rs, phi);
    const RadialSynthesis syn = drawing_from_assignment_radial(rs, lifted);
    check_drawing(rs.plus.graph(), rs.plus_refs(), syn.plus_drawing);
    return syn.star_report.ht_violations.empty() && verify_hanani_tutte(syn.star_report, rs.star.form.star).empty();
}

// All monotone paths of `g` from level lo to level hi.
std::vector<std::vector<Vertex>> monotone_paths(const LevelGraph& g, int lo, int hi) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    std::function<void(Vertex)> walk = [&](Vertex v) {
        path.push_back(v);
        if (g.level(v) == hi) {
            out.push_back(path);
        } else {
            for (EdgeIndex e : g.out_edges(v)) walk(g.edge(e).head);
        }
        path.pop_back();
    };
    for (Vertex v : g.on_level(lo)) walk(v);
    return out;
}

bool disjoint(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) return false;
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<ProperLevelGraph> corpus = exhaustive_corpus({3, 3, 20000});
    std::printf("corpus: %zu instances\n", corpus.size());

    std::size_t level_satisfiable = 0;
    std::size_t radial_satisfiable = 0;
    Tally ht;

    {
        const auto start = Clock::now();
        Tally t;
        for (const ProperLevelGraph& g : corpus) {
            const LevelStructures ls = make_level_structures(g);
            const auto phi = solve_system(ls.system);
            const bool oracle = brute_level(g).planar;
            t(phi.has_value() == oracle, [&] { return "level mismatch on " + key(g); });
            if (!phi) continue;
            ++level_satisfiable;
            ht(level_synthesis_ok(ls, *phi), [&] { return "level synthesis not Hanani-Tutte on " + key(g); });
        }
        std::ostringstream d;
        d << t.checked - t.bad << "/" << t.checked << " agree, " << level_satisfiable << " planar";
        report(1, t.bad == 0 && t.checked == corpus.size(), "reduced level system vs level oracle on the exhaustive corpus",
               d.str(), start);
    }

    {
        const auto start = Clock::now();
        Tally t;
        Tally stable;
        std::size_t single_choice = 0;
        std::size_t choices_tried = 0;
        for (const ProperLevelGraph& g : corpus) {
            std::vector<ReferenceChoice> choices{choose_reference_sets(g)};
            for (ReferenceChoice& c : enumerate_reference_sets(g, 3)) {
                if (choices.size() < 3 && std::ranges::none_of(choices, [&](const ReferenceChoice& x) { return x.refs == c.refs; })) {
                    choices.push_back(std::move(c));
                }
            }
            single_choice += choices.size() < 2;
            std::set<bool> verdicts;
            for (const ReferenceChoice& c : choices) {
                ++choices_tried;
                check_reference_sets(c.graph, c.refs);
                const RadialStructures rs = make_radial_structures(c.graph, c.refs);
                const auto phi = solve_system(rs.system);
                const bool oracle = brute_radial(c.graph, c.refs).planar;
                t(phi.has_value() == oracle, [&] { return "radial mismatch on " + key(g); });
                verdicts.insert(phi.has_value());
                if (!phi) continue;
                ht(radial_synthesis_ok(rs, *phi), [&] { return "radial synthesis not Hanani-Tutte on " + key(g); });
            }
            stable(verdicts.size() == 1, [&] { return "decision depends on references for " + key(g); });
            radial_satisfiable += *verdicts.begin();
        }
        std::ostringstream d;
        d << t.checked - t.bad << "/" << t.checked << " (instance, references) agree, " << choices_tried << " reference sets, "
          << stable.bad << " unstable, " << single_choice << " instances admit a single valid choice, " << radial_satisfiable
          << " planar";
        report(2, t.bad == 0 && stable.bad == 0, "reduced radial system vs radial oracle under several reference sets",
               d.str(), start);
    }

    {
        const auto start = Clock::now();
        std::ostringstream d;
        d << ht.checked << " synthesized drawings, " << ht.bad << " with an odd independent pair";
        report(3, ht.bad == 0 && ht.checked > 0, "synthesized drawings of satisfiable instances are Hanani-Tutte", d.str(),
               start);
    }

    {
        const auto start = Clock::now();
        std::mt19937_64 rng(4);
        std::size_t pairs = 0;
        Tally t;
        for (int round = 0; round < 1000; ++round) {
            const LevelStructures ls = make_level_structures(random_proper_graph(rng, 3, 3));
            const LevelDrawing d = random_level_drawing(ls.plus.graph(), rng);
            pairs += critical_pairs(ls.star.star).size();
            const auto bad = limit_parity_mismatches(ls.star.star, ls.plus.sub, d);
            t(bad.empty(), [&] { return std::to_string(bad.size()) + " critical pairs disagree in round " + std::to_string(round); });
        }
        std::ostringstream d;
        d << t.checked << " drawings, " << pairs << " critical pairs, " << t.bad << " drawings with a disagreement";
        report(4, t.bad == 0 && pairs > 0, "critical pair crossing parity vs limit order agreement", d.str(), start);
    }

    {
        const auto start = Clock::now();
        std::mt19937_64 rng(5);
        Tally t;
        // Half the drawings are of small graphs with every monotone path, half of G+ with its subdivided edges.
        for (int round = 0; round < 500; ++round) {
            const ProperLevelGraph g = random_proper_graph(rng, 4, 4, 0.6);
            const ReferenceChoice c = choose_reference_sets(g);
            const RadialDrawing d = random_radial_drawing(c.graph, c.refs, rng);
            const CrossingReport fine = count_crossings_radial(d, c.graph, c.refs);
            for (int lo = 1; lo <= c.graph->level_count(); ++lo) {
                for (int hi = lo + 1; hi <= c.graph->level_count(); ++hi) {
                    const auto paths = monotone_paths(c.graph, lo, hi);
                    for (std::size_t a = 0; a < paths.size(); ++a) {
                        for (std::size_t b = a + 1; b < paths.size(); ++b) {
                            if (!disjoint(paths[a], paths[b])) continue;
                            for (std::size_t e = b + 1; e < paths.size(); ++e) {
                                if (!disjoint(paths[a], paths[e]) || !disjoint(paths[b], paths[e])) continue;
                                t(three_curves_consistent(c.graph, d, fine, {paths[a], paths[b], paths[e]}, lo, hi),
                                  [&] { return "three curves fail on " + key(g); });
                            }
                        }
                    }
                }
            }
        }
        for (int round = 0; round < 500; ++round) {
            const ReferenceChoice c = choose_reference_sets(random_proper_graph(rng, 3, 3));
            const RadialStructures rs = make_radial_structures(c.graph, c.refs);
            const LevelGraph& star = rs.star.form.star;
            const RadialDrawing d = random_radial_drawing(rs.plus.graph(), rs.plus_refs(), rng);
            const CrossingReport fine = count_crossings_radial(d, rs.plus.proper(), rs.plus_refs());
            const auto& p = rs.plus.sub.paths;
            for (EdgeIndex a = 0; a < star.edge_count(); ++a) {
                for (EdgeIndex b = a + 1; b < star.edge_count(); ++b) {
                    for (EdgeIndex e = b + 1; e < star.edge_count(); ++e) {
                        if (!star.independent(a, b) || !star.independent(a, e) || !star.independent(b, e)) continue;
                        const int first = std::max({star.level(star.edge(a).tail), star.level(star.edge(b).tail),
                                                    star.level(star.edge(e).tail)});
                        const int last = std::min({star.level(star.edge(a).head), star.level(star.edge(b).head),
                                                   star.level(star.edge(e).head)});
                        for (int lo = first; lo < last; ++lo) {
                            for (int hi = lo + 1; hi <= last; ++hi) {
                                t(three_curves_consistent(rs.plus.graph(), d, fine, {p[a], p[b], p[e]}, lo, hi),
                                  [&] { return "three curves fail on G+ of " + key(c.graph); });
                            }
                        }
                    }
                }
            }
        }
        std::ostringstream d;
        d << "1000 drawings, " << t.checked << " (triple, window) cases, " << t.bad << " disagreements";
        report(5, t.bad == 0 && t.checked > 1000, "three-curves parity on random radial drawings", d.str(), start);
    }

    {
        const auto start = Clock::now();
        std::mt19937_64 rng(6);
        Tally level;
        Tally radial;
        for (int attempts = 0; (level.checked < 500 || radial.checked < 500) && attempts < 100000; ++attempts) {
            const ProperLevelGraph g = random_proper_graph(rng, 4, 3, 0.45);
            if (level.checked < 500) {
                const LevelStructures ls = make_level_structures(g);
                if (const auto phi = random_solution(ls.system, rng)) {
                    const LevelSynthesis syn = drawing_from_assignment_level(ls, lift_assignment_level(ls, *phi));
                    const LevelExtraction ex = assignment_from_drawing_level(ls, syn.plus_drawing);
                    level(satisfies(ls.plus_system, ex.phi_plus) && satisfies(ls.system, ex.phi),
                          [&] { return "level round trip fails on " + key(g); });
                }
            }
            if (radial.checked < 500) {
                const ReferenceChoice c = choose_reference_sets(g, rng());
                const RadialStructures rs = make_radial_structures(c.graph, c.refs);
                if (const auto phi = random_solution(rs.system, rng)) {
                    const RadialSynthesis syn = drawing_from_assignment_radial(rs, lift_assignment_radial(rs, *phi));
                    const Assignment back = assignment_from_drawing_radial(rs, syn.plus_drawing);
                    radial(satisfies(rs.plus_system, back), [&] { return "radial round trip fails on " + key(g); });
                }
            }
        }
        std::ostringstream d;
        d << "level " << level.checked - level.bad << "/" << level.checked << ", radial " << radial.checked - radial.bad
          << "/" << radial.checked;
        report(6, level.bad == 0 && radial.bad == 0 && level.checked == 500 && radial.checked == 500,
               "assignment to drawing to assignment round trips", d.str(), start);
    }

    {
        const auto start = Clock::now();
        bool ok = true;
        std::ostringstream d;
        LevelGraph::Builder b(2);
        const Vertex a1 = b.add_vertex("a", 1), a2 = b.add_vertex("b", 1);
        const Vertex c1 = b.add_vertex("c", 2), c2 = b.add_vertex("d", 2);
        for (Vertex u : {a1, a2}) {
            for (Vertex w : {c1, c2}) b.add_edge(u, w);
        }
        const ProperLevelGraph k22(std::move(b).build());
        const bool level_solver = solve_system(build_level_reduced(k22)).has_value();
        const bool level_oracle = brute_level(k22).planar;
        ok &= !level_solver && !level_oracle;
        for (const ReferenceChoice& c : enumerate_reference_sets(k22, 8)) {
            ok &= solve_system(build_radial_reduced(c.graph, c.refs)).has_value();
            ok &= brute_radial(c.graph, c.refs).planar;
        }
        d << "K2,2 level " << (level_solver ? "planar" : "non-planar") << ", radial planar";
        std::size_t paths = 0;
        for (int k = 1; k <= 8; ++k) {
            LevelGraph::Builder pb(k);
            for (int i = 1; i <= k; ++i) {
                const Vertex v = pb.add_vertex("p" + std::to_string(i), i);
                if (i > 1) pb.add_edge(v - 1, v);
            }
            const ProperLevelGraph p(std::move(pb).build());
            const ReferenceChoice c = choose_reference_sets(p);
            ok &= solve_system(build_level_reduced(p)).has_value() && brute_level(p).planar;
            ok &= solve_system(build_radial_reduced(c.graph, c.refs)).has_value() && brute_radial(c.graph, c.refs).planar;
            ++paths;
        }
        d << "; " << paths << " paths planar in both modes";
        report(7, ok, "named instances", d.str(), start);
    }

    {
        const auto start = Clock::now();
        Tally t;
        for (const ProperLevelGraph& g : corpus) {
            const StarForm sf = build_star_level(g);
            for (int i = 1; i <= g->level_count(); ++i) {
                const auto [first, last] = sf.block(i);
                const int n = static_cast<int>(g->on_level(i).size());
                t(last - first + 1 == 2 * n, [&] { return "level block size off on " + key(g); });
            }
            t(sf.star.level_count() == 2 * static_cast<int>(g->vertex_count()), [&] { return "level sublevel total off"; });

            const ReferenceChoice c = choose_reference_sets(g);
            const RadialStarForm r = build_star_radial(c.graph, c.refs);
            for (int i = 1; i <= g->level_count(); ++i) {
                const auto [first, last] = r.form.block(i);
                const int n = static_cast<int>(g->on_level(i).size());
                const bool same = c.refs.plus(i) == c.refs.minus(i);
                t(last - first + 1 == (same ? 2 * n + 1 : 2 * n - 1), [&] { return "radial block size off on " + key(g); });
                t(r.form.star.on_level(r.middle_of(i)).size() == (same ? 0u : 2u),
                  [&] { return "radial middle sublevel off on " + key(g); });
            }
        }
        std::ostringstream d;
        d << t.checked - t.bad << "/" << t.checked << " counts match";
        report(8, t.bad == 0, "star form sublevel counts", d.str(), start);
    }

    {
        const auto start = Clock::now();
        std::mt19937_64 rng(9);
        Tally t;
        for (int round = 0; round < 1000; ++round) {
            XorSystem s;
            s.n = 1 + rng() % 16;
            const std::size_t m = rng() % (s.n + 6);
            for (std::size_t i = 0; i < m; ++i) {
                XorSystem::Row row;
                const std::size_t width = 1 + rng() % 5;
                for (std::size_t j = 0; j < width; ++j) row.vars.push_back(rng() % s.n);
                row.parity = rng() & 1u;
                s.rows.push_back(row);
            }
            std::size_t solutions = 0;
            std::vector<std::uint8_t> x(s.n);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s.n); ++mask) {
                for (std::size_t i = 0; i < s.n; ++i) x[i] = (mask >> i) & 1u;
                solutions += satisfies(s, x);
            }
            const SolveResult r = solve(s);
            bool ok = std::holds_alternative<Sat>(r) == (solutions > 0);
            if (const auto* sat = std::get_if<Sat>(&r)) {
                ok &= satisfies(s, sat->assignment) && solutions == (std::size_t{1} << (s.n - rank(s)));
            } else {
                std::vector<std::uint8_t> sum(s.n, 0);
                bool parity = false;
                for (std::size_t row : std::get<Unsat>(r).certificate) {
                    for (std::size_t v : s.rows[row].vars) sum[v] ^= 1;
                    parity ^= s.rows[row].parity;
                }
                ok &= parity && std::ranges::all_of(sum, [](std::uint8_t bit) { return bit == 0; });
            }
            t(ok, [&] { return "solver disagrees in round " + std::to_string(round); });
        }
        std::ostringstream d;
        d << t.checked - t.bad << "/" << t.checked << " systems agree";
        report(9, t.bad == 0, "XOR solver vs exhaustive enumeration", d.str(), start);
    }

    return failed == 0 ? 0 : 1;
}
