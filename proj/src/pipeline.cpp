#include "lpht/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <variant>

#include "lpht/corpus.hpp"
#include "lpht/xorsat.hpp"

namespace lpht {

Mode parse_mode(std::string_view text) {
    if (text == "level") return Mode::Level;
    if (text == "radial") return Mode::Radial;
    throw Error("unknown mode '" + std::string(text) + "', expected level or radial");
}

const char* mode_name(Mode m) { return m == Mode::Level ? "level" : "radial"; }

namespace {

const char* verdict(bool planar) { return planar ? "planar" : "non-planar"; }

// Copies the values of `full` onto the variables of `reduced`.
Assignment restrict_to(const ConstraintSystem& reduced, const ConstraintSystem& full, const Assignment& a) {
    Assignment out;
    for (const BoolVar& v : reduced.variables()) out.value.push_back(a.get(full, v) ? 1 : 0);
    return out;
}

bool transitive(const ConstraintSystem& s, std::span<const std::uint8_t> x) {
    return std::ranges::all_of(s.transitivity(), [&](const TransitivityClause& c) {
        if (!x[c.a] || !x[c.b]) return true;
        return (x[c.c] != 0) != c.negated_head;
    });
}

Witness level_witness(const ProperLevelGraph& g, const ConstraintSystem& sys, const Assignment& phi) {
    const LevelStructures ls = make_level_structures(g);
    const Assignment plus = lift_assignment_level(ls, restrict_to(ls.system, sys, phi));
    const LevelSynthesis syn = drawing_from_assignment_level(ls, plus);
    if (!syn.star_report.ht_violations.empty()) {
        const auto [e, f] = syn.star_report.ht_violations.front();
        throw NotHananiTutte("synthesized drawing has an odd independent pair", e, f);
    }
    return {to_drawing_file(ls.plus.graph(), syn.plus_drawing), ls.plus.graph(), syn.star_report.total()};
}

Witness radial_witness(const ProperLevelGraph& g,
                       const ReferenceSets& refs,
                       const ConstraintSystem& sys,
                       const Assignment& phi) {
    const RadialStructures rs = make_radial_structures(g, refs);
    const Assignment plus = lift_assignment_radial(rs, restrict_to(rs.system, sys, phi));
    const RadialSynthesis syn = drawing_from_assignment_radial(rs, plus);
    if (!syn.star_report.ht_violations.empty()) {
        const auto [e, f] = syn.star_report.ht_violations.front();
        throw NotHananiTutte("synthesized drawing has an odd independent pair", e, f);
    }
    return {to_drawing_file(rs.plus.graph(), rs.plus_refs(), syn.plus_drawing), rs.plus.graph(),
            syn.star_report.total()};
}

std::uint64_t solution_count(std::size_t free_vars) {
    return free_vars >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << free_vars;
}

}  // namespace

CheckReport check(const LevelGraph& g, Mode mode, const CheckOptions& options) {
    CheckReport r;
    r.mode = mode;
    r.full = options.full;
    ProperLevelGraph pg = properize(g).graph;
    ConstraintSystem sys;
    if (mode == Mode::Level) {
        sys = options.full ? build_level_full(pg) : build_level_reduced(pg);
        r.graph = std::move(pg);
    } else {
        ReferenceChoice choice = choose_reference_sets(pg, options.seed);
        sys = options.full ? build_radial_full(choice.graph, choice.refs) : build_radial_reduced(choice.graph, choice.refs);
        r.graph = std::move(choice.graph);
        r.refs = std::move(choice.refs);
    }

    const XorSystem xs = to_xor_system(sys);
    r.variables = sys.variables().size();
    r.equations = sys.xors().size();
    r.clauses = sys.transitivity().size();
    r.rank = rank(xs);

    std::optional<Assignment> phi;
    auto result = solve(xs);
    if (auto* unsat = std::get_if<Unsat>(&result)) {
        r.certificate = unsat->certificate;
    } else if (!options.full) {
        phi = Assignment{std::get<Sat>(result).assignment};
    } else {
        const auto& sat = std::get<Sat>(result);
        const std::uint64_t space = solution_count(sat.free_vars.size());
        r.solutions_tried = for_each_solution(xs, options.budget, [&](std::span<const std::uint8_t> x) {
            if (!transitive(sys, x)) return true;
            phi = Assignment{{x.begin(), x.end()}};
            return false;
        });
        if (!phi && space > r.solutions_tried) throw BudgetExceeded(space, options.budget);
    }
    r.planar = phi.has_value();

    if (r.planar && options.witness) {
        r.witness = mode == Mode::Level ? level_witness(r.graph, sys, *phi) : radial_witness(r.graph, *r.refs, sys, *phi);
    }
    return r;
}

OracleReport run_oracle(const LevelGraph& g, Mode mode, std::uint64_t budget, std::optional<std::uint64_t> seed) {
    OracleReport r;
    r.mode = mode;
    ProperLevelGraph pg = properize(g).graph;
    if (mode == Mode::Level) {
        const LevelOracleResult o = brute_level(pg, budget);
        r.planar = o.planar;
        r.states = o.states;
        if (o.witness) r.witness = to_drawing_file(pg, *o.witness);
        r.graph = std::move(pg);
    } else {
        ReferenceChoice choice = choose_reference_sets(pg, seed);
        const RadialOracleResult o = brute_radial(choice.graph, choice.refs, budget);
        r.planar = o.planar;
        r.states = o.states;
        if (o.witness) r.witness = to_drawing_file(choice.graph, choice.refs, *o.witness);
        r.graph = std::move(choice.graph);
        r.refs = std::move(choice.refs);
    }
    return r;
}

std::string emit_constraints(const LevelGraph& g, Mode mode, bool full, bool plus) {
    const ProperLevelGraph pg = properize(g).graph;
    if (mode == Mode::Level) {
        if (!plus) return write_constraints(full ? build_level_full(pg) : build_level_reduced(pg), pg);
        const LevelStructures ls = make_level_structures(pg);
        const ProperLevelGraph& gp = ls.plus.proper();
        return write_constraints(full ? build_level_full(gp) : ls.plus_system, gp);
    }
    const ReferenceChoice choice = choose_reference_sets(pg);
    if (!plus) {
        return write_constraints(
            full ? build_radial_full(choice.graph, choice.refs) : build_radial_reduced(choice.graph, choice.refs),
            choice.graph);
    }
    const RadialStructures rs = make_radial_structures(choice.graph, choice.refs);
    const ProperLevelGraph& gp = rs.plus.proper();
    return write_constraints(full ? build_radial_full(gp, rs.plus_refs()) : rs.plus_system, gp);
}

namespace {

class InstanceChecker {
  public:
    InstanceChecker(const ProperLevelGraph& g, const CrosscheckOptions& options, InstanceCheck& out)
        : g_(g), options_(options), out_(out) {}

    void run() {
        if (level_state_space(g_) > options_.budget) {
            out_.skipped = true;
            return;
        }
        check_level();

        std::vector<ReferenceChoice> choices;
        choices.push_back(choose_reference_sets(g_));
        for (auto& c : enumerate_reference_sets(g_, options_.reference_choices)) {
            const bool seen = std::ranges::any_of(choices, [&](const ReferenceChoice& d) { return d.refs == c.refs; });
            if (!seen) choices.push_back(std::move(c));
        }
        if (radial_state_space(choices.front().graph, choices.front().refs) > options_.budget) {
            out_.skipped = true;
            return;
        }
        std::optional<bool> decided;
        for (const ReferenceChoice& c : choices) {
            if (radial_state_space(c.graph, c.refs) > options_.budget) continue;
            const bool planar = check_radial(c);
            ++out_.reference_sets;
            if (!decided) {
                decided = planar;
            } else if (*decided != planar) {
                fail("radial: decision depends on the reference choice");
            }
        }
        out_.radial_planar = decided.value_or(false);
        if (out_.level_planar && !out_.radial_planar) fail("level planar but not radial planar");

        if (options_.relabel_seed) check_relabeled(*options_.relabel_seed);
    }

  private:
    const ProperLevelGraph& g_;
    const CrosscheckOptions& options_;
    InstanceCheck& out_;

    void fail(std::string message) { out_.failures.push_back(std::move(message)); }

    void check_level() {
        const LevelStructures ls = make_level_structures(g_);
        const LevelGraph& star = ls.star.star;
        std::size_t expected = 0;
        for (int i = 1; i <= g_->level_count(); ++i) expected += 2 * g_->on_level(i).size();
        if (static_cast<std::size_t>(star.level_count()) != expected) fail("level star form: wrong sublevel count");
        for (int j = 1; j <= star.level_count(); ++j) {
            if (star.on_level(j).size() != 1) fail("level star form: sublevel without exactly one vertex");
        }

        auto result = solve(to_xor_system(ls.system));
        const bool sat = std::holds_alternative<Sat>(result);
        const LevelOracleResult oracle = brute_level(g_, options_.budget);
        out_.level_planar = oracle.planar;
        if (sat != oracle.planar) {
            fail(std::string("level: solver says ") + verdict(sat) + ", oracle says " + verdict(oracle.planar));
        }
        if (oracle.witness) {
            const ConstraintSystem full = build_level_full(g_);
            if (!satisfies(full, induced_assignment(full, g_, *oracle.witness))) {
                fail("level: oracle witness violates the full system");
            }
        }
        if (!sat) return;

        try {
            const Assignment plus = lift_assignment_level(ls, Assignment{std::get<Sat>(result).assignment});
            if (!satisfies(ls.plus_system, plus)) fail("level: lifted assignment violates S(G+)");
            const LevelSynthesis syn = drawing_from_assignment_level(ls, plus);
            if (!syn.star_report.ht_violations.empty()) fail("level: synthesized drawing is not Hanani-Tutte");
            if (!limit_parity_mismatches(star, ls.plus.sub, syn.plus_drawing).empty()) {
                fail("level: crossing parity disagrees with limit order");
            }
            const LevelExtraction ex = assignment_from_drawing_level(ls, syn.plus_drawing);
            if (!satisfies(ls.plus_system, ex.phi_plus) || !satisfies(ls.system, ex.phi)) {
                fail("level: extracted assignment violates the reduced system");
            }
        } catch (const Error& e) {
            fail(std::string("level pipeline: ") + e.what());
        }
    }

    bool check_radial(const ReferenceChoice& c) {
        const RadialStructures rs = make_radial_structures(c.graph, c.refs);
        const StarForm& sf = rs.star.form;
        for (int i = 1; i <= c.graph->level_count(); ++i) {
            const std::size_t n = c.graph->on_level(i).size();
            const bool equal = c.refs.plus(i) == c.refs.minus(i);
            const auto [first, last] = sf.block(i);
            if (static_cast<std::size_t>(last - first + 1) != (equal ? 2 * n + 1 : 2 * n - 1)) {
                fail("radial star form: wrong sublevel count on level " + std::to_string(i));
            }
            if (sf.star.on_level(rs.star.middle_of(i)).size() != (equal ? 0u : 2u)) {
                fail("radial star form: wrong middle sublevel on level " + std::to_string(i));
            }
        }

        auto result = solve(to_xor_system(rs.system));
        const bool sat = std::holds_alternative<Sat>(result);
        const RadialOracleResult oracle = brute_radial(c.graph, c.refs, options_.budget);
        if (sat != oracle.planar) {
            fail(std::string("radial: solver says ") + verdict(sat) + ", oracle says " + verdict(oracle.planar));
        }
        if (oracle.witness) {
            const ConstraintSystem full = build_radial_full(c.graph, c.refs);
            if (!satisfies(full, induced_assignment(full, c.graph, *oracle.witness))) {
                fail("radial: oracle witness violates the full system");
            }
        }
        if (!sat) return oracle.planar;

        try {
            const Assignment plus = lift_assignment_radial(rs, Assignment{std::get<Sat>(result).assignment});
            if (!satisfies(rs.plus_system, plus)) fail("radial: lifted assignment violates S(G+)");
            const RadialSynthesis syn = drawing_from_assignment_radial(rs, plus);
            if (!syn.star_report.ht_violations.empty()) fail("radial: synthesized drawing is not Hanani-Tutte");
            const Assignment ex = assignment_from_drawing_radial(rs, syn.plus_drawing);
            if (!satisfies(rs.plus_system, ex)) fail("radial: extracted assignment violates the reduced system");
        } catch (const Error& e) {
            fail(std::string("radial pipeline: ") + e.what());
        }
        return oracle.planar;
    }

    void check_relabeled(std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        const ProperLevelGraph copy = shuffled_copy(g_, rng);
        const bool level = check(copy, Mode::Level).planar;
        const bool radial = check(copy, Mode::Radial).planar;
        if (level != out_.level_planar) fail("level: decision changes under relabeling");
        if (radial != out_.radial_planar) fail("radial: decision changes under relabeling");
    }
};

}  // namespace

InstanceCheck crosscheck_instance(const LevelGraph& g, const CrosscheckOptions& options) {
    InstanceCheck out;
    const ProperLevelGraph pg = properize(g).graph;
    try {
        InstanceChecker(pg, options, out).run();
    } catch (const BudgetExceeded&) {
        out.skipped = true;
    }
    return out;
}

}  // namespace lpht
