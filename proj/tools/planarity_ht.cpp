#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lpht/corpus.hpp"
#include "lpht/pipeline.hpp"
#include "lpht/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { Planar = 0, NonPlanar = 1, Failure = 2, OverBudget = 3 };

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lpht::Error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lpht::Error("cannot write " + path);
    out << text;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw lpht::Error(std::string("invalid ") + what + " '" + text + "'");
    }
    return v;
}

// Command line beats PLANARITY_HT_BUDGET, which beats the default.
std::uint64_t budget_from(const std::string& flag) {
    if (!flag.empty()) return parse_count(flag, "budget");
    if (const char* env = std::getenv("PLANARITY_HT_BUDGET"); env && *env) {
        return parse_count(env, "PLANARITY_HT_BUDGET");
    }
    return lpht::default_oracle_budget;
}

std::pair<int, int> parse_size(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw lpht::Error("invalid size '" + text + "', expected KxN");
    const auto k = parse_count(text.substr(0, x), "size");
    const auto n = parse_count(text.substr(x + 1), "size");
    if (k < 1 || n < 1 || k > 64 || n > 64) throw lpht::Error("size out of range: " + text);
    return {static_cast<int>(k), static_cast<int>(n)};
}

json references_json(const lpht::LevelGraph& g, const lpht::ReferenceSets& r) {
    json out{{"plus", json::array()}, {"minus", json::array()}, {"inserted", json::array()}};
    for (int i = 1; i <= g.level_count(); ++i) {
        out["plus"].push_back(g.id(r.plus(i)));
        out["minus"].push_back(g.id(r.minus(i)));
    }
    for (const auto& e : r.inserted_edges) out["inserted"].push_back(g.id(e.tail) + "->" + g.id(e.head));
    return out;
}

struct CheckArgs {
    std::string mode;
    std::string graph;
    bool full = false;
    bool reduced = false;
    std::string witness;
    std::string plus_graph;
    std::string budget;
    std::optional<std::uint64_t> seed;
    bool as_json = false;
};

int run_check(const CheckArgs& a) {
    const lpht::Mode mode = lpht::parse_mode(a.mode);
    const lpht::LevelGraph g = lpht::read_graph(slurp(a.graph));
    lpht::CheckOptions o;
    o.full = a.full;
    o.witness = !a.witness.empty() || !a.plus_graph.empty();
    o.budget = budget_from(a.budget);
    o.seed = a.seed;
    const lpht::CheckReport r = lpht::check(g, mode, o);

    if (r.witness) {
        if (!a.witness.empty()) spill(a.witness, lpht::write_drawing_json(r.witness->drawing));
        if (!a.plus_graph.empty()) spill(a.plus_graph, lpht::write_graph_json(r.witness->plus_graph));
    }

    const std::string system = lpht::system_kind_name(
        mode == lpht::Mode::Level ? (r.full ? lpht::SystemKind::LevelFull : lpht::SystemKind::LevelReduced)
                                  : (r.full ? lpht::SystemKind::RadialFull : lpht::SystemKind::RadialReduced));
    if (a.as_json) {
        json out{{"mode", lpht::mode_name(mode)}, {"system", system},           {"planar", r.planar},
                 {"variables", r.variables},      {"equations", r.equations},  {"clauses", r.clauses},
                 {"rank", r.rank},                {"certificate", r.certificate}};
        if (r.full) out["solutions_tried"] = r.solutions_tried;
        if (r.refs) out["references"] = references_json(r.graph, *r.refs);
        if (r.witness) out["star_crossings"] = r.witness->star_crossings;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "mode: " << lpht::mode_name(mode) << "\n";
        std::cout << "system: " << system << ", " << r.variables << " variables, " << r.equations << " equations, "
                  << r.clauses << " clauses, rank " << r.rank << "\n";
        if (r.refs) std::cout << "references: " << references_json(r.graph, *r.refs).dump() << "\n";
        if (r.full) std::cout << "solutions tried: " << r.solutions_tried << "\n";
        std::cout << "result: " << (r.planar ? "planar" : "non-planar") << "\n";
        if (!r.certificate.empty()) {
            std::cout << "certificate:";
            for (auto row : r.certificate) std::cout << ' ' << row;
            std::cout << "\n";
        }
        if (r.witness) std::cout << "witness: Hanani-Tutte, " << r.witness->star_crossings << " crossings\n";
    }
    return r.planar ? Planar : NonPlanar;
}

int run_emit(const std::string& mode, const std::string& graph, bool full, const std::string& stage) {
    if (stage != "G" && stage != "Gplus") throw lpht::Error("unknown stage '" + stage + "', expected G or Gplus");
    const lpht::LevelGraph g = lpht::read_graph(slurp(graph));
    std::cout << lpht::emit_constraints(g, lpht::parse_mode(mode), full, stage == "Gplus");
    return Planar;
}

int run_oracle(const std::string& mode_text,
               const std::string& graph,
               const std::string& budget,
               const std::string& witness,
               std::optional<std::uint64_t> seed,
               bool as_json) {
    const lpht::Mode mode = lpht::parse_mode(mode_text);
    const lpht::LevelGraph g = lpht::read_graph(slurp(graph));
    const lpht::OracleReport r = lpht::run_oracle(g, mode, budget_from(budget), seed);
    if (r.witness && !witness.empty()) spill(witness, lpht::write_drawing_json(*r.witness));
    if (as_json) {
        json out{{"mode", lpht::mode_name(mode)}, {"planar", r.planar}, {"states", r.states}};
        if (r.witness) out["witness"] = json::parse(lpht::write_drawing_json(*r.witness));
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "mode: " << lpht::mode_name(mode) << "\n";
        std::cout << "result: " << (r.planar ? "planar" : "non-planar") << "\n";
        std::cout << "states: " << r.states << "\n";
        if (r.witness) std::cout << "witness: " << json::parse(lpht::write_drawing_json(*r.witness)).dump() << "\n";
    }
    return r.planar ? Planar : NonPlanar;
}

int run_render(const std::string& drawing, const std::string& graph, const std::string& out_path) {
    const lpht::DrawingFile f = lpht::parse_drawing_json(slurp(drawing));
    const lpht::ProperLevelGraph pg = lpht::properize(lpht::read_graph(slurp(graph))).graph;
    std::string svg;
    if (f.kind == "level") {
        const lpht::LevelDrawing d = lpht::to_level_drawing(f, pg);
        lpht::check_drawing(pg, d);
        svg = lpht::render_level_svg(pg, d);
    } else {
        lpht::ProperLevelGraph augmented = pg;
        lpht::ReferenceSets refs;
        if (f.references) {
            lpht::ReferenceSets inserted;
            for (const auto& [t, h] : f.references->inserted) inserted.inserted_edges.push_back({pg->at(t), pg->at(h)});
            augmented = lpht::with_reference_edges(pg, inserted);
            refs = lpht::to_reference_sets(f, augmented);
        } else {
            lpht::ReferenceChoice c = lpht::choose_reference_sets(pg);
            augmented = std::move(c.graph);
            refs = std::move(c.refs);
        }
        lpht::check_reference_sets(augmented, refs);
        const lpht::RadialDrawing d = lpht::to_radial_drawing(f, augmented);
        lpht::check_drawing(augmented, refs, d);
        svg = lpht::render_radial_svg(augmented, refs, d);
    }
    if (out_path.empty()) {
        std::cout << svg;
    } else {
        spill(out_path, svg);
    }
    return Planar;
}

struct CrosscheckArgs {
    std::string corpus;
    std::size_t random = 0;
    bool exhaustive = false;
    std::string max_size = "4x3";
    std::uint64_t seed = 1;
    std::string budget;
    bool as_json = false;
};

int run_crosscheck(const CrosscheckArgs& a) {
    std::vector<std::pair<std::string, lpht::LevelGraph>> instances;
    const auto [k, n] = parse_size(a.max_size);
    if (!a.corpus.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a.corpus)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::ranges::sort(files);
        for (const auto& p : files) instances.emplace_back(p.filename().string(), lpht::read_graph(slurp(p.string())));
    }
    if (a.exhaustive) {
        lpht::CorpusOptions co;
        co.max_levels = k;
        co.max_per_level = n;
        std::size_t i = 0;
        for (auto& g : lpht::exhaustive_corpus(co)) instances.emplace_back("exhaustive#" + std::to_string(i++), g.graph());
    }
    if (a.random > 0) {
        std::mt19937_64 rng(a.seed);
        for (std::size_t i = 0; i < a.random; ++i) {
            instances.emplace_back("random#" + std::to_string(i), lpht::random_proper_graph(rng, k, n).graph());
        }
    }
    if (instances.empty()) throw lpht::Error("nothing to check: give a corpus directory, --random or --exhaustive");

    lpht::CrosscheckOptions o;
    o.budget = budget_from(a.budget);
    o.relabel_seed = a.seed;
    std::size_t level_planar = 0, radial_planar = 0, skipped = 0, failed = 0, errors = 0;
    for (const auto& [name, g] : instances) {
        lpht::InstanceCheck c;
        try {
            c = lpht::crosscheck_instance(g, o);
        } catch (const lpht::Error& e) {
            ++errors;
            std::cerr << name << ": error: " << e.what() << "\n";
            continue;
        }
        if (c.skipped) {
            ++skipped;
            continue;
        }
        level_planar += c.level_planar;
        radial_planar += c.radial_planar;
        if (!c.ok()) {
            ++failed;
            for (const auto& f : c.failures) std::cerr << name << ": " << f << "\n";
            std::cerr << lpht::write_graph_json(g);
        }
    }
    const std::size_t checked = instances.size() - skipped - errors;
    if (a.as_json) {
        std::cout << json{{"instances", instances.size()}, {"checked", checked},  {"skipped", skipped},
                          {"errors", errors},              {"mismatches", failed}, {"level_planar", level_planar},
                          {"radial_planar", radial_planar}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "instances: " << instances.size() << "\nchecked: " << checked << "\nskipped: " << skipped
                  << "\nerrors: " << errors << "\nmismatches: " << failed << "\nlevel planar: " << level_planar
                  << "\nradial planar: " << radial_planar << "\n";
    }
    if (errors > 0) return Failure;
    return failed > 0 ? NonPlanar : Planar;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level and radial level planarity via XOR constraint systems"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Decide planarity by solving the constraint system");
    check_cmd->add_option("mode", check.mode, "level or radial")->required();
    check_cmd->add_option("graph", check.graph, "Graph JSON file")->required();
    auto* full = check_cmd->add_flag("--full", check.full, "Keep transitivity clauses");
    check_cmd->add_flag("--reduced", check.reduced, "XOR equations only (default)")->excludes(full);
    check_cmd->add_option("--witness", check.witness, "Write a Hanani-Tutte drawing of G+ here when planar");
    check_cmd->add_option("--plus-graph", check.plus_graph, "Write G+ here when planar");
    check_cmd->add_option("--budget", check.budget, "Solutions to try in --full mode");
    check_cmd->add_option("--seed", check.seed, "Reference selection seed (radial)");
    check_cmd->add_flag("--json", check.as_json, "One JSON line on stdout");

    std::string emit_mode, emit_graph, stage = "G";
    bool emit_full = false, emit_reduced = false;
    auto* emit_cmd = app.add_subcommand("emit-constraints", "Print a constraint system");
    emit_cmd->add_option("mode", emit_mode, "level or radial")->required();
    emit_cmd->add_option("graph", emit_graph, "Graph JSON file")->required();
    auto* emit_full_flag = emit_cmd->add_flag("--full", emit_full, "Include transitivity clauses");
    emit_cmd->add_flag("--reduced", emit_reduced, "XOR equations only (default)")->excludes(emit_full_flag);
    emit_cmd->add_option("--stage", stage, "G or Gplus");

    std::string oracle_mode, oracle_graph, oracle_budget, oracle_witness;
    std::optional<std::uint64_t> oracle_seed;
    bool oracle_json = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "Decide planarity by exhaustive search");
    oracle_cmd->add_option("mode", oracle_mode, "level or radial")->required();
    oracle_cmd->add_option("graph", oracle_graph, "Graph JSON file")->required();
    oracle_cmd->add_option("--budget", oracle_budget, "Maximum number of states");
    oracle_cmd->add_option("--witness", oracle_witness, "Write the planar drawing here");
    oracle_cmd->add_option("--seed", oracle_seed, "Reference selection seed (radial)");
    oracle_cmd->add_flag("--json", oracle_json, "One JSON line on stdout");

    std::string render_drawing, render_graph, render_out;
    auto* render_cmd = app.add_subcommand("render", "Draw a drawing file as SVG");
    render_cmd->add_option("drawing", render_drawing, "Drawing JSON file")->required();
    render_cmd->add_option("graph", render_graph, "Graph JSON file")->required();
    render_cmd->add_option("--out", render_out, "SVG file (stdout when omitted)");

    CrosscheckArgs cross;
    auto* cross_cmd = app.add_subcommand("crosscheck", "Compare solver and oracle on many instances");
    cross_cmd->add_option("corpus", cross.corpus, "Directory of graph JSON files");
    cross_cmd->add_option("--random", cross.random, "Number of random instances");
    cross_cmd->add_flag("--exhaustive", cross.exhaustive, "Every small proper graph up to --max-size");
    cross_cmd->add_option("--max-size", cross.max_size, "Levels x vertices per level, e.g. 3x3");
    cross_cmd->add_option("--seed", cross.seed, "Random seed");
    cross_cmd->add_option("--budget", cross.budget, "Oracle budget per instance");
    cross_cmd->add_flag("--json", cross.as_json, "One JSON line on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Planar : Failure;
    }

    try {
        if (*check_cmd) return run_check(check);
        if (*emit_cmd) return run_emit(emit_mode, emit_graph, emit_full, stage);
        if (*oracle_cmd) return run_oracle(oracle_mode, oracle_graph, oracle_budget, oracle_witness, oracle_seed, oracle_json);
        if (*render_cmd) return run_render(render_drawing, render_graph, render_out);
        if (*cross_cmd) return run_crosscheck(cross);
    } catch (const lpht::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return OverBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Failure;
}
