#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string data(const std::string& name) { return std::string(LPHT_DATA_DIR) + "/" + name; }

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + LPHT_CLI + "' " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (const std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("check exit codes") {
    CHECK(run("check level " + data("k22.json")).code == 1);
    CHECK(run("check radial " + data("k22.json")).code == 0);
    CHECK(run("check level " + data("path.json")).code == 0);
    CHECK(run("check level " + data("long_edge.json")).code == 0);
    CHECK(run("check level " + data("k22.json") + " --full").code == 1);
    CHECK(run("check level /nonexistent.json").code == 2);
    CHECK(run("check spiral " + data("k22.json")).code == 2);
    CHECK(run("check").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("check --json") {
    const Run r = run("check level " + data("k22.json") + " --json");
    REQUIRE(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["planar"] == false);
    CHECK(j["variables"] == 4);
    CHECK(j["certificate"].size() == 3);
}

TEST_CASE("witness output") {
    const std::string path = "/tmp/lpht_cli_witness.json";
    const std::string plus = "/tmp/lpht_cli_plus.json";
    REQUIRE(run("check radial " + data("k22.json") + " --witness " + path + " --plus-graph " + plus).code == 0);
    const auto w = nlohmann::json::parse(slurp(path));
    CHECK(w["kind"] == "radial");
    CHECK(run("render " + path + " " + plus).code == 0);
    // The drawing is of G+, not of the input.
    CHECK(run("render " + path + " " + data("k22.json")).code == 2);
    std::remove(path.c_str());
    std::remove(plus.c_str());
}

TEST_CASE("oracle") {
    const Run level = run("oracle level " + data("k22.json") + " --json");
    CHECK(level.code == 1);
    CHECK(nlohmann::json::parse(level.out)["states"] == 4);
    const Run radial = run("oracle radial " + data("k22.json") + " --json");
    CHECK(radial.code == 0);
    CHECK(nlohmann::json::parse(radial.out)["witness"]["kind"] == "radial");
}

TEST_CASE("budget flag and environment") {
    CHECK(run("oracle level " + data("grid.json") + " --budget 10").code == 3);
    CHECK(run("oracle level " + data("grid.json"), "PLANARITY_HT_BUDGET=10").code == 3);
    CHECK(run("oracle level " + data("grid.json") + " --budget 1000000", "PLANARITY_HT_BUDGET=10").code != 3);
    CHECK(run("oracle level " + data("grid.json"), "PLANARITY_HT_BUDGET=ten").code == 2);
}

TEST_CASE("emit-constraints") {
    const Run full = run("emit-constraints level " + data("triple.json") + " --full");
    REQUIRE(full.code == 0);
    std::size_t xors = 0, clauses = 0;
    std::istringstream in(full.out);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find(" -> ") != std::string::npos) ++clauses;
        else if (line.find(" = ") != std::string::npos) ++xors;
    }
    CHECK(xors == 3);
    CHECK(clauses == 6);
    const Run plus = run("emit-constraints level " + data("pair.json") + " --stage Gplus");
    CHECK(plus.code == 0);
    CHECK(plus.out.find("'") != std::string::npos);
}

TEST_CASE("render") {
    const std::string drawing = "/tmp/lpht_cli_drawing.json";
    std::ofstream(drawing) << R"({"kind": "level", "orders": {"1": ["a", "b"], "2": ["c", "d"]}})";
    const Run r = run("render " + drawing + " " + data("k22.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("<svg") == 0);
    std::ofstream(drawing) << R"({"kind": "level", "orders": {"1": ["a"], "2": ["c", "d"]}})";
    CHECK(run("render " + drawing + " " + data("k22.json")).code == 2);
    std::remove(drawing.c_str());
}

TEST_CASE("crosscheck") {
    const Run r = run("crosscheck --random 1000 --seed 7 --json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["instances"] == 1000);
    CHECK(j["mismatches"] == 0);
    CHECK(j["errors"] == 0);
    CHECK(j["checked"].get<int>() + j["skipped"].get<int>() == 1000);

    const Run all = run("crosscheck --exhaustive --max-size 3x3 --json");
    REQUIRE(all.code == 0);
    CHECK(nlohmann::json::parse(all.out)["mismatches"] == 0);

    const std::string dir = "/tmp/lpht_cli_corpus";
    std::filesystem::create_directories(dir);
    std::filesystem::copy_file(data("k22.json"), dir + "/k22.json", std::filesystem::copy_options::overwrite_existing);
    const Run k = run("crosscheck " + dir + " --json");
    CHECK(k.code == 0);
    const auto kj = nlohmann::json::parse(k.out);
    CHECK(kj["level_planar"] == 0);
    CHECK(kj["radial_planar"] == 1);
    std::filesystem::remove_all(dir);

    CHECK(run("crosscheck " + std::string(LPHT_DATA_DIR) + " --json").code == 0);
}
