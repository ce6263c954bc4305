#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "json.hpp"
#include "schucode/cli.hpp"

using namespace schucode;
using nlohmann::json;

namespace {

cli::RunResult run(std::vector<std::string> args) { return cli::run(args); }

json parse(const cli::RunResult& r) {
    REQUIRE_FALSE(r.json.empty());
    REQUIRE(r.json.back() == '\n');
    return json::parse(r.json);
}

bool any_notice_contains(const cli::RunResult& r, const std::string& needle) {
    for (const auto& n : r.notices)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

// Runs main_entry with stdout and stderr pointed at /dev/null so file
// writing can be tested without spraying the test log.
int run_main_quietly(const std::vector<std::string>& args) {
    std::vector<std::string> storage = args;
    std::vector<char*> argv;
    storage.insert(storage.begin(), "schucode");
    for (auto& s : storage) argv.push_back(s.data());
    fflush(stdout);
    fflush(stderr);
    const int out = dup(1), err = dup(2);
    const int sink = open("/dev/null", O_WRONLY);
    dup2(sink, 1);
    dup2(sink, 2);
    const int rc = cli::main_entry(static_cast<int>(argv.size()), argv.data());
    fflush(stdout);
    fflush(stderr);
    dup2(out, 1);
    dup2(err, 2);
    close(out);
    close(err);
    close(sink);
    return rc;
}

} // namespace

TEST_CASE("params reports the instance profile") {
    const auto r = run({"params", "--alpha", "2,4", "--q", "3"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.notices.empty());
    CHECK_FALSE(r.text.empty());
    const json j = parse(r);
    CHECK(j["command"] == "params");
    CHECK(j["alpha"] == json::array({2, 4}));
    CHECK(j["ell"] == 2);
    CHECK(j["m"] == 4);
    CHECK(j["original_m"] == 4);
    CHECK(j["q"] == 3);
    CHECK(j["field"]["p"] == 3);
    CHECK(j["field"]["e"] == 1);
    CHECK(j["k_alpha"] == 5);
    CHECK(j["delta"] == 3);
    CHECK(j["d_claim"] == 27);
    CHECK(j["n_alpha"] == 49);
    CHECK(j["a"] == json::array({1, 1, 2, 1}));
    CHECK(j["q0"] == 2.0);

    // One-row tuples have no threshold to report.
    const auto line = run({"params", "--alpha", "3", "--q", "3"});
    REQUIRE(line.exit_code == 0);
    CHECK(parse(line)["q0"].is_null());
}

TEST_CASE("a padded ambient dimension is reduced with a notice") {
    const auto r = run({"params", "--alpha", "2,4", "--q", "2", "--m", "6"});
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.notices.size() == 1);
    CHECK(any_notice_contains(r, "reduced from m = 6 to m = 4"));
    const json j = parse(r);
    CHECK(j["m"] == 4);
    CHECK(j["original_m"] == 6);
    CHECK(j["n_alpha"] == 19);
}

TEST_CASE("exit codes separate bad input, cap overruns and success") {
    CHECK(run({"params", "--alpha", "2,x", "--q", "2"}).exit_code == 2);
    const auto bad_q = run({"params", "--alpha", "2,4", "--q", "6"});
    CHECK(bad_q.exit_code == 2);
    CHECK(any_notice_contains(bad_q, "prime power"));

    const auto capped = run({"code", "--alpha", "2,4", "--q", "2", "--point-cap", "5"});
    CHECK(capped.exit_code == 3);
    CHECK(any_notice_contains(capped, "raise the cap or pass --force"));

    CHECK(run({"frobnicate"}).exit_code == 2);
    CHECK(run({}).exit_code == 2);

    const auto help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK_FALSE(help.text.empty());
    CHECK(run({"code", "--help"}).exit_code == 0);

    // --force lifts any cap.
    CHECK(run({"enumerate", "--alpha", "2,4", "--q", "2", "--point-cap", "5", "--force"})
              .exit_code == 0);
}

TEST_CASE("environment caps apply between defaults and flags") {
    setenv("SCHUCODE_POINT_CAP", "5", 1);
    CHECK(run({"enumerate", "--alpha", "2,4", "--q", "2"}).exit_code == 3);
    // An explicit flag beats the environment.
    CHECK(run({"enumerate", "--alpha", "2,4", "--q", "2", "--point-cap", "100"}).exit_code ==
          0);
    unsetenv("SCHUCODE_POINT_CAP");
    CHECK(run({"enumerate", "--alpha", "2,4", "--q", "2"}).exit_code == 0);
}

TEST_CASE("enumerate lists points, cells and strings") {
    const auto pts = run({"enumerate", "--alpha", "2,4", "--q", "2"});
    REQUIRE(pts.exit_code == 0);
    const json pj = parse(pts);
    CHECK(pj["command"] == "enumerate");
    CHECK(pj["mode"] == "points");
    CHECK(pj["n"] == 19);
    REQUIRE(pj["points"].size() == 19);
    CHECK(pj["points"][0].contains("rows"));
    CHECK(pj["points"][0].contains("pivots"));
    CHECK(pj["points"][0]["plucker"].size() == 5);

    const auto cells = run({"enumerate", "--alpha", "2,4", "--q", "2", "--cells"});
    REQUIRE(cells.exit_code == 0);
    const json cj = parse(cells);
    CHECK(cj["mode"] == "cells");
    CHECK(cj["n"] == 19);
    REQUIRE(cj["cells"].size() == 5);
    std::vector<long> sizes;
    long total = 0;
    for (const auto& cell : cj["cells"]) {
        REQUIRE(cell.contains("beta"));
        CHECK(cell["points"].size() == cell["size"]);
        sizes.push_back(cell["size"].get<long>());
        total += cell["size"].get<long>();
    }
    CHECK(sizes == std::vector<long>{1, 2, 4, 4, 8}); // q^dim per nabla cell
    CHECK(total == 19);

    const auto strings = run({"enumerate", "--alpha", "2,4", "--q", "2", "--strings"});
    REQUIRE(strings.exit_code == 0);
    const json sj = parse(strings);
    CHECK(sj["mode"] == "strings");
    CHECK(sj["n"] == 19);
    CHECK(sj["base"].size() == 7); // points of the alpha' subvariety
    REQUIRE(sj["strings"].size() == 4);
    for (const auto& s : sj["strings"]) {
        CHECK(s["nu"].size() == 2); // m - l values
        CHECK(s["size"] == 3);      // each fiber is a copy of the check variety
        CHECK(s["points"].size() == 3);
    }

    CHECK(run({"enumerate", "--alpha", "2,4", "--q", "2", "--cells", "--strings"})
              .exit_code == 2);
}

TEST_CASE("code reports the scan only when asked") {
    const auto bare = run({"code", "--alpha", "2,4", "--q", "3"});
    REQUIRE(bare.exit_code == 0);
    const json bj = parse(bare);
    CHECK(bj["command"] == "code");
    CHECK(bj["n"] == 49);
    CHECK(bj["k"] == 5);
    CHECK(bj["delta"] == 3);
    CHECK(bj["q_delta"] == 27);
    CHECK(bj["d"].is_null());
    CHECK(bj["e"].is_null());
    CHECK(bj["matches_prediction"].is_null());
    CHECK(bj["minimizers"].is_null());
    CHECK(bj["distribution"].is_null());
    CHECK(bj["mwcc"].is_null());

    const auto scan = run({"code", "--alpha", "2,4", "--q", "3", "--minweight"});
    REQUIRE(scan.exit_code == 0);
    const json sj = parse(scan);
    CHECK(sj["d"] == 27);
    CHECK(sj["e"] == 22);
    CHECK(sj["matches_prediction"] == true);
    REQUIRE(sj["minimizers"].size() == 16);
    for (const auto& mz : sj["minimizers"]) {
        CHECK(mz["weight"] == 27);
        CHECK(mz["coeffs"].size() == 5);
        CHECK_FALSE(mz["section"].get<std::string>().empty());
        CHECK(mz["schubert_decomposable"].is_null());
        CHECK(mz["witness"].is_null());
    }
    CHECK(sj["distribution"].is_null());
    CHECK(sj["mwcc"].is_null());
}

TEST_CASE("the weight distribution sums over all projective classes") {
    const auto r = run({"code", "--alpha", "2,4", "--q", "3", "--distribution"});
    REQUIRE(r.exit_code == 0);
    const json j = parse(r);
    REQUIRE(j["distribution"].is_object());
    CHECK(j["distribution"]["27"] == 16);
    long long total = 0;
    for (const auto& [w, cnt] : j["distribution"].items()) total += cnt.get<long long>();
    CHECK(total == 121); // (3^5 - 1)/2
}

TEST_CASE("the distance assertion flag and its quiet alias") {
    CHECK(run({"code", "--alpha", "2,4", "--q", "3", "--assert-d"}).exit_code == 0);
    const auto alias = run({"code", "--alpha", "2,4", "--q", "3", "--assert-paper"});
    CHECK(alias.exit_code == 0);
    CHECK(parse(alias)["d"] == 27);
}

TEST_CASE("mwcc checks both directions of the characterization") {
    const auto r = run({"mwcc", "--alpha", "2,4", "--q", "3"});
    REQUIRE(r.exit_code == 0);
    const json j = parse(r);
    CHECK(j["command"] == "mwcc");
    CHECK(j["d"] == 27);
    REQUIRE(j["mwcc"].is_object());
    CHECK(j["mwcc"]["counterexamples"] == 0);
    CHECK(j["mwcc"]["sd_sections"] == 16);
    CHECK(j["mwcc"]["sd_weight_violations"] == 0);
    for (const auto& mz : j["minimizers"]) {
        CHECK(mz["schubert_decomposable"] == true);
        REQUIRE(mz["witness"].is_object());
        CHECK(mz["witness"].contains("rows"));
        CHECK(mz["witness"].contains("pivots"));
    }
}

TEST_CASE("the generator matrix exports as plain CSV") {
    const auto r = run({"code", "--alpha", "2,3", "--q", "2", "--generator-csv",
                        "unused-in-run.csv"});
    REQUIRE(r.exit_code == 0);
    REQUIRE_FALSE(r.csv.empty());
    CHECK(r.csv_path == "unused-in-run.csv");
    std::vector<std::string> lines;
    std::istringstream is(r.csv);
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    REQUIRE(lines.size() == 3); // k rows
    for (const auto& line : lines)
        CHECK(std::count(line.begin(), line.end(), ',') == 6); // n = 7 columns
}

TEST_CASE("main_entry writes the requested files and reports write failures") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "schucode-cli-test";
    fs::create_directories(dir);
    const fs::path jpath = dir / "out.json";
    const fs::path cpath = dir / "gen.csv";

    const int rc = run_main_quietly({"code", "--alpha", "2,3", "--q", "2", "--minweight",
                                     "--json", jpath.string(), "--generator-csv",
                                     cpath.string()});
    CHECK(rc == 0);
    REQUIRE(fs::exists(jpath));
    REQUIRE(fs::exists(cpath));

    // The file on disk is byte-identical to the in-process result.
    const auto direct = run({"code", "--alpha", "2,3", "--q", "2", "--minweight",
                             "--json", jpath.string(), "--generator-csv", cpath.string()});
    std::ifstream in(jpath, std::ios::binary);
    const std::string disk((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    CHECK(disk == direct.json);

    CHECK(run_main_quietly({"params", "--alpha", "2,4", "--q", "2", "--json",
                            "/nonexistent-dir-zz/out.json"}) == 2);
    fs::remove_all(dir);
}

TEST_CASE("verify emits a worker-free deterministic report") {
    const std::vector<std::string> base = {"verify", "--alpha", "2,4",
                                           "--q",    "2",      "--q", "3"};
    const auto a = run(base);
    REQUIRE(a.exit_code == 0);
    const json j = parse(a);
    CHECK(j["command"] == "verify");
    CHECK(j["grid"]["type"] == "explicit");
    CHECK(j["grid"]["instances"].size() == 2);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["passed"].get<long>() > 0);
    CHECK(j["results"].size() ==
          j["summary"]["passed"].get<size_t>() + j["summary"]["failed"].get<size_t>() +
              j["summary"]["skipped"].get<size_t>());
    // Worker count is an execution detail: it never appears in the JSON,
    // and changing it changes nothing.
    CHECK(a.json.find("\"workers\"") == std::string::npos);
    const auto again = run(base);
    CHECK(again.json == a.json);
    auto with_workers = base;
    with_workers.insert(with_workers.end(), {"--workers", "4"});
    CHECK(run(with_workers).json == a.json);
}

TEST_CASE("verify selects check families and product grids") {
    const auto q0 = run({"verify", "--checks", "q0"});
    REQUIRE(q0.exit_code == 0);
    const json qj = parse(q0);
    REQUIRE(qj["results"].size() == 1);
    CHECK(qj["results"][0]["check_id"] == "q0.profile");
    CHECK(qj["results"][0]["status"] == "pass");

    const auto grid = run({"verify", "--max-m", "4", "--checks", "count,ineq"});
    REQUIRE(grid.exit_code == 0);
    const json gj = parse(grid);
    CHECK(gj["grid"]["type"] == "product");
    CHECK(gj["grid"]["max_m"] == 4);
    CHECK(gj["summary"]["failed"] == 0);
    CHECK(gj["results"].size() > 0);

    const auto seeded = run({"verify", "--alpha", "2,4", "--q", "3", "--checks", "dc",
                             "--seed", "5", "--dc-draws", "10"});
    REQUIRE(seeded.exit_code == 0);
    const json sj = parse(seeded);
    REQUIRE(sj["results"].size() == 1);
    CHECK(sj["results"][0]["check_id"] == "dc.bound");
    CHECK(sj["results"][0]["seed"] == 5);

    CHECK(run({"verify", "--alpha", "2,4"}).exit_code == 2);
    CHECK(run({"verify", "--checks", "banana"}).exit_code == 2);
}
