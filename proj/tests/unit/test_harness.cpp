#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "moyal/harness/config.hpp"
#include "moyal/harness/experiments.hpp"
#include "moyal/harness/report.hpp"

using namespace moyal::harness;
namespace fs = std::filesystem;

namespace {

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "moyal-lab");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("moyal_harness_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing") {
    auto c = parse_config("# comment\nexperiment = residue\ngrid_n = 32  # inline\nrefine_L = 4, 6, 8\nstencil=0.3,0.2,0.1,0.05\n");
    CHECK(c.experiment == "residue");
    CHECK(c.grid_n == 32);
    CHECK(c.refine_L == std::vector<double>{4, 6, 8});
    CHECK(c.stencil.size() == 4);
    CHECK(c.theta0 == 2.0);
    CHECK(parse_config("").grid_L == 12.0);

    CHECK_THROWS_AS(parse_config("gird_n = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid_n = 4\ngrid_n = 6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid_n\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid_n = 4x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid_n = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("d = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("window_lo = 0.5\nwindow_hi = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("stencil = 0.1,0.2,0.3,0.4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = everything\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("wi_N = 10\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/moyal.cfg"), ConfigError);
}

TEST_CASE("config hash") {
    ExperimentConfig a, b;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.out = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    b.seed = a.seed + 1;
    CHECK(config_hash(a) != config_hash(b));
    // the canonical text parses back to the same config
    std::string text = canonical_text(a);
    CHECK(config_hash(parse_config(text)) == config_hash(a));
}

TEST_CASE("report structure") {
    ExperimentConfig cfg;
    Report r("unit", cfg);
    r.value("x", 1.5, "test");
    r.criterion({3, "three", true, 0.1, 1.0, ""});
    r.criterion({1, "one", false, 2.0, 1.0, "detail"});
    r.timing("total", 0.25);
    auto j = r.to_json();
    CHECK(j["config_hash"] == config_hash(cfg));
    CHECK(j["values"]["x"]["config_hash"] == config_hash(cfg));
    CHECK(j["criteria"][0]["id"] == 1);
    CHECK(j["criteria"][1]["config_hash"] == config_hash(cfg));
    CHECK_FALSE(r.all_pass());
    CHECK(r.fingerprint().find("timing") == std::string::npos);
    CHECK(criterion_line(r.criteria()[0]).rfind("criterion 1: FAIL", 0) == 0);
}

TEST_CASE("cli exit codes") {
    auto dir = scratch("cli");
    CHECK(cli({}) == 2);
    CHECK(cli({"bogus"}) == 2);
    CHECK(cli({"seminorms", "--grid-n", "abc"}) == 2);
    std::ofstream((dir / "bad.cfg").string()) << "grid_n = 48\nnot a key value line\n";
    std::string err;
    CHECK(cli({"verify-algebra", "--config", (dir / "bad.cfg").string()}, nullptr, &err) == 2);
    CHECK(err.find("config line 2") != std::string::npos);
    std::ofstream((dir / "unknown.cfg").string()) << "colour = blue\n";
    CHECK(cli({"verify-algebra", "--config", (dir / "unknown.cfg").string()}) == 2);
    CHECK(cli({"verify-algebra", "--truncation", "0"}) == 2);
    std::string help;
    CHECK(cli({"--help"}, &help) == 0);
    CHECK(help.find("verify-algebra") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("degenerate single-projection algebra run") {
    auto dir = scratch("m1");
    std::string out;
    CHECK(cli({"verify-algebra", "--truncation", "1", "--out", dir.string()}, &out) == 0);
    CHECK(out.find("criterion 1: PASS") != std::string::npos);
    CHECK(fs::exists(dir / "verify-algebra.json"));
    fs::remove_all(dir);
}

TEST_CASE("trace-formula command is reproducible") {
    auto d1 = scratch("tf1"), d2 = scratch("tf2");
    ExperimentConfig cfg;
    cfg.experiment = "trace-formula";
    cfg.grid_n = 24;
    cfg.grid_L = 6.0;
    cfg.pairs = 2;
    cfg.out = d1.string();
    auto r1 = run_experiment(cfg);
    cfg.out = d2.string();
    auto r2 = run_experiment(cfg);
    CHECK(r1.fingerprint() == r2.fingerprint());
    CHECK(r1.all_pass());
    auto j = nlohmann::json::parse(std::ifstream((d1 / "trace-formula.json").string()));
    CHECK(j["values"]["trace.zero_f"]["value"] == 0.0);
    CHECK(j["values"]["trace.zero_g"]["value"] == 0.0);
    fs::remove_all(d1);
    fs::remove_all(d2);
}
