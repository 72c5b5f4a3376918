#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tsfe/harness.hpp"

using namespace tsfe;

namespace {
std::string tmp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("config parsing: defaults, overrides, strictness") {
    auto c = ExperimentConfig::from_json_text(
        R"({"suite":"specfun","alpha":0.4,"trials":3,"seed":11})");
    CHECK(c.suite == "specfun");
    CHECK(c.alpha == 0.4);
    CHECK(c.trials == 3);
    CHECK(c.seed == 11u);
    CHECK(c.phi == "linear");  // default
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"suite":"specfun"})"),
                    ConfigError);  // missing alpha
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(
            R"({"suite":"specfun","alpha":0.5,"bogus":1})"),
        ConfigError);  // unknown key
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"suite":"nope","alpha":0.5})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"suite":"specfun","alpha":1.5})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"suite":"theorem1","alpha":0.5,"pq":[[2]]})"),
                    ConfigError);
}

TEST_CASE("specfun suite passes and reports are byte-deterministic") {
    ExperimentConfig cfg;
    cfg.suite = "specfun";
    cfg.alpha = 0.5;
    cfg.seed = 3;
    RunReport a = run(cfg);
    RunReport b = run(cfg);
    CHECK(a.all_passed());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("write_report emits json and csv") {
    ExperimentConfig cfg;
    cfg.suite = "specfun";
    cfg.alpha = 0.6;
    RunReport r = run(cfg);
    std::string dir = tmp_path("tsfe_report_dir");
    write_report(r, dir);
    CHECK(std::filesystem::exists(dir + "/report.json"));
    CHECK(std::filesystem::exists(dir + "/report.csv"));
    std::ifstream j1(dir + "/report.json");
    std::string text((std::istreambuf_iterator<char>(j1)),
                     std::istreambuf_iterator<char>());
    CHECK(text == r.to_json());
    std::filesystem::remove_all(dir);
}

TEST_CASE("fixture baselines: init, clean compare, drift") {
    ExperimentConfig cfg;
    cfg.suite = "specfun";
    cfg.alpha = 0.5;
    RunReport r = run(cfg);
    std::string path = tmp_path("tsfe_baseline.json");
    record_fixtures(r, path, true, "unit test");
    auto diffs = record_fixtures(r, path);  // identical rerun: no drift
    CHECK(diffs.size() == r.constants.size());
    for (const auto& d : diffs) CHECK(d.ok);
    RunReport shifted = r;
    shifted.constants.begin()->second += 1.0;
    CHECK_THROWS_AS(record_fixtures(shifted, path), FixtureDrift);
    CHECK_THROWS_AS(record_fixtures(r, tmp_path("tsfe_missing.json")),
                    FixtureDrift);
    std::remove(path.c_str());
}

TEST_CASE("solver suite runs green at small scale") {
    ExperimentConfig cfg;
    cfg.suite = "solver";
    cfg.alpha = 0.5;
    cfg.phi = "power";
    cfg.beta = 1.0;
    cfg.n = 16;
    cfg.n_time = 256;
    RunReport r = run(cfg);
    CHECK(r.all_passed());
}

TEST_CASE("analysis suite runs green at small scale") {
    ExperimentConfig cfg;
    cfg.suite = "analysis";
    cfg.alpha = 0.5;
    cfg.n = 128;
    cfg.n_time = 16;
    cfg.trials = 2;
    RunReport r = run(cfg);
    CHECK(r.all_passed());
}

TEST_SUITE_END();
