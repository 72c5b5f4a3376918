#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tsfe/bernstein.hpp"
#include "tsfe/errors.hpp"

namespace tsfe {

/// Flat declarative run description; parsed strictly (unknown keys rejected).
struct ExperimentConfig {
    std::string suite;          // specfun|kernel|solver|lemma34|oscillation|sharp|theorem1|analysis
    std::string phi = "linear";  // linear|power|power_log
    double beta = 1.0;
    double alpha = 0.5;
    double gamma = 1.0;
    double t = 1.0;
    int d = 1;
    int n = 64;
    double L = 8.0;
    int n_time = 64;
    double T = 1.0;
    std::vector<std::pair<double, double>> pq = {{2.0, 2.0}};
    double a_space = 0.0;
    double a_time = 0.0;
    std::string support = "all";  // oscillation suite case selector
    int trials = 5;
    unsigned seed = 7;
    double tol = 0.0;  // 0 = suite default

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    void validate() const;
    BernsteinFunction make_phi() const;
};

struct CheckResult {
    std::string name;
    bool passed;
    double value;  // measured quantity (error, ratio, growth, ...)
    double bound;  // the limit it was held against
};

/// Deterministic given (config, seed, thread count): serialization excludes
/// wall-clock, which the CLI reports separately.
struct RunReport {
    ExperimentConfig config;
    std::vector<CheckResult> checks;
    std::map<std::string, double> constants;
    double wall_seconds = 0.0;

    bool all_passed() const;
    std::string to_json() const;  // canonical, byte-stable
};

RunReport run(const ExperimentConfig& config);

/// Writes report.json and report.csv under out_dir.
void write_report(const RunReport& report, const std::string& out_dir);

struct FixtureDiff {
    std::string key;
    double measured;
    double baseline;
    double tol;
    bool ok;
};

/// Compares report constants to the stored baseline (JSON with per-fixture
/// tolerances); throws FixtureDrift listing offending entries. With init,
/// (re)writes the baseline from the report instead.
std::vector<FixtureDiff> record_fixtures(const RunReport& report,
                                         const std::string& baseline_path,
                                         bool init = false,
                                         const std::string& provenance = "");

}  // namespace tsfe
