#include <complex>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tsfe/analysis.hpp"
#include "tsfe/bernstein.hpp"
#include "tsfe/grid.hpp"
#include "tsfe/harness.hpp"
#include "tsfe/kernel.hpp"
#include "tsfe/solver.hpp"
#include "tsfe/specfun.hpp"

namespace {

struct Common {
    std::string config;
    std::string out_dir = "out";
    unsigned seed = 0;
    bool seed_set = false;
    int threads = 1;  // orchestrator is single-threaded; recorded for reports
};

tsfe::ExperimentConfig load_config(const Common& c, const std::string& suite) {
    tsfe::ExperimentConfig cfg;
    if (!c.config.empty()) {
        cfg = tsfe::ExperimentConfig::from_json_file(c.config);
    } else {
        cfg.suite = suite;
        cfg.alpha = 0.5;
    }
    if (!suite.empty()) cfg.suite = suite;
    if (c.seed_set) cfg.seed = c.seed;
    cfg.validate();
    return cfg;
}

int emit_report(const tsfe::RunReport& rep, const Common& c) {
    tsfe::write_report(rep, c.out_dir);
    for (const auto& chk : rep.checks)
        std::printf("%-32s %s  (value %.6g, bound %.6g)\n", chk.name.c_str(),
                    chk.passed ? "pass" : "FAIL", chk.value, chk.bound);
    std::fprintf(stderr, "suite %s: %s in %.2fs; report in %s/\n",
                 rep.config.suite.c_str(), rep.all_passed() ? "ok" : "FAILED",
                 rep.wall_seconds, c.out_dir.c_str());
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsfe: fundamental solutions and mixed-norm verification for "
                 "time-space fractional equations"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Common common;
    app.add_option("--config", common.config, "JSON experiment config");
    app.add_option("--out-dir", common.out_dir, "report output directory");
    auto* seed_opt = app.add_option("--seed", common.seed, "RNG seed override");
    app.add_option("--threads", common.threads, "thread count (recorded; runner is single-threaded)");

    // ml
    double ml_alpha = 0.5, ml_beta = 1.0, ml_re = -1.0, ml_im = 0.0;
    auto* ml = app.add_subcommand("ml", "evaluate E_{alpha,beta}(z)");
    ml->add_option("--alpha", ml_alpha)->required();
    ml->add_option("--beta", ml_beta);
    ml->add_option("--re", ml_re)->required();
    ml->add_option("--im", ml_im);

    // bernstein
    std::string bs_phi = "power";
    double bs_beta = 1.0, bs_alpha = 0.5, bs_rho = 1.0;
    auto* bs = app.add_subcommand("bernstein", "phi diagnostics: delta0, lambda(rho)");
    bs->add_option("--phi", bs_phi, "linear|power|power_log");
    bs->add_option("--beta", bs_beta);
    bs->add_option("--alpha", bs_alpha);
    bs->add_option("--rho", bs_rho);

    // kernel
    std::string k_mode = "build", k_phi = "power";
    double k_beta = 1.0, k_alpha = 0.5, k_gamma = 1.0, k_t = 1.0, k_L = 20.0;
    int k_n = 256;
    auto* kn = app.add_subcommand("kernel", "build or verify the fundamental solution");
    kn->add_option("mode", k_mode, "build|verify");
    kn->add_option("--phi", k_phi);
    kn->add_option("--beta", k_beta);
    kn->add_option("--alpha", k_alpha);
    kn->add_option("--gamma", k_gamma);
    kn->add_option("--t", k_t);
    kn->add_option("--n", k_n);
    kn->add_option("--L", k_L);

    // solve
    auto* sv = app.add_subcommand("solve", "run the solver suite (manufactured solution, causality, linearity)");

    // verify
    std::string v_suite = "specfun";
    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("--suite", v_suite,
                   "specfun|kernel|solver|lemma34|oscillation|sharp|theorem1|analysis")
        ->required();

    // fixtures
    std::string fx_baseline = "fixtures/baseline.json";
    bool fx_init = false;
    std::string fx_provenance;
    auto* fx = app.add_subcommand("fixtures", "compare (or --init) regression baselines");
    fx->add_option("--baseline", fx_baseline);
    fx->add_flag("--init", fx_init, "write the baseline instead of comparing");
    fx->add_option("--provenance", fx_provenance, "note stored with --init");

    CLI11_PARSE(app, argc, argv);
    common.seed_set = seed_opt->count() > 0;

    try {
        if (ml->parsed()) {
            auto v = tsfe::mittag_leffler({ml_alpha, ml_beta, {ml_re, ml_im}});
            std::printf("E_{%g,%g}(%g%+gi) = %.15g %+.15gi\n", ml_alpha, ml_beta,
                        ml_re, ml_im, v.real(), v.imag());
            return 0;
        }
        if (bs->parsed()) {
            tsfe::ExperimentConfig pc;
            pc.suite = "analysis";
            pc.phi = bs_phi;
            pc.beta = bs_beta;
            pc.alpha = bs_alpha;
            auto phi = pc.make_phi();
            auto sr = tsfe::estimate_delta0(phi, 1e-3, 1e6, 400);
            std::printf("phi=%s beta=%g: delta0_hat=%.6g c1_hat=%.6g "
                        "lambda(%g)=%.6g\n",
                        bs_phi.c_str(), bs_beta, sr.delta0_hat, sr.c1_hat,
                        bs_rho, tsfe::lambda_of_rho(phi, bs_alpha, bs_rho));
            return 0;
        }
        if (kn->parsed()) {
            if (k_mode == "build") {
                tsfe::ExperimentConfig pc;
                pc.suite = "kernel";
                pc.phi = k_phi;
                pc.beta = k_beta;
                pc.alpha = k_alpha;
                auto phi = pc.make_phi();
                tsfe::SpaceTimeGrid g;
                g.d = 1;
                g.n = k_n;
                g.L = k_L;
                g.validate();
                auto ks = tsfe::kernel_fourier(phi, k_alpha, k_gamma, k_t, g);
                std::filesystem::create_directories(common.out_dir);
                std::string base = common.out_dir + "/kernel";
                tsfe::write_field(base + ".bin", ks.field);
                tsfe::export_csv(base + ".csv", ks.field, 0);
                std::printf("kernel written to %s.{bin,csv}%s\n", base.c_str(),
                            ks.alias_warning ? " (alias warning)" : "");
                return 0;
            }
            if (k_mode != "verify") throw tsfe::ConfigError("kernel: mode must be build|verify");
            tsfe::ExperimentConfig cfg = load_config(common, "kernel");
            if (common.config.empty()) {
                cfg.phi = k_phi;
                cfg.beta = k_beta;
                cfg.alpha = k_alpha;
                cfg.gamma = k_gamma;
                cfg.t = k_t;
                cfg.n = k_n;
                cfg.L = k_L;
            }
            return emit_report(tsfe::run(cfg), common);
        }
        if (sv->parsed()) {
            tsfe::ExperimentConfig cfg = load_config(common, "solver");
            if (common.config.empty()) cfg.n_time = 256;
            return emit_report(tsfe::run(cfg), common);
        }
        if (vf->parsed()) {
            tsfe::ExperimentConfig cfg = load_config(common, v_suite);
            return emit_report(tsfe::run(cfg), common);
        }
        if (fx->parsed()) {
            tsfe::ExperimentConfig cfg = load_config(common, "");
            if (common.config.empty())
                throw tsfe::ConfigError("fixtures: --config is required");
            tsfe::RunReport rep = tsfe::run(cfg);
            tsfe::write_report(rep, common.out_dir);
            auto diffs = tsfe::record_fixtures(rep, fx_baseline, fx_init,
                                               fx_provenance);
            if (fx_init)
                std::printf("baseline written to %s\n", fx_baseline.c_str());
            else
                std::printf("fixtures ok: %zu entries within tolerance\n",
                            diffs.size());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
