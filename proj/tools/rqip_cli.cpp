// Command-line surface: sampling, bound evaluation, net construction,
// isometry checking, sample-complexity calculation, and the studies.
// Exit codes: 0 success, 1 usage error, 2 domain/validation error,
// 3 runtime/capacity error.
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rqip/check.hpp"
#include "rqip/concentration.hpp"
#include "rqip/errors.hpp"
#include "rqip/experiments.hpp"
#include "rqip/sparse.hpp"
#include "rqip/stable.hpp"

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const auto path = fs::path(dir) / name;
    std::ofstream out(path);
    if (!out) throw rqip::CapacityError("cannot open " + path.string());
    std::cout << "wrote " << path.string() << "\n";
    return out;
}

struct CommonDomain {
    double alpha = 0.5;
    double gamma = 1.0;
    double p = 0.25;
};

void add_law_flags(CLI::App* cmd, CommonDomain& d, bool with_p = true) {
    cmd->add_option("--alpha", d.alpha, "stability index, in (0,1); sampling validated on [0.05, 0.99]");
    cmd->add_option("--gamma", d.gamma, "scale parameter, > 0");
    if (with_p) cmd->add_option("--p", d.p, "fractional moment order, p in (0, alpha)");
}

int run(int argc, char** argv) {
    CLI::App app{"Monte-Carlo toolkit for fractional-moment isometry of symmetric "
                 "alpha-stable random matrices"};
    app.require_subcommand(1);

    // --- sample ---
    auto* sample = app.add_subcommand("sample", "draw SaS(gamma) variates to CSV");
    CommonDomain sample_d;
    add_law_flags(sample, sample_d, false);
    std::uint64_t sample_n = 1000;
    std::uint64_t sample_seed = 0;
    std::string sample_out = ".";
    sample->add_option("--n", sample_n, "number of variates, >= 1");
    sample->add_option("--seed", sample_seed, "master seed")->required();
    sample->add_option("--out", sample_out, "output directory (default .)");

    // --- moments ---
    auto* moments = app.add_subcommand("moments", "closed-form moment constant C_{alpha,p}, "
                                                  "optionally with a Monte-Carlo estimate");
    CommonDomain mom_d;
    add_law_flags(moments, mom_d);
    std::uint64_t mom_n = 0;
    std::uint64_t mom_seed = 0;
    moments->add_option("--n", mom_n, "Monte-Carlo draws (0 = closed form only)");
    moments->add_option("--seed", mom_seed, "master seed (required when --n > 0)");

    // --- bounds ---
    auto* bounds = app.add_subcommand("bounds", "concentration-bound terms at (epsilon, M)");
    CommonDomain bnd_d;
    add_law_flags(bounds, bnd_d);
    double bnd_c0 = 0.25, bnd_cprime = 1.0, bnd_eps = 0.5;
    std::uint64_t bnd_m = 1024;
    std::string bnd_show = "all";
    bounds->add_option("--c0", bnd_c0, "truncation exponent, in (0, 1/2); default 0.25");
    bounds->add_option("--Cprime", bnd_cprime, "free constant C' > 0; default 1");
    bounds->add_option("--eps", bnd_eps, "deviation epsilon > 0");
    bounds->add_option("--M", bnd_m, "sample count M >= 1");
    bounds->add_option("--show", bnd_show, "one of: T, hoeffding, tail, total, all");

    // --- net ---
    auto* net_cmd = app.add_subcommand("net", "build and verify an epsilon-net of the sparse "
                                              "l_alpha ball or sphere");
    CommonDomain net_d;
    add_law_flags(net_cmd, net_d, false);
    double net_eps = 0.25;
    int net_k = 2, net_n = 5;
    std::string net_target = "unit_ball";
    std::uint64_t net_budget = 5000, net_seed = 0, net_verify = 0;
    std::string net_out;
    net_cmd->add_option("--eps", net_eps, "net radius, in (0,1)");
    net_cmd->add_option("--k", net_k, "sparsity, 1 <= k <= N");
    net_cmd->add_option("--N", net_n, "ambient dimension");
    net_cmd->add_option("--target", net_target, "unit_ball or unit_sphere");
    net_cmd->add_option("--budget", net_budget, "consecutive-rejection budget per support");
    net_cmd->add_option("--verify", net_verify, "coverage-check trials (0 = skip)");
    net_cmd->add_option("--seed", net_seed, "master seed")->required();
    net_cmd->add_option("--out", net_out, "output directory for net.json");

    // --- rqip-check ---
    auto* check = app.add_subcommand("rqip-check", "empirical isometry check of a fresh "
                                                   "SaS measurement matrix");
    CommonDomain chk_d;
    add_law_flags(check, chk_d);
    double chk_delta = 0.5;
    int chk_k = 1, chk_n = 8;
    std::uint64_t chk_m = 100000, chk_seed = 0, chk_dirs = 10000, chk_budget = 5000;
    std::string chk_strategy = "net", chk_out;
    check->add_option("--delta", chk_delta, "target deviation, delta in (0,1)");
    check->add_option("--k", chk_k, "sparsity");
    check->add_option("--N", chk_n, "signal dimension");
    check->add_option("--M", chk_m, "measurement rows");
    check->add_option("--strategy", chk_strategy, "net, random_directions, or brute_force_k1");
    check->add_option("--directions", chk_dirs, "random directions (random_directions strategy)");
    check->add_option("--budget", chk_budget, "net rejection budget (net strategy)");
    check->add_option("--seed", chk_seed, "master seed")->required();
    check->add_option("--out", chk_out, "output directory for rqip_report.json");

    // --- complexity ---
    auto* cx = app.add_subcommand("complexity", "row-count threshold of the sample-complexity "
                                                "bound (log10, convention-dependent C_con)");
    CommonDomain cx_d;
    add_law_flags(cx, cx_d);
    double cx_delta = 0.5, cx_eta = 0.5, cx_c0 = 0.25, cx_ccon = 1.0;
    int cx_k = 1;
    std::uint64_t cx_n = 4;
    std::string cx_mode = "eN_over_k";
    cx->add_option("--delta", cx_delta, "target deviation, in (0,1)");
    cx->add_option("--eta", cx_eta, "failure probability, in (0,1)");
    cx->add_option("--N", cx_n, "signal dimension");
    cx->add_option("--k", cx_k, "sparsity");
    cx->add_option("--c0", cx_c0, "truncation exponent, in (0, 1/2)");
    cx->add_option("--Ccon", cx_ccon, "envelope constant C_con > 0 (default 1)");
    cx->add_option("--mode", cx_mode, "binomial_exact or eN_over_k");

    // --- study ---
    auto* study = app.add_subcommand("study", "run a reproducible study, writing CSV + manifest "
                                              "(+ SVG decay plots for concentration)");
    std::string study_name = "moments", study_out = "study_out";
    std::uint64_t study_seed = 0;
    study->add_option("--study", study_name, "moments, concentration, nets, or rqip");
    study->add_option("--seed", study_seed, "master seed")->required();
    study->add_option("--out", study_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (sample->parsed()) {
        const rqip::StableLaw law(sample_d.alpha, sample_d.gamma);
        if (sample_n == 0) throw rqip::DomainError("--n must be >= 1");
        const auto batch = rqip::draw_stable(law, sample_n, rqip::Rng(sample_seed, "cli-sample"));
        auto out = open_out(sample_out, "sample.csv");
        rqip::write_csv(batch, out);
    } else if (moments->parsed()) {
        const double closed = rqip::stable_abs_moment_constant(mom_d.alpha, mom_d.p) *
                              std::pow(mom_d.gamma, mom_d.p);
        std::cout << fmt::format("closed_form = {:.12g}\n", closed);
        if (mom_n > 0) {
            const rqip::StableLaw law(mom_d.alpha, mom_d.gamma);
            const auto batch =
                rqip::draw_stable(law, mom_n, rqip::Rng(mom_seed, "cli-moments"));
            const double emp = rqip::empirical_abs_moment(batch, mom_d.p);
            std::cout << fmt::format("empirical   = {:.12g}  (rel_err = {:.3g})\n", emp,
                                     std::fabs(emp / closed - 1.0));
        }
    } else if (bounds->parsed()) {
        const rqip::ConcentrationParams params(rqip::StableLaw(bnd_d.alpha, bnd_d.gamma),
                                               bnd_d.p, bnd_c0, bnd_cprime);
        const double t = rqip::truncation_threshold(params, bnd_eps, bnd_m);
        const auto b = rqip::combined_bound(params, bnd_eps, bnd_m);
        if (bnd_show == "T" || bnd_show == "all") std::cout << fmt::format("T = {:.12g}\n", t);
        if (bnd_show == "hoeffding" || bnd_show == "all")
            std::cout << fmt::format("hoeffding = {:.12g}\n", b.hoeffding);
        if (bnd_show == "tail" || bnd_show == "all")
            std::cout << fmt::format("tail = {:.12g}\n", b.tail);
        if (bnd_show == "total" || bnd_show == "all")
            std::cout << fmt::format("total = {:.12g}\n", b.total);
        if (bnd_show != "T" && bnd_show != "hoeffding" && bnd_show != "tail" &&
            bnd_show != "total" && bnd_show != "all") {
            throw rqip::DomainError("--show must be one of: T, hoeffding, tail, total, all");
        }
    } else if (net_cmd->parsed()) {
        rqip::NetTarget target;
        if (net_target == "unit_ball") {
            target = rqip::NetTarget::unit_ball;
        } else if (net_target == "unit_sphere") {
            target = rqip::NetTarget::unit_sphere;
        } else {
            throw rqip::DomainError("--target must be unit_ball or unit_sphere");
        }
        const auto net = rqip::build_net(net_d.alpha, net_eps, net_k, net_n, target, net_budget,
                                         rqip::Rng(net_seed, "cli-net"));
        const auto bound = rqip::covering_bound(net_d.alpha, net_eps, net_k, net_n);
        std::cout << fmt::format("net_size = {}  (covering bound {:.6g})\n", net.points.size(),
                                 bound.value);
        if (net_verify > 0) {
            const auto cov = rqip::verify_net(net, net_verify,
                                              rqip::Rng(net_seed, "cli-net-verify"));
            std::cout << fmt::format("coverage = {:.6g}  worst_gap = {:.6g}\n",
                                     cov.coverage_rate, cov.worst_gap);
        }
        if (!net_out.empty()) {
            auto out = open_out(net_out, "net.json");
            rqip::write_json(net, out);
        }
    } else if (check->parsed()) {
        const rqip::StableLaw law(chk_d.alpha, chk_d.gamma);
        const auto m = rqip::generate_matrix(law, chk_m, chk_n,
                                             fmt::format("cli/{}", chk_seed));
        rqip::RqipConfig cfg{};
        cfg.k = chk_k;
        cfg.delta = chk_delta;
        cfg.p = chk_d.p;
        cfg.strategy = rqip::strategy_from_string(chk_strategy);
        cfg.net_budget = chk_budget;
        cfg.direction_count = chk_dirs;
        cfg.seed = chk_seed;
        const auto report = rqip::rqip_check(m, cfg);
        std::cout << fmt::format("passed = {}  max_deviation = {:.12g}  vectors_tested = {}\n",
                                 report.passed, report.max_deviation, report.vectors_tested);
        if (!chk_out.empty()) {
            auto out = open_out(chk_out, "rqip_report.json");
            rqip::write_json(report, m, out);
        }
    } else if (cx->parsed()) {
        rqip::ComplexityMode mode;
        if (cx_mode == "binomial_exact") {
            mode = rqip::ComplexityMode::binomial_exact;
        } else if (cx_mode == "eN_over_k") {
            mode = rqip::ComplexityMode::eN_over_k;
        } else {
            throw rqip::DomainError("--mode must be binomial_exact or eN_over_k");
        }
        if (!(cx_c0 > 0.0 && cx_c0 < 0.5)) throw rqip::DomainError("--c0 must be in (0, 1/2)");
        const rqip::ComplexityInputs inputs{cx_n,
                                            cx_k,
                                            cx_delta,
                                            cx_eta,
                                            cx_d.p,
                                            cx_d.alpha,
                                            cx_c0 * (cx_d.alpha / cx_d.p - 1.0),
                                            cx_ccon};
        const auto res = rqip::sample_complexity(inputs, mode);
        std::cout << fmt::format("log10_M = {:.6f}\n", res.log10_m);
        if (res.m_if_representable) {
            std::cout << "M = " << rqip::u128_to_string(*res.m_if_representable) << "\n";
        }
    } else if (study->parsed()) {
        rqip::StudyConfig cfg;
        cfg.study = rqip::study_from_string(study_name);
        cfg.master_seed = study_seed;
        cfg.output_dir = study_out;
        const auto result = rqip::run_study(cfg);
        std::cout << "wrote " << result.csv_path << "\n";
        std::cout << "wrote " << result.manifest_path << "\n";
        for (const auto& svg : result.svg_paths) std::cout << "wrote " << svg << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rqip::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const rqip::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
