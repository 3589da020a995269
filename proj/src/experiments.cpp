#include "rqip/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fstream>

#include "rqip/errors.hpp"
#include "rqip/svg.hpp"

namespace rqip {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
    return fmt::format("{:.17g}", v);
}

nlohmann::json environment_stamp(const StudyConfig& cfg) {
    const auto now = std::chrono::system_clock::now();
    return {{"version", kVersion},
            {"master_seed", cfg.master_seed},
            {"timestamp", fmt::format("{:%FT%TZ}", std::chrono::floor<std::chrono::seconds>(now))}};
}

void write_outputs(StudyResult& result, const StudyConfig& cfg,
                   const std::vector<std::pair<std::string, std::string>>& svg_requests) {
    if (cfg.output_dir.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const std::string stem = to_string(result.study);
    result.csv_path = (fs::path(cfg.output_dir) / (stem + ".csv")).string();
    result.manifest_path = (fs::path(cfg.output_dir) / (stem + "_manifest.json")).string();
    std::ofstream(result.csv_path) << result.csv;
    std::ofstream(result.manifest_path) << result.manifest.dump(2) << "\n";
    for (const auto& [name, _] : svg_requests) result.svg_paths.push_back(name);
}

std::string cell_error(const std::string& study, std::size_t cell, const std::exception& e) {
    return fmt::format("{} study, cell {}: {}", study, cell, e.what());
}

}  // namespace

std::string to_string(Study s) {
    switch (s) {
        case Study::moments: return "moments";
        case Study::concentration: return "concentration";
        case Study::nets: return "nets";
        case Study::rqip: return "rqip";
    }
    return "?";
}

Study study_from_string(const std::string& name) {
    if (name == "moments") return Study::moments;
    if (name == "concentration") return Study::concentration;
    if (name == "nets") return Study::nets;
    if (name == "rqip") return Study::rqip;
    throw DomainError("unknown study \"" + name + "\"");
}

StudyResult run_moment_study(const StudyConfig& cfg) {
    const auto& sc = cfg.moments;
    if (sc.cells.empty()) throw DomainError("moment study: empty grid");

    StudyResult result{Study::moments, "alpha,p,gamma,M,empirical,closed_form,rel_err\n", {}, {}, {}, {}};
    result.manifest = {{"study", "moments"},
                       {"environment", environment_stamp(cfg)},
                       {"rows", sc.rows},
                       {"dim", sc.dim},
                       {"cells", nlohmann::json::array()}};

    for (std::size_t c = 0; c < sc.cells.size(); ++c) {
        const auto& cell = sc.cells[c];
        try {
            const StableLaw law(cell.alpha, cell.gamma);
            const std::string label = fmt::format("{}/moments/{}", cfg.master_seed, c);
            const MeasurementMatrix m = generate_matrix(law, sc.rows, sc.dim, label);

            SparseVector x = [&] {
                if (cell.sparsity == 1) {
                    std::vector<double> e(sc.dim, 0.0);
                    e[0] = 1.0;
                    return SparseVector(std::move(e), 1);
                }
                Rng stream = Rng(cfg.master_seed, "moments").child(c);
                const auto support = random_support(sc.dim, cell.sparsity, stream);
                const auto values = sample_on_alpha_sphere(cell.sparsity, cell.alpha, stream);
                std::vector<double> dense(sc.dim, 0.0);
                for (std::size_t i = 0; i < support.size(); ++i) dense[support[i]] = values[i];
                return SparseVector(std::move(dense), cell.sparsity);
            }();

            const double empirical = moment_stat(m, x, cell.p);
            const double closed = stable_abs_moment_constant(cell.alpha, cell.p) *
                                  std::pow(cell.gamma * alpha_quasinorm(x, cell.alpha), cell.p);
            const double rel_err = std::fabs(empirical / closed - 1.0);
            result.csv += fmt::format("{},{},{},{},{},{},{}\n", num(cell.alpha), num(cell.p),
                                      num(cell.gamma), sc.rows, num(empirical), num(closed),
                                      num(rel_err));
            result.manifest["cells"].push_back({{"index", c},
                                                {"alpha", cell.alpha},
                                                {"p", cell.p},
                                                {"gamma", cell.gamma},
                                                {"sparsity", cell.sparsity},
                                                {"seed_label", label}});
        } catch (const DomainError& e) {
            throw DomainError(cell_error("moments", c, e));
        }
    }
    write_outputs(result, cfg, {});
    return result;
}

StudyResult run_concentration_study(const StudyConfig& cfg) {
    const auto& sc = cfg.concentration;
    if (sc.cells.empty() || sc.m_grid.empty()) throw DomainError("concentration study: empty grid");
    if (sc.trials < 100) throw DomainError("concentration study: trials must be >= 100");

    StudyResult result{Study::concentration,
                       "alpha,p,epsilon,M,p_hat,std_err,bound_total,bound_hoeffding,bound_tail\n",
                       {},
                       {},
                       {},
                       {}};
    result.manifest = {{"study", "concentration"},
                       {"environment", environment_stamp(cfg)},
                       {"trials", sc.trials},
                       {"c0", sc.c0},
                       {"c_prime", sc.c_prime},
                       {"cells", nlohmann::json::array()}};

    std::vector<std::pair<std::string, std::string>> svgs;
    Rng root(cfg.master_seed, "concentration");

    for (std::size_t c = 0; c < sc.cells.size(); ++c) {
        const auto& cell = sc.cells[c];
        try {
            const ConcentrationParams params(StableLaw(cell.alpha, sc.gamma), cell.p, sc.c0,
                                             sc.c_prime);
            const double mean = stable_abs_moment_constant(cell.alpha, cell.p) *
                                std::pow(sc.gamma, cell.p);
            const double epsilon = cell.epsilon_factor * mean;
            Rng cell_stream = root.child(c);

            DeviationSeries series{epsilon, {}};
            double c_con_frozen = 0.0;
            std::int64_t tail_regime_min_m = -1;
            PlotCurve empirical_curve{"log10 p_hat", "#1f77b4", {}};
            PlotCurve bound_curve{"log10 bound", "#d62728", {}};

            for (std::size_t mi = 0; mi < sc.m_grid.size(); ++mi) {
                const std::uint64_t m = sc.m_grid[mi];
                const auto est = estimate_deviation_probability(params, epsilon, m, sc.trials,
                                                                cell_stream.child(mi));
                const auto bound = combined_bound(params, epsilon, m);
                series.rows.push_back({m, est.p_hat, sc.trials, est.std_err});
                result.csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(cell.alpha),
                                          num(cell.p), num(epsilon), m, num(est.p_hat),
                                          num(est.std_err), num(bound.total),
                                          num(bound.hoeffding), num(bound.tail));
                c_con_frozen = std::max(
                    c_con_frozen,
                    bound.total * std::pow(static_cast<double>(m), params.c_con()));
                if (tail_regime_min_m < 0) {
                    const double t = truncation_threshold(params, epsilon, m);
                    const double disc = tail_regime_discrepancy(
                        params, t, sc.tail_diagnostic_draws, cell_stream.child("tail-" + std::to_string(mi)));
                    if (disc <= 0.25) tail_regime_min_m = static_cast<std::int64_t>(m);
                }
                const double lm = std::log10(static_cast<double>(m));
                if (est.p_hat > 0.0) empirical_curve.points.emplace_back(lm, std::log10(est.p_hat));
                bound_curve.points.emplace_back(lm, std::log10(bound.total));
            }

            nlohmann::json cell_json = {{"index", c},
                                        {"alpha", cell.alpha},
                                        {"p", cell.p},
                                        {"epsilon", epsilon},
                                        {"c_con", params.c_con()},
                                        {"C_con_frozen", c_con_frozen},
                                        {"tail_regime_min_M", tail_regime_min_m}};
            try {
                const DecayFit fit = fit_decay_exponent(series);
                cell_json["fit"] = {{"slope", fit.slope},
                                    {"intercept", fit.intercept},
                                    {"r_squared", fit.r_squared},
                                    {"excluded_rows", fit.excluded_rows}};
            } catch (const DomainError& e) {
                cell_json["fit_error"] = e.what();
            }
            result.manifest["cells"].push_back(cell_json);

            if (!cfg.output_dir.empty()) {
                namespace fs = std::filesystem;
                fs::create_directories(cfg.output_dir);
                const std::string svg_path =
                    (fs::path(cfg.output_dir) / fmt::format("concentration_cell{}.svg", c))
                        .string();
                write_svg_plot(svg_path,
                               fmt::format("deviation probability decay (alpha={}, p={})",
                                           cell.alpha, cell.p),
                               "log10 M", "log10 probability", {empirical_curve, bound_curve});
                svgs.emplace_back(svg_path, "");
                result.svg_paths.push_back(svg_path);
            }
        } catch (const DomainError& e) {
            throw DomainError(cell_error("concentration", c, e));
        }
    }
    write_outputs(result, cfg, {});
    return result;
}

StudyResult run_net_and_rqip_study(const StudyConfig& cfg) {
    const auto& sc = cfg.nets;
    if (sc.cells.empty()) throw DomainError("net study: empty grid");

    StudyResult result{Study::nets,
                       "alpha,k,N,epsilon,net_size,cover_bound,coverage,max_deviation,passed,"
                       "log10_M_required,M_used\n",
                       {},
                       {},
                       {},
                       {}};
    result.manifest = {{"study", "nets"},
                       {"environment", environment_stamp(cfg)},
                       {"budget", sc.budget},
                       {"verify_trials", sc.verify_trials},
                       {"eta", sc.eta},
                       {"cells", nlohmann::json::array()}};

    Rng root(cfg.master_seed, "nets");

    for (std::size_t c = 0; c < sc.cells.size(); ++c) {
        const auto& cell = sc.cells[c];
        try {
            const EpsilonNet net = build_net(cell.alpha, cell.epsilon, cell.k, cell.dim,
                                             NetTarget::unit_ball, sc.budget, root.child(c));
            const auto bound = covering_bound(cell.alpha, cell.epsilon, cell.k, cell.dim);
            const auto coverage = verify_net(net, sc.verify_trials,
                                             root.child("verify-" + std::to_string(c)));

            const StableLaw law(cell.alpha, 1.0);
            const std::string label = fmt::format("{}/nets/{}", cfg.master_seed, c);
            const MeasurementMatrix m = generate_matrix(law, cell.rows, cell.dim, label);

            RqipConfig check_cfg{};
            check_cfg.k = cell.k;
            check_cfg.delta = cell.delta;
            check_cfg.p = cell.p;
            check_cfg.strategy =
                cell.k <= 1 ? CheckStrategy::net : CheckStrategy::random_directions;
            check_cfg.net_budget = sc.budget;
            check_cfg.direction_count = sc.direction_count;
            check_cfg.seed = root.child("check-" + std::to_string(c)).key();
            const RqipReport report = rqip_check(m, check_cfg);

            const ComplexityInputs inputs{static_cast<std::size_t>(cell.dim),
                                          cell.k,
                                          cell.delta,
                                          sc.eta,
                                          cell.p,
                                          cell.alpha,
                                          sc.c0 * (cell.alpha / cell.p - 1.0),
                                          sc.big_c_con};
            const auto complexity = sample_complexity(inputs, ComplexityMode::eN_over_k);

            result.csv += fmt::format(
                "{},{},{},{},{},{},{},{},{},{},{}\n", num(cell.alpha), cell.k, cell.dim,
                num(cell.epsilon), net.points.size(), num(bound.value),
                num(coverage.coverage_rate), num(report.max_deviation), report.passed ? 1 : 0,
                num(complexity.log10_m), cell.rows);

            nlohmann::json cell_json = {{"index", c},
                                        {"alpha", cell.alpha},
                                        {"k", cell.k},
                                        {"N", cell.dim},
                                        {"epsilon", cell.epsilon},
                                        {"strategy", to_string(check_cfg.strategy)},
                                        {"vectors_tested", report.vectors_tested},
                                        {"worst_gap", coverage.worst_gap},
                                        {"seed_label", label}};
            if (cell.k == 1) {
                // k = 1 admits an exact column-wise check; record agreement.
                RqipConfig brute = check_cfg;
                brute.strategy = CheckStrategy::brute_force_k1;
                const RqipReport brute_report = rqip_check(m, brute);
                cell_json["brute_force_max_deviation"] = brute_report.max_deviation;
                cell_json["brute_force_agrees"] =
                    brute_report.passed == report.passed &&
                    std::fabs(brute_report.max_deviation - report.max_deviation) <= 1e-9;
            }
            result.manifest["cells"].push_back(cell_json);
        } catch (const DomainError& e) {
            throw DomainError(cell_error("nets", c, e));
        }
    }
    write_outputs(result, cfg, {});
    return result;
}

StudyResult run_study(const StudyConfig& cfg) {
    switch (cfg.study) {
        case Study::moments: return run_moment_study(cfg);
        case Study::concentration: return run_concentration_study(cfg);
        case Study::nets:
        case Study::rqip: return run_net_and_rqip_study(cfg);
    }
    throw DomainError("run_study: unknown study");
}

}  // namespace rqip
