#include "rqip/check.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "rqip/errors.hpp"
#include "rqip/parallel.hpp"

namespace rqip {

namespace {

constexpr std::uint64_t kMatrixSeedSalt = 0x52514950u;  // stream family for matrices
constexpr double kNetPointCap = 1e7;

SparseVector dense_from(const std::vector<int>& support, const std::vector<double>& values,
                        int dim, int k) {
    std::vector<double> dense(dim, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) dense[support[i]] = values[i];
    return SparseVector(std::move(dense), k);
}

}  // namespace

MeasurementMatrix generate_matrix(const StableLaw& law, std::size_t rows, std::size_t cols,
                                  const std::string& seed_label) {
    if (rows == 0 || cols == 0) throw DomainError("generate_matrix: M and N must be positive");
    if (rows > kMatrixEntryCap / cols) {
        throw CapacityError(fmt::format("generate_matrix: {} x {} exceeds the {}-entry cap",
                                        rows, cols, kMatrixEntryCap));
    }
    MeasurementMatrix m{rows, cols, std::vector<double>(rows * cols), law, seed_label};
    Rng stream(kMatrixSeedSalt, seed_label);
    parallel_for(rows, [&](std::size_t i) {
        Rng row_stream = stream.child(i);
        for (std::size_t j = 0; j < cols; ++j) {
            const double u = row_stream.uniform_angle();
            const double w = row_stream.exponential();
            m.entries[i * cols + j] = law.gamma * detail::cms_transform(law.alpha, u, w);
        }
    });
    return m;
}

double moment_stat(const MeasurementMatrix& m, const SparseVector& x, double p) {
    if (static_cast<std::size_t>(x.dim()) != m.cols) {
        throw DomainError(fmt::format("moment_stat: vector dim {} != matrix cols {}", x.dim(),
                                      m.cols));
    }
    if (!(p > 0.0 && p < m.law.alpha)) {
        throw DomainError(fmt::format("moment_stat: p = {} outside (0, alpha = {})", p,
                                      m.law.alpha));
    }
    const auto support = x.support();
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        double dot = 0.0;
        for (int j : support) dot += m.at(i, j) * x.entries[j];
        sum += abs_pow(dot, p);
    }
    return sum / static_cast<double>(m.rows);
}

double rqip_deviation(const MeasurementMatrix& m, const SparseVector& x, double p) {
    const double norm = alpha_quasinorm(x, m.law.alpha);
    if (norm == 0.0) throw DomainError("rqip_deviation: zero vector");
    const double c = stable_abs_moment_constant(m.law.alpha, p);
    const double reference = c * std::pow(m.law.gamma * norm, p);
    return std::fabs(moment_stat(m, x, p) / reference - 1.0);
}

double net_epsilon_for_delta(double delta, double p) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError(fmt::format("net_epsilon_for_delta: delta = {} outside (0,1)", delta));
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError(fmt::format("net_epsilon_for_delta: p = {} outside (0,1)", p));
    }
    return std::pow(delta / 3.0, 1.0 / p);
}

std::string to_string(CheckStrategy s) {
    switch (s) {
        case CheckStrategy::net: return "net";
        case CheckStrategy::random_directions: return "random_directions";
        case CheckStrategy::brute_force_k1: return "brute_force_k1";
    }
    return "?";
}

CheckStrategy strategy_from_string(const std::string& name) {
    if (name == "net") return CheckStrategy::net;
    if (name == "random_directions") return CheckStrategy::random_directions;
    if (name == "brute_force_k1") return CheckStrategy::brute_force_k1;
    throw DomainError("unknown strategy \"" + name + "\"");
}

RqipReport rqip_check(const MeasurementMatrix& m, const RqipConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
        throw DomainError(fmt::format("rqip_check: delta = {} outside (0,1)", cfg.delta));
    }
    if (!(cfg.p > 0.0 && cfg.p < m.law.alpha)) {
        throw DomainError(fmt::format("rqip_check: p = {} outside (0, alpha = {})", cfg.p,
                                      m.law.alpha));
    }
    if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > m.cols) {
        throw DomainError("rqip_check: need 1 <= k <= N");
    }

    const int dim = static_cast<int>(m.cols);
    std::vector<SparseVector> vectors;

    switch (cfg.strategy) {
        case CheckStrategy::net: {
            const double eps = net_epsilon_for_delta(cfg.delta, cfg.p);
            // 1-sparse slices of the unit sphere are {+1,-1} regardless of eps,
            // so the covering-bound pre-check only matters for k >= 2.
            if (cfg.k >= 2) {
                const auto bound = covering_bound(m.law.alpha, std::min(eps, 0.999), cfg.k, dim);
                if (!(bound.value <= kNetPointCap)) {
                    throw CapacityError(fmt::format(
                        "rqip_check: net with eps = {:g} may need ~10^{:.1f} points (cap {:g})",
                        eps, bound.log10_value, kNetPointCap));
                }
            }
            const EpsilonNet net = build_net(m.law.alpha, eps, cfg.k, dim,
                                             NetTarget::unit_sphere, cfg.net_budget,
                                             Rng(cfg.seed, "rqip-net"));
            vectors.reserve(net.points.size());
            for (std::size_t i = 0; i < net.points.size(); ++i) vectors.push_back(net.to_dense(i));
            break;
        }
        case CheckStrategy::random_directions: {
            Rng stream(cfg.seed, "rqip-directions");
            vectors.reserve(cfg.direction_count);
            for (std::uint64_t i = 0; i < cfg.direction_count; ++i) {
                Rng local = stream.child(i);
                const auto support = random_support(dim, cfg.k, local);
                const auto values = sample_on_alpha_sphere(cfg.k, m.law.alpha, local);
                vectors.push_back(dense_from(support, values, dim, cfg.k));
            }
            break;
        }
        case CheckStrategy::brute_force_k1: {
            if (cfg.k != 1) throw DomainError("rqip_check: brute_force_k1 requires k = 1");
            for (int j = 0; j < dim; ++j) {
                std::vector<double> e(dim, 0.0);
                e[j] = 1.0;
                vectors.emplace_back(std::move(e), 1);
            }
            break;
        }
    }

    std::vector<double> deviations(vectors.size(), 0.0);
    parallel_for(vectors.size(), [&](std::size_t i) {
        deviations[i] = rqip_deviation(m, vectors[i], cfg.p);
    });

    std::size_t argmax = 0;
    for (std::size_t i = 1; i < deviations.size(); ++i) {
        if (deviations[i] > deviations[argmax]) argmax = i;
    }
    const double max_dev = deviations.empty() ? 0.0 : deviations[argmax];

    RqipReport report{max_dev,
                      vectors.empty() ? SparseVector(std::vector<double>(dim, 0.0), cfg.k)
                                      : vectors[argmax],
                      vectors.size(),
                      max_dev <= cfg.delta,
                      cfg,
                      stable_abs_moment_constant(m.law.alpha, cfg.p)};
    return report;
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string digits;
    while (v > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

ComplexityResult sample_complexity(const ComplexityInputs& in, ComplexityMode mode) {
    if (in.k < 1 || static_cast<std::size_t>(in.k) > in.dim) {
        throw DomainError("sample_complexity: need 1 <= k <= N");
    }
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw DomainError("sample_complexity: delta outside (0,1)");
    if (!(in.eta > 0.0 && in.eta < 1.0)) throw DomainError("sample_complexity: eta outside (0,1)");
    if (!(in.alpha > 0.0 && in.alpha < 1.0)) throw DomainError("sample_complexity: alpha outside (0,1)");
    if (!(in.p > 0.0 && in.p < in.alpha)) throw DomainError("sample_complexity: p outside (0, alpha)");
    if (!(in.c_con > 0.0)) throw DomainError("sample_complexity: c_con must be positive");
    if (!(in.big_c_con > 0.0)) throw DomainError("sample_complexity: C_con must be positive");

    const double c_net = covering_constant(in.alpha);
    double log10_binom;
    if (mode == ComplexityMode::eN_over_k) {
        log10_binom = in.k * std::log10(std::numbers::e * static_cast<double>(in.dim) / in.k);
    } else {
        log10_binom = 0.0;
        for (int i = 0; i < in.k; ++i) {
            log10_binom += std::log10(static_cast<double>(in.dim - i) / (i + 1));
        }
    }
    const double log10_inner = std::log10(2.0 * in.big_c_con / in.eta) +
                               in.k * std::log10(c_net) +
                               (in.k / in.p) * std::log10(3.0 / in.delta) + log10_binom;
    ComplexityResult result{};
    result.log10_m = log10_inner / in.c_con;
    if (result.log10_m < 38.0) {
        const long double m = std::ceil(std::pow(10.0L, static_cast<long double>(result.log10_m)));
        result.m_if_representable = static_cast<unsigned __int128>(m);
    }
    return result;
}

void write_json(const RqipReport& report, const MeasurementMatrix& m, std::ostream& out) {
    nlohmann::json j;
    j["passed"] = report.passed;
    j["max_deviation"] = report.max_deviation;
    j["witness"] = {{"support", report.witness.support()},
                    {"values", [&] {
                         std::vector<double> values;
                         for (int i : report.witness.support())
                             values.push_back(report.witness.entries[i]);
                         return values;
                     }()}};
    j["vectors_tested"] = report.vectors_tested;
    j["strategy"] = to_string(report.config.strategy);
    j["delta"] = report.config.delta;
    j["k"] = report.config.k;
    j["p"] = report.config.p;
    j["alpha"] = m.law.alpha;
    j["gamma"] = m.law.gamma;
    j["M"] = m.rows;
    j["N"] = m.cols;
    j["seed_label"] = m.seed_label;
    out << j.dump(2) << "\n";
}

}  // namespace rqip
