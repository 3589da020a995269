#include "rqip/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fmt/format.h>

#include "rqip/errors.hpp"
#include "rqip/parallel.hpp"

namespace rqip {

namespace {

void validate(const ConcentrationParams& p) {
    if (!(p.p > 0.0 && p.p < p.law.alpha)) {
        throw DomainError(fmt::format("ConcentrationParams: p = {} outside (0, alpha = {})",
                                      p.p, p.law.alpha));
    }
    if (!(p.c0 > 0.0 && p.c0 < 0.5)) {
        throw DomainError(fmt::format("ConcentrationParams: c0 = {} outside (0, 1/2)", p.c0));
    }
    if (!(p.c_prime > 0.0)) throw DomainError("ConcentrationParams: C' must be positive");
    if (!(p.tail_constant > 0.0)) throw DomainError("ConcentrationParams: tail constant must be positive");
    if (!(p.big_c_con > 0.0)) throw DomainError("ConcentrationParams: C_con must be positive");
}

}  // namespace

ConcentrationParams::ConcentrationParams(StableLaw law_in, double p_in, double c0_in,
                                         double c_prime_in, double big_c_con_in)
    : ConcentrationParams(law_in, p_in, c0_in, c_prime_in, big_c_con_in,
                          stable_tail_constant(law_in.alpha)) {}

ConcentrationParams::ConcentrationParams(StableLaw law_in, double p_in, double c0_in,
                                         double c_prime_in, double big_c_con_in,
                                         double tail_constant_in)
    : law(law_in),
      p(p_in),
      c0(c0_in),
      c_prime(c_prime_in),
      tail_constant(tail_constant_in),
      big_c_con(big_c_con_in) {
    validate(*this);
}

double ConcentrationParams::k_tail() const {
    return tail_constant * std::pow(law.gamma, law.alpha) / (alpha_over_p() - 1.0);
}

double truncation_threshold(const ConcentrationParams& params, double epsilon, std::uint64_t m) {
    if (!(epsilon > 0.0)) throw DomainError("truncation_threshold: epsilon must be positive");
    if (m == 0) throw DomainError("truncation_threshold: M must be positive");
    const double exponent = 1.0 / (params.alpha_over_p() - 1.0);
    return std::pow(params.c_prime / epsilon, exponent) *
           std::pow(static_cast<double>(m), params.c0);
}

double hoeffding_term(double epsilon, std::uint64_t m, double t) {
    if (!(epsilon > 0.0 && t > 0.0) || m == 0) {
        throw DomainError("hoeffding_term: all inputs must be positive");
    }
    const double value =
        2.0 * std::exp(-static_cast<double>(m) * epsilon * epsilon / (8.0 * t * t));
    return std::clamp(value, 0.0, 2.0);
}

double tail_term(const ConcentrationParams& params, double epsilon, double t) {
    if (!(epsilon > 0.0 && t > 0.0)) throw DomainError("tail_term: all inputs must be positive");
    return (4.0 * params.k_tail() / epsilon) * std::pow(t, 1.0 - params.alpha_over_p());
}

BoundBreakdown combined_bound(const ConcentrationParams& params, double epsilon,
                              std::uint64_t m) {
    const double t = truncation_threshold(params, epsilon, m);
    BoundBreakdown b{};
    b.hoeffding = hoeffding_term(epsilon, m, t);
    b.tail = tail_term(params, epsilon, t);
    b.total = b.hoeffding + b.tail;
    b.envelope = params.big_c_con * std::pow(static_cast<double>(m), -params.c_con());
    return b;
}

DeviationEstimate estimate_deviation_probability(const ConcentrationParams& params,
                                                 double epsilon, std::uint64_t m,
                                                 std::uint64_t trials, Rng stream) {
    if (trials == 0) throw DomainError("estimate_deviation_probability: trials must be positive");
    if (m == 0) throw DomainError("estimate_deviation_probability: M must be positive");
    if (!(epsilon >= 0.0)) throw DomainError("estimate_deviation_probability: epsilon must be nonnegative");

    const double mean = stable_abs_moment_constant(params.law.alpha, params.p) *
                        std::pow(params.law.gamma, params.p);
    std::vector<std::uint8_t> exceeded(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        Rng trial_stream = stream.child(t);
        double sum = 0.0;
        for (std::uint64_t i = 0; i < m; ++i) {
            const double u = trial_stream.uniform_angle();
            const double w = trial_stream.exponential();
            const double x = params.law.gamma * detail::cms_transform(params.law.alpha, u, w);
            sum += abs_pow(x, params.p);
        }
        const double deviation = std::fabs(sum / static_cast<double>(m) - mean);
        exceeded[t] = deviation > epsilon ? 1 : 0;
    });
    std::uint64_t hits = 0;
    for (auto e : exceeded) hits += e;
    DeviationEstimate est{};
    est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
    return est;
}

DecayFit fit_decay_exponent(const DeviationSeries& series) {
    std::vector<std::pair<double, double>> pts;
    int excluded = 0;
    for (const auto& row : series.rows) {
        if (row.p_hat > 0.0) {
            pts.emplace_back(std::log(static_cast<double>(row.m)), std::log(row.p_hat));
        } else {
            ++excluded;
        }
    }
    if (pts.size() < 4) {
        throw DomainError(fmt::format(
            "fit_decay_exponent: need at least 4 rows with p_hat > 0, have {}", pts.size()));
    }
    const double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    DecayFit fit{};
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.excluded_rows = excluded;
    return fit;
}

double tail_regime_discrepancy(const ConcentrationParams& params, double t_threshold,
                               std::uint64_t draws, Rng stream) {
    if (!(t_threshold > 0.0)) throw DomainError("tail_regime_discrepancy: threshold must be positive");
    if (draws == 0) throw DomainError("tail_regime_discrepancy: draws must be positive");
    const double t = std::pow(t_threshold, 1.0 / params.p);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double u = stream.uniform_angle();
        const double w = stream.exponential();
        const double x = params.law.gamma * detail::cms_transform(params.law.alpha, u, w);
        if (std::fabs(x) > t) ++hits;
    }
    const double empirical =
        std::pow(t, params.law.alpha) * static_cast<double>(hits) / static_cast<double>(draws);
    const double theoretical =
        params.tail_constant * std::pow(params.law.gamma, params.law.alpha);
    return std::fabs(empirical / theoretical - 1.0);
}

void write_csv(const DeviationSeries& series, std::ostream& out) {
    out << "M,p_hat,trials,std_err\n";
    for (const auto& row : series.rows) {
        out << fmt::format("{},{:.17g},{},{:.17g}\n", row.m, row.p_hat, row.trials, row.std_err);
    }
}

void write_json(const DecayFit& fit, std::ostream& out) {
    out << fmt::format(
        "{{\"slope\": {:.17g}, \"intercept\": {:.17g}, \"r_squared\": {:.17g}, "
        "\"excluded_rows\": {}}}\n",
        fit.slope, fit.intercept, fit.r_squared, fit.excluded_rows);
}

}  // namespace rqip
