#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "rqip/rng.hpp"
#include "rqip/stable.hpp"

namespace rqip {

// Constant bundle for the fractional-moment concentration bound
//   P(|M^-1 sum |X_i|^p - E|X|^p| > eps) <= 2 exp(-M eps^2 / (8 T^2)) + (4K/C') M^{-c_con}
// with T = (C'/eps)^{1/(alpha/p - 1)} * M^{c0},
//      c_con = c0 * (alpha/p - 1),
//      K = C_alpha * gamma^alpha / (alpha/p - 1).
struct ConcentrationParams {
    StableLaw law;
    double p;              // moment order, 0 < p < alpha
    double c0;             // truncation exponent, 0 < c0 < 1/2
    double c_prime;        // the free constant C' in the threshold
    double tail_constant;  // C_alpha
    double big_c_con;      // envelope constant C_con (existential in theory)

    ConcentrationParams(StableLaw law, double p, double c0 = 0.25, double c_prime = 1.0,
                        double big_c_con = 1.0);
    // Override the tail constant (defaults to stable_tail_constant(alpha)).
    ConcentrationParams(StableLaw law, double p, double c0, double c_prime, double big_c_con,
                        double tail_constant);

    double alpha_over_p() const { return law.alpha / p; }
    double c_con() const { return c0 * (alpha_over_p() - 1.0); }
    double k_tail() const;  // K
};

// T = (C'/eps)^{1/(alpha/p - 1)} * M^{c0}
double truncation_threshold(const ConcentrationParams& params, double epsilon, std::uint64_t m);

// 2 exp(-M eps^2 / (8 T^2)), clamped to [0, 2]
double hoeffding_term(double epsilon, std::uint64_t m, double t);

// (4K/eps) * T^{1 - alpha/p}; with T from truncation_threshold this equals
// (4K/C') * M^{-c_con}.
double tail_term(const ConcentrationParams& params, double epsilon, double t);

struct BoundBreakdown {
    double hoeffding;
    double tail;
    double total;     // hoeffding + tail
    double envelope;  // C_con * M^{-c_con}
};

BoundBreakdown combined_bound(const ConcentrationParams& params, double epsilon, std::uint64_t m);

struct DeviationEstimate {
    double p_hat;
    double std_err;  // sqrt(p_hat (1 - p_hat) / trials)
};

// Monte-Carlo estimate of the true deviation probability: `trials` independent
// experiments of M draws each; per-trial streams derive from (stream, trial
// index), so the result is bit-identical regardless of worker count.
DeviationEstimate estimate_deviation_probability(const ConcentrationParams& params,
                                                 double epsilon, std::uint64_t m,
                                                 std::uint64_t trials, Rng stream);

struct DeviationSeries {
    struct Row {
        std::uint64_t m;
        double p_hat;
        std::uint64_t trials;
        double std_err;
    };
    double epsilon;
    std::vector<Row> rows;  // sorted by m strictly increasing
};

struct DecayFit {
    double slope;
    double intercept;
    double r_squared;
    int excluded_rows;  // rows with p_hat = 0, excluded from the log-log fit
};

// Least-squares fit of log(p_hat) against log(M); needs >= 4 rows with
// p_hat > 0.
DecayFit fit_decay_exponent(const DeviationSeries& series);

// Diagnostic for the "T large enough" proviso: empirical t^alpha * P(|X| > t)
// at t = T^{1/p} against C_alpha * gamma^alpha, from `draws` samples.
// Returns the relative discrepancy.
double tail_regime_discrepancy(const ConcentrationParams& params, double t_threshold,
                               std::uint64_t draws, Rng stream);

// CSV with header "M,p_hat,trials,std_err".
void write_csv(const DeviationSeries& series, std::ostream& out);

// JSON object {slope, intercept, r_squared, excluded_rows}.
void write_json(const DecayFit& fit, std::ostream& out);

}  // namespace rqip
