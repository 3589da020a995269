#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rqip/rng.hpp"

namespace rqip {

// Symmetric alpha-stable law SaS(gamma) with 0 < alpha < 1.
// Parameterization: E[exp(itX)] = exp(-gamma^alpha |t|^alpha), so a scale
// factor c maps SaS(gamma) to SaS(c*gamma) with no conversion constants.
struct StableLaw {
    double alpha;
    double gamma;

    StableLaw(double alpha, double gamma);
};

// Sampling is numerically validated for alpha in [kAlphaMin, kAlphaMax];
// StableLaw construction outside that range is a hard error.
inline constexpr double kAlphaMin = 0.05;
inline constexpr double kAlphaMax = 0.99;

struct SampleBatch {
    StableLaw law;
    std::vector<double> values;
    std::string stream_label;

    std::size_t count() const { return values.size(); }
};

namespace detail {
// Chambers-Mallows-Stuck transform, symmetric case, standard scale:
//   X = sin(alpha*u) / cos(u)^{1/alpha} * (cos((1-alpha)*u) / w)^{(1-alpha)/alpha}
// with u in (-pi/2, pi/2) and w > 0.
double cms_transform(double alpha, double u, double w);
}  // namespace detail

// n i.i.d. SaS(gamma) variates, deterministic given the stream.
SampleBatch draw_stable(const StableLaw& law, std::size_t n, Rng stream);

// C_{alpha,p}: the p-th absolute moment of the standard (gamma=1) law,
//   E|X|^p = 2^p * Gamma((1+p)/2) * Gamma(1-p/alpha) / (Gamma(1-p/2) * sqrt(pi)).
// Requires 0 < p < alpha (the moment diverges at p = alpha).
double stable_abs_moment_constant(double alpha, double p);

// Two-sided tail constant C_alpha with t^alpha * P(|X| > t) -> C_alpha * gamma^alpha,
//   C_alpha = (1 - alpha) / (Gamma(2-alpha) * cos(pi*alpha/2)).
// The tail constant's convention is not pinned down by theory alone; this
// closed form is calibrated against empirical tail fits in the test suite.
double stable_tail_constant(double alpha);

// (1/n) * sum |x_i|^p over the batch. Requires 0 < p < batch.law.alpha.
double empirical_abs_moment(const SampleBatch& batch, double p);

// |x|^p, switching to log-space beyond 1e±100 to avoid pow under/overflow.
double abs_pow(double x, double p);

// One value per line, header "value".
void write_csv(const SampleBatch& batch, std::ostream& out);

}  // namespace rqip
