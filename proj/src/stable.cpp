#include "rqip/stable.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "rqip/errors.hpp"
#include "rqip/special.hpp"

namespace rqip {

StableLaw::StableLaw(double alpha_in, double gamma_in) : alpha(alpha_in), gamma(gamma_in) {
    if (!(alpha >= kAlphaMin && alpha <= kAlphaMax)) {
        throw DomainError(fmt::format(
            "StableLaw: alpha = {} outside the numerically validated range [{}, {}]",
            alpha, kAlphaMin, kAlphaMax));
    }
    if (!(gamma > 0.0)) {
        throw DomainError("StableLaw: gamma must be positive");
    }
}

namespace detail {

double cms_transform(double alpha, double u, double w) {
    if (u == 0.0) return 0.0;  // sin(0) = 0; avoids 0 * inf at tiny w
    const double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    const double t = std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return s * t;
}

}  // namespace detail

SampleBatch draw_stable(const StableLaw& law, std::size_t n, Rng stream) {
    if (n == 0) throw DomainError("draw_stable: n must be positive");
    SampleBatch batch{law, {}, stream.label()};
    batch.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = stream.uniform_angle();
        const double w = stream.exponential();
        batch.values.push_back(law.gamma * detail::cms_transform(law.alpha, u, w));
    }
    return batch;
}

double stable_abs_moment_constant(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable_abs_moment_constant: alpha must be in (0,1)");
    if (!(p > 0.0)) throw DomainError("stable_abs_moment_constant: p must be positive");
    if (!(p < alpha)) throw DomainError("stable_abs_moment_constant: p must be below alpha (moment diverges)");
    return std::pow(2.0, p) * gamma_fn((1.0 + p) / 2.0) * gamma_fn(1.0 - p / alpha) /
           (gamma_fn(1.0 - p / 2.0) * std::sqrt(std::numbers::pi));
}

double stable_tail_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable_tail_constant: alpha must be in (0,1)");
    return (1.0 - alpha) / (gamma_fn(2.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0));
}

double abs_pow(double x, double p) {
    const double a = std::fabs(x);
    if (a == 0.0) return 0.0;
    if (a > 1e100 || a < 1e-100) return std::exp(p * std::log(a));
    return std::pow(a, p);
}

double empirical_abs_moment(const SampleBatch& batch, double p) {
    if (batch.values.empty()) throw DomainError("empirical_abs_moment: empty batch");
    if (!(p > 0.0 && p < batch.law.alpha)) {
        throw DomainError(fmt::format(
            "empirical_abs_moment: p = {} outside (0, alpha = {})", p, batch.law.alpha));
    }
    double sum = 0.0;
    for (double v : batch.values) sum += abs_pow(v, p);
    return sum / static_cast<double>(batch.values.size());
}

void write_csv(const SampleBatch& batch, std::ostream& out) {
    out << "value\n";
    for (double v : batch.values) out << fmt::format("{:.17g}\n", v);
}

}  // namespace rqip
