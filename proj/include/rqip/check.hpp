#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "rqip/sparse.hpp"
#include "rqip/stable.hpp"

namespace rqip {

inline constexpr std::uint64_t kMatrixEntryCap = 1'000'000'000;

// Dense M x N matrix with i.i.d. SaS(gamma) entries, row-major.
// Entries are a pure function of (law, rows, cols, seed_label).
struct MeasurementMatrix {
    std::size_t rows;
    std::size_t cols;
    std::vector<double> entries;
    StableLaw law;
    std::string seed_label;

    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

MeasurementMatrix generate_matrix(const StableLaw& law, std::size_t rows, std::size_t cols,
                                  const std::string& seed_label);

// (1/M) * sum_i |<omega_i, x>|^p; inner products run over supp(x) only.
double moment_stat(const MeasurementMatrix& m, const SparseVector& x, double p);

// D(x) = | moment_stat / (C_{alpha,p} * (gamma ||x||_alpha)^p) - 1 |.
// The isometry holds at x iff D(x) <= delta; D is scale-invariant in x.
double rqip_deviation(const MeasurementMatrix& m, const SparseVector& x, double p);

// eps = (delta/3)^{1/p}: the net radius that keeps the net-argument error
// budget within delta.
double net_epsilon_for_delta(double delta, double p);

enum class CheckStrategy { net, random_directions, brute_force_k1 };

std::string to_string(CheckStrategy s);
CheckStrategy strategy_from_string(const std::string& name);

struct RqipConfig {
    int k;
    double delta;  // in (0,1)
    double p;      // in (0, alpha)
    CheckStrategy strategy = CheckStrategy::net;
    std::uint64_t net_budget = 5000;
    std::uint64_t direction_count = 10000;
    std::uint64_t seed = 0;  // master seed for net construction / directions
};

struct RqipReport {
    double max_deviation;
    SparseVector witness;
    std::uint64_t vectors_tested;
    bool passed;  // max_deviation <= delta
    RqipConfig config;
    double moment_constant_used;  // C_{alpha,p}
};

// Empirical check of the isometry over a finite family of unit-quasinorm
// k-sparse test vectors, chosen per the configured strategy. The witness is
// the maximizing vector (lowest index on ties), so the result is independent
// of evaluation order.
RqipReport rqip_check(const MeasurementMatrix& m, const RqipConfig& cfg);

struct ComplexityInputs {
    std::size_t dim;  // N
    int k;
    double delta;
    double eta;
    double p;
    double alpha;
    double c_con;    // c0 * (alpha/p - 1)
    double big_c_con;  // C_con (existential; convention-dependent)
};

enum class ComplexityMode { binomial_exact, eN_over_k };

struct ComplexityResult {
    double log10_m;
    // Integer ceiling, only when it fits an unsigned 128-bit value.
    std::optional<unsigned __int128> m_if_representable;
};

std::string u128_to_string(unsigned __int128 v);

// Row-count threshold of the sample-complexity bound
//   M >= (2 C_con / eta * C_net^k * (3/delta)^{k/p} * B)^{1/c_con}
// with B = (eN/k)^k or the exact binomial, evaluated in log10 space.
ComplexityResult sample_complexity(const ComplexityInputs& inputs, ComplexityMode mode);

// JSON: {passed, max_deviation, witness: {support, values}, vectors_tested,
//        strategy, delta, k, p, alpha, gamma, M, N, seed_label}.
void write_json(const RqipReport& report, const MeasurementMatrix& m, std::ostream& out);

}  // namespace rqip
