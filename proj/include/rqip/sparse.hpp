#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rqip/rng.hpp"

namespace rqip {

// Dense N-vector carrying a nominal sparsity bound k (||x||_0 <= k <= N).
struct SparseVector {
    std::vector<double> entries;
    int nominal_sparsity;

    SparseVector(std::vector<double> entries, int nominal_sparsity);

    int dim() const { return static_cast<int>(entries.size()); }
    int nnz() const;
    std::vector<int> support() const;
};

// ||x||_alpha = (sum |x_j|^alpha)^{1/alpha}, 0 < alpha < 1.
double alpha_quasinorm(std::span<const double> entries, double alpha);
double alpha_quasinorm(const SparseVector& x, double alpha);

// ||x - y||_alpha^alpha over two support-compressed points; supports must be
// sorted ascending.
double alpha_power_distance(std::span<const int> support_a, std::span<const double> values_a,
                            std::span<const int> support_b, std::span<const double> values_b,
                            double alpha);

// C_alpha = 2^{1/alpha - 1}, the quasi-triangle constant of l_alpha.
double quasi_triangle_constant(double alpha);

// C_net = 2 * C_alpha^2 + C_alpha.
double covering_constant(double alpha);

struct CoveringBound {
    double log10_value;
    double value;  // +inf when not representable in double
};

// (C_net / eps)^k * C(N, k), computed in log-space.
CoveringBound covering_bound(double alpha, double epsilon, int k, int dim);

struct BinomialBound {
    boost::multiprecision::cpp_int exact;  // C(N, k)
    double upper;                          // (e N / k)^k
};

BinomialBound binomial_and_bound(int dim, int k);

inline constexpr std::uint64_t kDefaultSupportCap = 1'000'000;

// All size-k subsets of {0..N-1} in lexicographic order. Refuses to enumerate
// when C(N,k) exceeds the cap.
std::vector<std::vector<int>> enumerate_supports(int dim, int k,
                                                 std::uint64_t cap = kDefaultSupportCap);

enum class NetTarget { unit_ball, unit_sphere };

// Finite eps-separated subset of the k-sparse l_alpha unit ball or sphere,
// grouped by support.
struct EpsilonNet {
    struct Point {
        std::vector<int> support;    // sorted ascending, size k
        std::vector<double> values;  // same length as support
    };

    double alpha;
    double epsilon;
    int k;
    int dim;
    NetTarget target;
    std::vector<Point> points;

    SparseVector to_dense(std::size_t point_index) const;
};

// Uniform size-k subset of {0..dim-1} (Floyd's algorithm), sorted ascending.
std::vector<int> random_support(int dim, int k, Rng& stream);

// Point uniform on the k-dimensional l_alpha unit sphere (cone measure):
// coordinates g_i with |g_i|^alpha ~ Gamma(1/alpha, 1) and random signs,
// normalized by ||g||_alpha.
std::vector<double> sample_on_alpha_sphere(int k, double alpha, Rng& stream);

// Uniform in the k-dimensional l_alpha unit ball: sphere direction scaled by
// U^{1/k} (ball volume scales as r^k).
std::vector<double> sample_in_alpha_ball(int k, double alpha, Rng& stream);

// Greedy random packing: per support, draw candidates on the target and keep
// those at l_alpha distance >= eps from everything kept so far; a support is
// finished after `budget` consecutive rejections. A maximal eps-separated set
// is an eps-net; verify_net measures how close the greedy set gets.
EpsilonNet build_net(double alpha, double epsilon, int k, int dim, NetTarget target,
                     std::uint64_t budget, Rng stream,
                     std::uint64_t support_cap = kDefaultSupportCap);

struct CoverageReport {
    double coverage_rate;  // fraction of sampled points within eps of the net
    double worst_gap;      // largest nearest-distance seen
};

CoverageReport verify_net(const EpsilonNet& net, std::uint64_t trials, Rng stream);

// JSON: {alpha, epsilon, k, dim, target, points: [{support, values}]}.
void write_json(const EpsilonNet& net, std::ostream& out);
EpsilonNet read_net_json(std::istream& in);

}  // namespace rqip
