#include "rqip/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "rqip/errors.hpp"
#include "rqip/parallel.hpp"

namespace rqip {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError(fmt::format("alpha = {} outside (0,1)", alpha));
    }
}

double log10_binomial(int dim, int k) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
        acc += std::log10(static_cast<double>(dim - i) / static_cast<double>(i + 1));
    }
    return acc;
}

}  // namespace

SparseVector::SparseVector(std::vector<double> entries_in, int nominal_sparsity_in)
    : entries(std::move(entries_in)), nominal_sparsity(nominal_sparsity_in) {
    if (entries.empty()) throw DomainError("SparseVector: dimension must be positive");
    if (nominal_sparsity < 1 || nominal_sparsity > dim()) {
        throw DomainError(fmt::format("SparseVector: nominal sparsity {} outside [1, {}]",
                                      nominal_sparsity, dim()));
    }
    if (nnz() > nominal_sparsity) {
        throw DomainError(fmt::format("SparseVector: {} nonzeros exceed nominal sparsity {}",
                                      nnz(), nominal_sparsity));
    }
}

int SparseVector::nnz() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](double v) { return v != 0.0; }));
}

std::vector<int> SparseVector::support() const {
    std::vector<int> idx;
    for (int i = 0; i < dim(); ++i) {
        if (entries[i] != 0.0) idx.push_back(i);
    }
    return idx;
}

double alpha_quasinorm(std::span<const double> entries, double alpha) {
    check_alpha(alpha);
    double acc = 0.0;
    for (double v : entries) {
        if (v != 0.0) acc += std::pow(std::fabs(v), alpha);
    }
    return std::pow(acc, 1.0 / alpha);
}

double alpha_quasinorm(const SparseVector& x, double alpha) {
    return alpha_quasinorm(std::span<const double>(x.entries), alpha);
}

double alpha_power_distance(std::span<const int> support_a, std::span<const double> values_a,
                            std::span<const int> support_b, std::span<const double> values_b,
                            double alpha) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < support_a.size() || j < support_b.size()) {
        double diff;
        if (j >= support_b.size() || (i < support_a.size() && support_a[i] < support_b[j])) {
            diff = values_a[i++];
        } else if (i >= support_a.size() || support_b[j] < support_a[i]) {
            diff = values_b[j++];
        } else {
            diff = values_a[i++] - values_b[j++];
        }
        if (diff != 0.0) acc += std::pow(std::fabs(diff), alpha);
    }
    return acc;
}

double quasi_triangle_constant(double alpha) {
    check_alpha(alpha);
    return std::pow(2.0, 1.0 / alpha - 1.0);
}

double covering_constant(double alpha) {
    const double c = quasi_triangle_constant(alpha);
    return 2.0 * c * c + c;
}

CoveringBound covering_bound(double alpha, double epsilon, int k, int dim) {
    check_alpha(alpha);
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError(fmt::format("covering_bound: epsilon = {} outside (0,1)", epsilon));
    }
    if (k < 1 || k > dim) throw DomainError("covering_bound: need 1 <= k <= N");
    CoveringBound b{};
    b.log10_value = k * std::log10(covering_constant(alpha) / epsilon) + log10_binomial(dim, k);
    b.value = b.log10_value < 308.0 ? std::pow(10.0, b.log10_value)
                                    : std::numeric_limits<double>::infinity();
    return b;
}

BinomialBound binomial_and_bound(int dim, int k) {
    if (k < 1 || k > dim) throw DomainError("binomial_and_bound: need 1 <= k <= N");
    BinomialBound b{};
    b.exact = 1;
    for (int i = 0; i < k; ++i) {
        b.exact *= (dim - i);
        b.exact /= (i + 1);
    }
    // (eN/k)^k = exp(k * (1 + log(N/k)))
    b.upper = std::exp(k * (1.0 + std::log(static_cast<double>(dim) / k)));
    return b;
}

std::vector<std::vector<int>> enumerate_supports(int dim, int k, std::uint64_t cap) {
    const auto bound = binomial_and_bound(dim, k);
    if (bound.exact > cap) {
        throw CapacityError(fmt::format("enumerate_supports: C({},{}) = {} exceeds cap {}", dim,
                                        k, bound.exact.str(), cap));
    }
    std::vector<std::vector<int>> supports;
    supports.reserve(bound.exact.convert_to<std::size_t>());
    std::vector<int> current(k);
    for (int i = 0; i < k; ++i) current[i] = i;
    for (;;) {
        supports.push_back(current);
        int i = k - 1;
        while (i >= 0 && current[i] == dim - k + i) --i;
        if (i < 0) break;
        ++current[i];
        for (int j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
    }
    return supports;
}

std::vector<int> random_support(int dim, int k, Rng& stream) {
    if (k < 1 || k > dim) throw DomainError("random_support: need 1 <= k <= dim");
    std::set<int> chosen;
    for (int j = dim - k; j < dim; ++j) {
        const int t = static_cast<int>(stream.uniform01() * (j + 1));
        if (!chosen.insert(std::min(t, j)).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

std::vector<double> sample_on_alpha_sphere(int k, double alpha, Rng& stream) {
    check_alpha(alpha);
    std::vector<double> g(k);
    double power_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double radial = stream.gamma_variate(1.0 / alpha);  // |g_i|^alpha
        const double sign = (stream.next_u64() & 1u) ? 1.0 : -1.0;
        g[i] = sign * std::pow(radial, 1.0 / alpha);
        power_sum += radial;
    }
    const double norm = std::pow(power_sum, 1.0 / alpha);
    for (double& v : g) v /= norm;
    return g;
}

std::vector<double> sample_in_alpha_ball(int k, double alpha, Rng& stream) {
    std::vector<double> g = sample_on_alpha_sphere(k, alpha, stream);
    const double r = std::pow(stream.uniform01(), 1.0 / k);
    for (double& v : g) v *= r;
    return g;
}

SparseVector EpsilonNet::to_dense(std::size_t point_index) const {
    const Point& pt = points.at(point_index);
    std::vector<double> dense(dim, 0.0);
    for (std::size_t i = 0; i < pt.support.size(); ++i) dense[pt.support[i]] = pt.values[i];
    return SparseVector(std::move(dense), k);
}

EpsilonNet build_net(double alpha, double epsilon, int k, int dim, NetTarget target,
                     std::uint64_t budget, Rng stream, std::uint64_t support_cap) {
    check_alpha(alpha);
    if (!(epsilon > 0.0)) throw DomainError("build_net: epsilon must be positive");
    if (budget == 0) throw DomainError("build_net: budget must be positive");
    const auto supports = enumerate_supports(dim, k, support_cap);

    const double eps_power = std::pow(epsilon, alpha);
    std::vector<std::vector<std::vector<double>>> groups(supports.size());

    parallel_for(supports.size(), [&](std::size_t s) {
        Rng local = stream.child(s);
        auto& accepted = groups[s];
        std::uint64_t rejections = 0;
        while (rejections < budget) {
            std::vector<double> candidate = target == NetTarget::unit_ball
                                                ? sample_in_alpha_ball(k, alpha, local)
                                                : sample_on_alpha_sphere(k, alpha, local);
            bool separated = true;
            for (const auto& point : accepted) {
                double acc = 0.0;
                for (int i = 0; i < k; ++i) {
                    const double d = candidate[i] - point[i];
                    if (d != 0.0) acc += std::pow(std::fabs(d), alpha);
                    if (acc >= eps_power) break;
                }
                if (acc < eps_power) {
                    separated = false;
                    break;
                }
            }
            if (separated) {
                accepted.push_back(std::move(candidate));
                rejections = 0;
            } else {
                ++rejections;
            }
        }
    });

    EpsilonNet net{alpha, epsilon, k, dim, target, {}};
    for (std::size_t s = 0; s < supports.size(); ++s) {
        for (auto& values : groups[s]) {
            net.points.push_back(EpsilonNet::Point{supports[s], std::move(values)});
        }
    }
    return net;
}

CoverageReport verify_net(const EpsilonNet& net, std::uint64_t trials, Rng stream) {
    if (trials == 0) throw DomainError("verify_net: trials must be positive");
    const auto supports = enumerate_supports(net.dim, net.k);
    const double eps_power = std::pow(net.epsilon, net.alpha);

    std::vector<double> gaps(trials, std::numeric_limits<double>::infinity());
    parallel_for(trials, [&](std::size_t t) {
        Rng local = stream.child(t);
        const std::size_t s =
            static_cast<std::size_t>(local.uniform01() * static_cast<double>(supports.size()));
        const auto& support = supports[std::min(s, supports.size() - 1)];
        const std::vector<double> values =
            net.target == NetTarget::unit_ball ? sample_in_alpha_ball(net.k, net.alpha, local)
                                               : sample_on_alpha_sphere(net.k, net.alpha, local);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pt : net.points) {
            const double d = alpha_power_distance(support, values, pt.support, pt.values,
                                                  net.alpha);
            best = std::min(best, d);
        }
        gaps[t] = best;
    });

    std::uint64_t covered = 0;
    double worst_power = 0.0;
    for (double g : gaps) {
        if (g <= eps_power) ++covered;
        worst_power = std::max(worst_power, g);
    }
    CoverageReport report{};
    report.coverage_rate = static_cast<double>(covered) / static_cast<double>(trials);
    report.worst_gap = std::isinf(worst_power) ? worst_power
                                               : std::pow(worst_power, 1.0 / net.alpha);
    return report;
}

void write_json(const EpsilonNet& net, std::ostream& out) {
    nlohmann::json j;
    j["alpha"] = net.alpha;
    j["epsilon"] = net.epsilon;
    j["k"] = net.k;
    j["dim"] = net.dim;
    j["target"] = net.target == NetTarget::unit_ball ? "unit_ball" : "unit_sphere";
    j["points"] = nlohmann::json::array();
    for (const auto& pt : net.points) {
        j["points"].push_back({{"support", pt.support}, {"values", pt.values}});
    }
    out << j.dump(2) << "\n";
}

EpsilonNet read_net_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    EpsilonNet net{};
    net.alpha = j.at("alpha").get<double>();
    net.epsilon = j.at("epsilon").get<double>();
    net.k = j.at("k").get<int>();
    net.dim = j.at("dim").get<int>();
    const std::string target = j.at("target").get<std::string>();
    if (target == "unit_ball") {
        net.target = NetTarget::unit_ball;
    } else if (target == "unit_sphere") {
        net.target = NetTarget::unit_sphere;
    } else {
        throw DomainError("read_net_json: unknown target \"" + target + "\"");
    }
    for (const auto& pt : j.at("points")) {
        net.points.push_back(EpsilonNet::Point{pt.at("support").get<std::vector<int>>(),
                                               pt.at("values").get<std::vector<double>>()});
    }
    check_alpha(net.alpha);
    if (net.k < 1 || net.k > net.dim) throw DomainError("read_net_json: need 1 <= k <= dim");
    return net;
}

}  // namespace rqip
