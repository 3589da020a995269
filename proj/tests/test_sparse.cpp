#include <cmath>
#include <sstream>

#include <doctest.h>

#include "rqip/errors.hpp"
#include "rqip/sparse.hpp"

using namespace rqip;

TEST_CASE("SparseVector validates nnz <= k <= N") {
    CHECK_NOTHROW(SparseVector({1.0, 0.0, 2.0}, 2));
    CHECK_NOTHROW(SparseVector({1.0, 0.0, 2.0}, 3));
    CHECK_THROWS_AS(SparseVector({1.0, 0.0, 2.0}, 1), DomainError);
    CHECK_THROWS_AS(SparseVector({1.0, 0.0, 2.0}, 4), DomainError);
    CHECK_THROWS_AS(SparseVector({1.0, 0.0, 2.0}, 0), DomainError);

    SparseVector x({0.0, 3.0, 0.0, -1.0}, 2);
    CHECK(x.nnz() == 2);
    CHECK(x.support() == std::vector<int>{1, 3});
}

TEST_CASE("alpha_quasinorm hand values and homogeneity") {
    const std::vector<double> e1{1.0, 0.0, 0.0};
    CHECK(alpha_quasinorm(e1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    // (1,1) at alpha=1/2: (1+1)^2 = 4
    const std::vector<double> ones{1.0, 1.0};
    CHECK(alpha_quasinorm(ones, 0.5) == doctest::Approx(4.0).epsilon(1e-14));

    Rng stream(20240903, "homogeneity");
    for (int i = 0; i < 100; ++i) {
        std::vector<double> x(5);
        for (auto& v : x) v = 2.0 * stream.uniform01() - 1.0;
        const double c = 0.1 + 5.0 * stream.uniform01();
        const double alpha = 0.2 + 0.7 * stream.uniform01();
        std::vector<double> cx = x;
        for (auto& v : cx) v *= c;
        CHECK(alpha_quasinorm(cx, alpha) ==
              doctest::Approx(c * alpha_quasinorm(x, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("alpha_power_distance merges disjoint and overlapping supports") {
    const std::vector<int> sa{0, 2};
    const std::vector<double> va{1.0, -1.0};
    const std::vector<int> sb{2, 5};
    const std::vector<double> vb{1.0, 1.0};
    // differences: idx0: 1, idx2: -2, idx5: -1 -> 1 + 2^0.5 + 1
    CHECK(alpha_power_distance(sa, va, sb, vb, 0.5) ==
          doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(alpha_power_distance(sa, va, sa, va, 0.5) == 0.0);
}

TEST_CASE("quasi_triangle_constant hand values") {
    CHECK(quasi_triangle_constant(0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(quasi_triangle_constant(0.25) == doctest::Approx(8.0).epsilon(1e-13));
    CHECK(quasi_triangle_constant(0.999) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(covering_constant(0.5) == doctest::Approx(10.0).epsilon(1e-13));
}

TEST_CASE("alpha-power subadditivity holds on random instances") {
    // |x+y|^alpha <= |x|^alpha + |y|^alpha coordinatewise, hence for vectors.
    Rng stream(20240904, "power-subadd");
    for (double alpha : {0.3, 0.5, 0.8}) {
        int violations = 0;
        for (int i = 0; i < 100'000; ++i) {
            const double x = 20.0 * stream.uniform01() - 10.0;
            const double y = 20.0 * stream.uniform01() - 10.0;
            const double lhs = std::pow(std::fabs(x + y), alpha);
            const double rhs = std::pow(std::fabs(x), alpha) + std::pow(std::fabs(y), alpha);
            if (lhs > rhs * (1.0 + 1e-12)) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("quasi-triangle inequality holds for vectors") {
    Rng stream(20240905, "quasi-triangle");
    for (double alpha : {0.3, 0.5, 0.8}) {
        const double c = quasi_triangle_constant(alpha);
        int violations = 0;
        for (int i = 0; i < 10'000; ++i) {
            std::vector<double> x(4), y(4), s(4);
            for (int j = 0; j < 4; ++j) {
                x[j] = 2.0 * stream.uniform01() - 1.0;
                y[j] = 2.0 * stream.uniform01() - 1.0;
                s[j] = x[j] + y[j];
            }
            const double lhs = alpha_quasinorm(s, alpha);
            const double rhs = c * (alpha_quasinorm(x, alpha) + alpha_quasinorm(y, alpha));
            if (lhs > rhs * (1.0 + 1e-12)) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("covering_bound hand value and monotonicity") {
    // (10 / 0.5)^1 * C(2,1) = 40
    const auto b = covering_bound(0.5, 0.5, 1, 2);
    CHECK(b.value == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(b.log10_value == doctest::Approx(std::log10(40.0)).epsilon(1e-12));
    // shrinking eps only grows the bound
    CHECK(covering_bound(0.5, 0.25, 1, 2).value > b.value);
    // huge k/N overflows double but stays finite in log10
    const auto big = covering_bound(0.5, 0.01, 200, 1000);
    CHECK(std::isinf(big.value));
    CHECK(std::isfinite(big.log10_value));
}

TEST_CASE("binomial_and_bound exact values and upper bound") {
    auto b = binomial_and_bound(4, 2);
    CHECK(b.exact == 6);
    CHECK(b.upper == doctest::Approx(std::pow(2.0 * std::exp(1.0), 2.0)).epsilon(1e-12));
    CHECK(binomial_and_bound(10, 1).exact == 10);
    CHECK(binomial_and_bound(10, 10).exact == 1);
    CHECK(binomial_and_bound(50, 25).exact ==
          boost::multiprecision::cpp_int("126410606437752"));
    // the (eN/k)^k bound dominates the exact count
    for (int k = 1; k <= 10; ++k) {
        auto bb = binomial_and_bound(20, k);
        CHECK(static_cast<double>(bb.exact) <= bb.upper);
    }
    CHECK_THROWS_AS(binomial_and_bound(3, 4), DomainError);
    CHECK_THROWS_AS(binomial_and_bound(3, 0), DomainError);
}

TEST_CASE("enumerate_supports lists size-k subsets lexicographically") {
    const auto subsets = enumerate_supports(3, 2);
    REQUIRE(subsets.size() == 3);
    CHECK(subsets[0] == std::vector<int>{0, 1});
    CHECK(subsets[1] == std::vector<int>{0, 2});
    CHECK(subsets[2] == std::vector<int>{1, 2});

    const auto many = enumerate_supports(12, 5);
    CHECK(many.size() == 792);  // C(12,5)

    CHECK_THROWS_AS(enumerate_supports(60, 30, 1000), CapacityError);
}

TEST_CASE("random_support draws uniform sorted subsets") {
    Rng stream(20240906, "supports");
    std::vector<int> counts(6, 0);
    for (int i = 0; i < 6000; ++i) {
        const auto s = random_support(6, 2, stream);
        REQUIRE(s.size() == 2);
        CHECK(s[0] < s[1]);
        for (int j : s) ++counts[j];
    }
    // each index appears with probability 1/3
    for (int c : counts) CHECK(std::fabs(c / 6000.0 - 1.0 / 3.0) < 0.03);
}

TEST_CASE("sphere samples have unit quasinorm, ball samples stay inside") {
    Rng stream(20240907, "sphere");
    for (int i = 0; i < 500; ++i) {
        const auto s = sample_on_alpha_sphere(3, 0.5, stream);
        CHECK(alpha_quasinorm(s, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
        const auto b = sample_in_alpha_ball(3, 0.5, stream);
        CHECK(alpha_quasinorm(b, 0.5) <= 1.0 + 1e-10);
    }
    // k = 1 collapses to the two signs
    const auto one = sample_on_alpha_sphere(1, 0.5, stream);
    CHECK(std::fabs(one[0]) == 1.0);
}

TEST_CASE("build_net produces an eps-separated set within the covering bound") {
    const double alpha = 0.5, eps = 0.25;
    const auto net = build_net(alpha, eps, 2, 5, NetTarget::unit_sphere, 20'000,
                               Rng(20240908, "net"));
    CHECK(net.points.size() >= 10);
    CHECK(static_cast<double>(net.points.size()) <=
          covering_bound(alpha, eps, 2, 5).value);
    // separation is enforced within each support group
    const double eps_pow = std::pow(eps, alpha);
    for (std::size_t i = 0; i < net.points.size(); ++i) {
        for (std::size_t j = i + 1; j < net.points.size(); ++j) {
            if (net.points[i].support != net.points[j].support) continue;
            const double d =
                alpha_power_distance(net.points[i].support, net.points[i].values,
                                     net.points[j].support, net.points[j].values, alpha);
            CHECK(d >= eps_pow * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("build_net with k = 1 gives a handful of points per sign") {
    const auto net =
        build_net(0.5, 0.25, 1, 1, NetTarget::unit_sphere, 5000, Rng(20240909, "net-k1"));
    // the 1-sphere is {-1, +1}: exactly 2 separated points
    CHECK(net.points.size() == 2);
    const auto ball =
        build_net(0.5, 0.25, 1, 1, NetTarget::unit_ball, 5000, Rng(20240909, "net-k1"));
    CHECK(ball.points.size() >= 5);
    CHECK(ball.points.size() <= 20);
}

TEST_CASE("verify_net reports full coverage for a maximal net") {
    const auto net = build_net(0.5, 0.25, 2, 5, NetTarget::unit_sphere, 20'000,
                               Rng(20240910, "net-cover"));
    const auto report = verify_net(net, 10'000, Rng(20240911, "cover-check"));
    CHECK(report.coverage_rate == 1.0);
    CHECK(report.worst_gap <= 0.25);
}

TEST_CASE("net JSON round-trips") {
    const auto net = build_net(0.5, 0.3, 2, 4, NetTarget::unit_ball, 2000,
                               Rng(20240912, "net-json"));
    std::stringstream buf;
    write_json(net, buf);
    const auto back = read_net_json(buf);
    CHECK(back.alpha == net.alpha);
    CHECK(back.epsilon == net.epsilon);
    CHECK(back.k == net.k);
    CHECK(back.dim == net.dim);
    CHECK(back.target == net.target);
    REQUIRE(back.points.size() == net.points.size());
    for (std::size_t i = 0; i < net.points.size(); ++i) {
        CHECK(back.points[i].support == net.points[i].support);
        CHECK(back.points[i].values == net.points[i].values);
    }
}
