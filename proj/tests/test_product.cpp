#include <cmath>
#include <random>

#include "doctest.h"
#include "riembound/errors.hpp"
#include "riembound/product.hpp"

using namespace riembound;

namespace {

Mat mat2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

MetricParams rand_point(int N, int n, const FeasibleSet& X,
                        std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    MetricParams mp;
    mp.a = Vec::Zero(N);
    for (int i = 0; i < N; ++i) mp.a(i) = gauss(rng);
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    mp.p = sym(g * g.transpose()) + 0.1 * Mat::Identity(n, n);
    return project_feasible(mp, X);
}

}  // namespace

TEST_SUITE("product") {

TEST_CASE("product distance reduces to the factors") {
    MetricParams u{Vec::Zero(3), Mat::Identity(2, 2)};
    MetricParams v{Vec::Zero(3), Mat::Identity(2, 2)};
    v.a << 3.0, 4.0, 0.0;
    CHECK(product_dist(u, v) == doctest::Approx(5.0).epsilon(1e-13));

    MetricParams w{Vec::Zero(3), mat2(4, 0, 0, 4)};
    // SPD factor alone: d(I, 4I) = sqrt(2) ln 4
    CHECK(product_dist(u, w) ==
          doctest::Approx(std::sqrt(2.0) * std::log(4.0)).epsilon(1e-13));

    // both factors: sqrt(25 + 2 ln^2 4)
    MetricParams b{v.a, w.p};
    CHECK(product_dist(u, b) ==
          doctest::Approx(std::sqrt(25.0 + 2.0 * std::pow(std::log(4.0), 2)))
              .epsilon(1e-13));

    CHECK_THROWS_AS(product_dist(u, MetricParams{Vec::Zero(2), u.p}),
                    numerical_domain_error);
}

TEST_CASE("curvature constant of the product") {
    CHECK(kappa_hat == std::sqrt(0.5));
}

TEST_CASE("a step of length t moves exactly t") {
    std::mt19937_64 rng(31);
    FeasibleSet X{1.5, OrderInterval{0.5, 2.0}};
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        MetricParams x = rand_point(4, 2, X, rng);
        ProductTangent dir;
        dir.da = Vec::Zero(4);
        for (int i = 0; i < 4; ++i) dir.da(i) = gauss(rng);
        Mat g = mat2(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
        dir.dp = sym(g);
        for (double t : {0.01, 0.3, 1.7}) {
            MetricParams y = product_step(x, t, dir);
            CHECK(product_dist(x, y) == doctest::Approx(t).epsilon(1e-10));
        }
    }
    MetricParams x = rand_point(4, 2, X, rng);
    CHECK_THROWS_AS(
        product_step(x, 1.0, ProductTangent{Vec::Zero(4), Mat::Zero(2, 2)}),
        numerical_domain_error);
}

TEST_CASE("steps move against the direction") {
    FeasibleSet X{1.5, OrderInterval{0.5, 2.0}};
    MetricParams x{Vec::Zero(1), Mat::Identity(2, 2)};
    ProductTangent dir{Vec::Ones(1), Mat::Zero(2, 2)};
    MetricParams y = product_step(x, 0.5, dir);
    CHECK(y.a(0) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("feasibility projection clips both factors and is nonexpansive") {
    FeasibleSet X{1.5, OrderInterval{0.5, 2.0}};
    MetricParams far{Vec::Zero(2), mat2(3, 0, 0, 0.25)};
    far.a << 3.0, 4.0;
    MetricParams proj = project_feasible(far, X);
    CHECK(proj.a.norm() == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(proj.a(0) == doctest::Approx(0.9).epsilon(1e-13));
    CHECK((proj.p - mat2(2, 0, 0, 0.5)).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(X.contains(proj));
    MetricParams again = project_feasible(proj, X);
    CHECK(product_dist(proj, again) == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(37);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        MetricParams u{Vec::Zero(3), Mat::Identity(2, 2)};
        MetricParams v{Vec::Zero(3), Mat::Identity(2, 2)};
        for (int i = 0; i < 3; ++i) {
            u.a(i) = gauss(rng);
            v.a(i) = gauss(rng);
        }
        u.p = sym_exp(sym(mat2(gauss(rng), gauss(rng), gauss(rng), gauss(rng))) * 0.4);
        v.p = sym_exp(sym(mat2(gauss(rng), gauss(rng), gauss(rng), gauss(rng))) * 0.4);
        CHECK(product_dist(project_feasible(u, X), project_feasible(v, X)) <=
              product_dist(u, v) + 1e-12);
    }
}

TEST_CASE("feasible diameter formula and sampled distances") {
    FeasibleSet X{1.5, OrderInterval{0.5, 2.0}};
    // sqrt(4 R^2 + n ln^2(beta/alpha)) at R = 1.5, n = 2
    double expected = std::sqrt(9.0 + 2.0 * std::pow(std::log(4.0), 2));
    CHECK(feasible_diameter(X, 2, 14) ==
          doctest::Approx(3.5838002331806402).epsilon(1e-15));
    CHECK(feasible_diameter(X, 2, 14) == doctest::Approx(expected).epsilon(1e-15));
    // no polynomial part: ball term drops
    CHECK(feasible_diameter(X, 2, 0) ==
          doctest::Approx(std::sqrt(2.0) * std::log(4.0)).epsilon(1e-13));
    CHECK_THROWS_AS(feasible_diameter(FeasibleSet{-1.0, OrderInterval{0.5, 2.0}},
                                      2, 3),
                    numerical_domain_error);

    std::mt19937_64 rng(41);
    double diam = feasible_diameter(X, 2, 4);
    for (int trial = 0; trial < 300; ++trial) {
        MetricParams u = rand_point(4, 2, X, rng);
        MetricParams v = rand_point(4, 2, X, rng);
        CHECK(product_dist(u, v) <= diam + 1e-12);
    }
}

TEST_CASE("feasible membership") {
    FeasibleSet X{1.0, OrderInterval{0.5, 2.0}};
    MetricParams in{Vec::Zero(2), Mat::Identity(2, 2)};
    CHECK(X.contains(in));
    MetricParams out_ball = in;
    out_ball.a << 1.2, 0.0;
    CHECK_FALSE(X.contains(out_ball));
    MetricParams out_iv = in;
    out_iv.p = mat2(2.5, 0, 0, 1);
    CHECK_FALSE(X.contains(out_iv));
}

}  // TEST_SUITE
