#include <cmath>
#include <random>

#include "doctest.h"
#include "riembound/errors.hpp"
#include "riembound/poly.hpp"

using namespace riembound;

namespace {

/// Straightforward reference evaluator: for each term multiply the plain
/// powers (no shared tables).
double naive_eval(const MonomialBasis& basis, const Vec& a, const Vec& x) {
    double total = 0.0;
    for (int j = 0; j < basis.size(); ++j) {
        double term = 1.0;
        for (int v = 0; v < basis.n_vars; ++v)
            term *= std::pow(x(v), basis.terms[static_cast<size_t>(j)]
                                       [static_cast<size_t>(v)]);
        total += a(j) * term;
    }
    return total;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("graded-lex ordering and labels") {
    MonomialBasis b22 = MonomialBasis::total_degree(2, 2);
    CHECK(b22.size() == 5);
    CHECK(term_labels(b22) ==
          std::vector<std::string>{"x", "y", "x^2", "xy", "y^2"});

    MonomialBasis b24 = MonomialBasis::total_degree(2, 4);
    CHECK(b24.size() == 14);
    std::vector<std::string> expected{
        "x",   "y",    "x^2",   "xy",   "y^2",  "x^3",  "x^2y",
        "xy^2", "y^3", "x^4",  "x^3y", "x^2y^2", "xy^3", "y^4"};
    CHECK(term_labels(b24) == expected);

    MonomialBasis b31 = MonomialBasis::total_degree(3, 1);
    CHECK(term_labels(b31) == std::vector<std::string>{"x", "y", "z"});

    MonomialBasis b41 = MonomialBasis::total_degree(4, 1);
    CHECK(term_labels(b41) ==
          std::vector<std::string>{"x1", "x2", "x3", "x4"});
}

TEST_CASE("basis size is C(d+n, n) - 1") {
    CHECK(MonomialBasis::total_degree(2, 1).size() == 2);
    CHECK(MonomialBasis::total_degree(2, 3).size() == 9);
    CHECK(MonomialBasis::total_degree(3, 2).size() == 9);
    CHECK(MonomialBasis::total_degree(3, 4).size() == 34);
}

TEST_CASE("evaluation pins") {
    MonomialBasis b = MonomialBasis::total_degree(2, 2);
    Vec a = Vec::Ones(5);
    Vec x(2);
    x << 1.0, 1.0;
    // x + y + x^2 + xy + y^2 = 5
    CHECK(eval(b, a, x) == doctest::Approx(5.0).epsilon(1e-15));
    x << 2.0, -1.0;
    // 2 - 1 + 4 - 2 + 1 = 4
    CHECK(eval(b, a, x) == doctest::Approx(4.0).epsilon(1e-14));
    Vec zero(2);
    zero.setZero();
    CHECK(eval(b, a, zero) == doctest::Approx(0.0));
}

TEST_CASE("evaluation is linear in the coefficients") {
    MonomialBasis b = MonomialBasis::total_degree(2, 4);
    std::mt19937_64 rng(43);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        Vec a1(b.size()), a2(b.size()), x(2);
        for (int i = 0; i < b.size(); ++i) {
            a1(i) = gauss(rng);
            a2(i) = gauss(rng);
        }
        x << gauss(rng), gauss(rng);
        double lhs = eval(b, 2.0 * a1 - 3.0 * a2, x);
        double rhs = 2.0 * eval(b, a1, x) - 3.0 * eval(b, a2, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("coefficient gradient matches evaluation exactly") {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int n_vars : {2, 3}) {
        MonomialBasis b = MonomialBasis::total_degree(n_vars, 4);
        for (int trial = 0; trial < 30; ++trial) {
            Vec a(b.size()), x(n_vars);
            for (int i = 0; i < b.size(); ++i) a(i) = gauss(rng);
            for (int i = 0; i < n_vars; ++i) x(i) = gauss(rng);
            // same arithmetic path, so equality is exact
            CHECK(eval(b, a, x) == a.dot(coeff_gradient(b, x)));
            CHECK(eval(b, a, x) ==
                  doctest::Approx(naive_eval(b, a, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("coefficient gradient pins") {
    MonomialBasis b = MonomialBasis::total_degree(2, 2);
    Vec x(2);
    x << 2.0, 3.0;
    Vec g = coeff_gradient(b, x);
    REQUIRE(g.size() == 5);
    CHECK(g(0) == doctest::Approx(2.0));   // x
    CHECK(g(1) == doctest::Approx(3.0));   // y
    CHECK(g(2) == doctest::Approx(4.0));   // x^2
    CHECK(g(3) == doctest::Approx(6.0));   // xy
    CHECK(g(4) == doctest::Approx(9.0));   // y^2
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(MonomialBasis::total_degree(0, 2), config_error);
    CHECK_THROWS_AS(MonomialBasis::total_degree(2, 0), config_error);
    MonomialBasis b = MonomialBasis::total_degree(2, 2);
    CHECK_THROWS_AS(eval(b, Vec::Ones(4), Vec::Zero(2)), config_error);
    CHECK_THROWS_AS(coeff_gradient(b, Vec::Zero(3)), config_error);
}

}  // TEST_SUITE
