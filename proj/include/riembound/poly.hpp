#pragma once

/// Multivariate monomial basis for the polynomial part r_a of the metric:
/// all monomials in n variables of total degree 1..d (the constant term is
/// pinned to zero, so the basis has C(d+n, n) - 1 elements), ordered graded
/// lexicographically with earlier variables dominating:
///
///     n=2, d=4:  x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3,
///                x^4, x^3y, x^2y^2, xy^3, y^4.
///
/// This matches the row order used by the metric report tables.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riembound/errors.hpp"

namespace riembound {

using Vec = Eigen::VectorXd;

struct MonomialBasis {
    int n_vars = 0;
    int degree = 0;
    /// Exponent multi-indices, graded-lex, constant excluded.
    std::vector<std::vector<int>> terms;

    /// Build the full total-degree basis.
    static MonomialBasis total_degree(int n_vars, int degree);

    int size() const { return static_cast<int>(terms.size()); }
};

/// r_a(x) = sum_j a_j * x^{terms[j]}.
double eval(const MonomialBasis& basis, const Vec& a, const Vec& x);

/// Gradient of eval with respect to the coefficients: the vector of
/// monomial values at x, so eval(basis, a, x) = a . coeff_gradient(basis, x)
/// exactly (same arithmetic).
Vec coeff_gradient(const MonomialBasis& basis, const Vec& x);

/// Human-readable term names in basis order: "x", "y", "x^2", "xy", ...
/// Variables are named x, y, z for n <= 3 and x1..xn beyond.
std::vector<std::string> term_labels(const MonomialBasis& basis);

}  // namespace riembound
