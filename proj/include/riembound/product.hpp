#pragma once

/// The product Hadamard manifold R^N x SPD(n): parameter space of the
/// metric family P(x) = e^{r_a(x)} p, where a is the coefficient vector of
/// the polynomial r_a and p the constant SPD part.  Product distance
///
///     d((a,p),(b,q))^2 = ||a - b||^2 + d_SPD(p,q)^2,
///
/// exponential step, feasible set (Euclidean ball x order interval),
/// projection and diameter.  Sectional curvature of the product stays in
/// [-1/2, 0], so the curvature constant used by the solver is
/// kappa_hat = sqrt(1/2).

#include <Eigen/Dense>

#include "riembound/spd.hpp"

namespace riembound {

/// sqrt of the curvature magnitude bound for R^N x SPD(n).
inline const double kappa_hat = std::sqrt(0.5);

/// A point of the product manifold: polynomial coefficients plus SPD part.
struct MetricParams {
    Vec a;  ///< length N (may be 0 for problems living on SPD(n) alone)
    Mat p;  ///< n x n symmetric positive definite
};

/// A tangent vector at a MetricParams point.
struct ProductTangent {
    Vec da;
    Mat dp;
};

/// Feasible set: {||a|| <= ball_radius} x [alpha*I, beta*I].
struct FeasibleSet {
    double ball_radius;
    OrderInterval interval;

    bool contains(const MetricParams& x, double slack = 1e-12) const;
};

/// Product geodesic distance.
double product_dist(const MetricParams& u, const MetricParams& v);

/// Norm of a tangent in the product metric:
/// sqrt(||da||^2 + <dp,dp>_p).
double product_norm(const MetricParams& x, const ProductTangent& t);

/// One descent step of length t against direction dir (the solver moves
/// along -dir/||dir||):
///
///     a' = a - t * da/||dir||,   p' = exp_p(-t * dp/||dir||),
///
/// so that product_dist(x, result) = t.  Throws on a zero direction.
MetricParams product_step(const MetricParams& x, double t,
                          const ProductTangent& dir);

/// Metric projection onto the feasible set: radial clipping of a to the
/// ball, eigenvalue clipping of p to the interval.  Idempotent and
/// nonexpansive in product_dist.
MetricParams project_feasible(const MetricParams& x, const FeasibleSet& X);

/// Diameter bound of the feasible set: sqrt(4R^2 + n ln^2(beta/alpha)).
/// N = 0 (no polynomial part) drops the ball contribution.
double feasible_diameter(const FeasibleSet& X, int n, int N);

}  // namespace riembound
