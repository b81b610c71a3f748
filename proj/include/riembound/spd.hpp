#pragma once

/// Geometry of the cone SPD(n) of symmetric positive definite matrices
/// under the trace (affine invariant) metric
///
///     <v,w>_p = tr(p^-1 v p^-1 w),
///
/// which makes SPD(n) a Hadamard manifold with sectional curvature in
/// [-1/2, 0].  Provides distance, geodesics, exp/log maps, projection onto
/// order intervals [alpha*I, beta*I], orthonormal tangent bases and the
/// closed-form sectional curvature at the identity.

#include <vector>

#include <Eigen/Dense>

#include "riembound/errors.hpp"

namespace riembound {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Relative eigenvalue floor below which a matrix is rejected as not
/// positive definite (no silent regularization; the projection step of the
/// optimizer keeps iterates well inside the cone by construction).
inline constexpr double spd_eig_floor = 1e-13;

/// (m + m^T)/2, used after every matrix-function evaluation to suppress
/// round-off drift away from the symmetric subspace.
Mat sym(const Mat& m);

/// True iff m is symmetric up to 1e-12 relative and its smallest eigenvalue
/// exceeds spd_eig_floor * ||m||_2.
bool is_spd(const Mat& m);

/// Throws numerical_domain_error unless is_spd(m).
void require_spd(const Mat& m, const char* where);

/// m^t for symmetric positive definite m, via eigendecomposition.
Mat spd_power(const Mat& m, double t);

/// Matrix exponential of a symmetric matrix.
Mat sym_exp(const Mat& s);

/// Matrix logarithm of a symmetric positive definite matrix.
Mat spd_log_matrix(const Mat& m);

/// Trace-metric inner product <v,w>_p = tr(p^-1 v p^-1 w).
double inner(const Mat& p, const Mat& v, const Mat& w);

/// Norm induced by inner().
double norm(const Mat& p, const Mat& v);

/// Geodesic distance d(p,q) = sqrt(sum_i ln^2 lambda_i(p^-1 q)); the
/// lambda_i are the (real, positive) generalized eigenvalues of (q, p).
double dist(const Mat& p, const Mat& q);

/// Point at parameter theta on the unique geodesic from p to q,
///
///     p #_theta q = p^{1/2} (p^{-1/2} q p^{-1/2})^theta p^{1/2}.
///
/// theta outside [0,1] extrapolates along the same geodesic (still a valid
/// point of the manifold).
Mat geodesic(const Mat& p, const Mat& q, double theta);

/// exp_p(v) = p^{1/2} exp(p^{-1/2} v p^{-1/2}) p^{1/2}.
Mat exp_map(const Mat& p, const Mat& v);

/// Inverse of exp_map: log_p(q) = p^{1/2} log(p^{-1/2} q p^{-1/2}) p^{1/2},
/// with ||log_p(q)||_p = dist(p,q).
Mat log_map(const Mat& p, const Mat& q);

/// The order interval [alpha*I, beta*I]: all SPD matrices with spectrum
/// inside [alpha, beta].  Compact and geodesically convex.
struct OrderInterval {
    double alpha;
    double beta;

    bool valid() const { return 0.0 < alpha && alpha < beta; }
    /// Membership up to an absolute eigenvalue slack.
    bool contains(const Mat& p, double slack = 1e-12) const;
};

/// Metric projection onto [alpha*I, beta*I]: clip the eigenvalues of p to
/// [alpha, beta] in p's own eigenbasis.  Single valued and nonexpansive.
Mat project_interval(const Mat& p, const OrderInterval& iv);

/// Diameter of [alpha*I, beta*I] in SPD(n): sqrt(n) * ln(beta/alpha),
/// attained by the pair (alpha*I, beta*I).
double interval_diameter(const OrderInterval& iv, int n);

/// Orthonormal basis of the tangent space at p: e_i = p^{1/2} E_i p^{1/2}
/// where {E_i} is the Frobenius-orthonormal symmetric basis (diagonal units
/// first, then normalized off-diagonal pairs (E_ab + E_ba)/sqrt(2) in
/// lexicographic order).  Then <e_i, e_j>_p = tr(E_i E_j) = delta_ij.
std::vector<Mat> orthonormal_basis(const Mat& p);

/// Sectional curvature of the plane spanned by symmetric X, Y at the
/// identity:
///
///     K(X,Y) = -1/2 * [tr(X^2 Y^2) - tr((XY)^2)]
///              / [tr(X^2) tr(Y^2) - tr(XY)^2].
///
/// Always in [-1/2, 0]; the lower bound is attained (n=2: X = (E11-E22),
/// Y = (E12+E21)/sqrt(2)).  Throws degenerate_plane_error when X, Y are
/// linearly dependent.
double sectional_curvature_identity(const Mat& X, const Mat& Y);

}  // namespace riembound
