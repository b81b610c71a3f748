#include "riembound/spd.hpp"

#include <cmath>
#include <string>

namespace riembound {

namespace {

/// Apply a scalar function to the eigenvalues of a symmetric matrix.
template <typename F>
Mat sym_matrix_function(const Mat& m, F&& f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(m));
    Vec lam = es.eigenvalues();
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = f(lam[i]);
    return sym(es.eigenvectors() * lam.asDiagonal() *
               es.eigenvectors().transpose());
}

}  // namespace

Mat sym(const Mat& m) { return 0.5 * (m + m.transpose()); }

bool is_spd(const Mat& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    double scale = m.norm();
    if (!(scale > 0.0)) return false;
    if ((m - m.transpose()).norm() > 1e-12 * scale) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(m), Eigen::EigenvaluesOnly);
    double lam_min = es.eigenvalues().minCoeff();
    double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    return lam_min > spd_eig_floor * lam_max;
}

void require_spd(const Mat& m, const char* where) {
    if (!is_spd(m))
        throw numerical_domain_error(std::string(where) +
                                     ": matrix is not symmetric positive definite");
}

Mat spd_power(const Mat& m, double t) {
    require_spd(m, "spd_power");
    return sym_matrix_function(m, [t](double x) { return std::pow(x, t); });
}

Mat sym_exp(const Mat& s) {
    return sym_matrix_function(s, [](double x) { return std::exp(x); });
}

Mat spd_log_matrix(const Mat& m) {
    require_spd(m, "spd_log_matrix");
    return sym_matrix_function(m, [](double x) { return std::log(x); });
}

double inner(const Mat& p, const Mat& v, const Mat& w) {
    require_spd(p, "inner");
    Mat pinv = p.inverse();
    return (pinv * v * pinv * w).trace();
}

double norm(const Mat& p, const Mat& v) {
    double g = inner(p, v, v);
    return g > 0.0 ? std::sqrt(g) : 0.0;
}

double dist(const Mat& p, const Mat& q) {
    require_spd(p, "dist");
    require_spd(q, "dist");
    // generalized eigenvalues of (q, p) coincide with the spectrum of p^-1 q
    // and are real and positive
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(sym(q), sym(p),
                                                     Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        double l = std::log(es.eigenvalues()[i]);
        acc += l * l;
    }
    return std::sqrt(acc);
}

Mat geodesic(const Mat& p, const Mat& q, double theta) {
    require_spd(p, "geodesic");
    require_spd(q, "geodesic");
    Mat ps = spd_power(p, 0.5);
    Mat psi = spd_power(p, -0.5);
    Mat mid = spd_power(sym(psi * q * psi), theta);
    return sym(ps * mid * ps);
}

Mat exp_map(const Mat& p, const Mat& v) {
    require_spd(p, "exp_map");
    Mat ps = spd_power(p, 0.5);
    Mat psi = spd_power(p, -0.5);
    return sym(ps * sym_exp(sym(psi * v * psi)) * ps);
}

Mat log_map(const Mat& p, const Mat& q) {
    require_spd(p, "log_map");
    require_spd(q, "log_map");
    Mat ps = spd_power(p, 0.5);
    Mat psi = spd_power(p, -0.5);
    return sym(ps * spd_log_matrix(sym(psi * q * psi)) * ps);
}

bool OrderInterval::contains(const Mat& p, double slack) const {
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(p), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= alpha - slack &&
           es.eigenvalues().maxCoeff() <= beta + slack;
}

Mat project_interval(const Mat& p, const OrderInterval& iv) {
    require_spd(p, "project_interval");
    if (!iv.valid())
        throw numerical_domain_error("project_interval: invalid interval");
    return sym_matrix_function(p, [&iv](double x) {
        return std::min(std::max(x, iv.alpha), iv.beta);
    });
}

double interval_diameter(const OrderInterval& iv, int n) {
    if (!iv.valid() || n < 1)
        throw numerical_domain_error("interval_diameter: invalid arguments");
    return std::sqrt(static_cast<double>(n)) * std::log(iv.beta / iv.alpha);
}

std::vector<Mat> orthonormal_basis(const Mat& p) {
    require_spd(p, "orthonormal_basis");
    const Eigen::Index n = p.rows();
    Mat ps = spd_power(p, 0.5);
    std::vector<Mat> basis;
    basis.reserve(static_cast<size_t>(n * (n + 1) / 2));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        Mat e = Mat::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(sym(ps * e * ps));
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Mat e = Mat::Zero(n, n);
            e(i, j) = e(j, i) = inv_sqrt2;
            basis.push_back(sym(ps * e * ps));
        }
    return basis;
}

double sectional_curvature_identity(const Mat& X, const Mat& Y) {
    Mat Xs = sym(X), Ys = sym(Y);
    double xx = (Xs * Xs).trace();
    double yy = (Ys * Ys).trace();
    double xy = (Xs * Ys).trace();
    double gram = xx * yy - xy * xy;
    if (gram <= 1e-12 * std::max(xx * yy, 1e-300))
        throw degenerate_plane_error(
            "sectional_curvature_identity: tangents span a degenerate plane");
    double num = (Xs * Xs * Ys * Ys).trace() - (Xs * Ys * Xs * Ys).trace();
    return -0.5 * num / gram;
}

}  // namespace riembound
