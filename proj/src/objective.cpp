#include "riembound/objective.hpp"

#include <cmath>
#include <numbers>

namespace riembound {

namespace {

constexpr double kinf = std::numeric_limits<double>::infinity();
const double inv_ln2 = 1.0 / std::numbers::ln2;

/// Eigen factors of p used all over: p^{1/2} and p^{-1/2}.
struct SqrtFactors {
    Mat W;   ///< p^{1/2}
    Mat Wi;  ///< p^{-1/2}
};

SqrtFactors sqrt_factors(const Mat& p) {
    require_spd(p, "objective");
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(p));
    Vec sq = es.eigenvalues().cwiseSqrt();
    SqrtFactors f;
    f.W = sym(es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose());
    f.Wi = sym(es.eigenvectors() * sq.cwiseInverse().asDiagonal() *
               es.eigenvectors().transpose());
    return f;
}

Vec singular_values_of(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
}

/// Sigma_{k+s} from descending log2 singular values.
double sigma_from_logs(const Vec& l2, int k, double s) {
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += l2[i];
    if (s > 0.0) acc += s * l2[k];
    return acc;
}

struct ScanBest {
    double value = -kinf;
    int index = -1;
    int active_k = 0;
};

/// Scan one point table under fixed metric params.  2x2 systems use the
/// closed-form singular values
///     S1 = |(b00+b11, b01-b10)|, S2 = |(b00-b11, b01+b10)|,
///     alpha1 = (S1+S2)/2, alpha1*alpha2 = |det|,
/// so only one log is needed per point; other dimensions fall back to a
/// small SVD per point.
ScanBest scan_table(const PointTable& T, const Vec& a, const SqrtFactors& f,
                    const ObjectiveIndex& idx) {
    ScanBest best;
    const int N = T.N;
    const double* dm = T.dm.data();
    const double* Ab = T.A.data();
    const bool restoration = idx.mode == ObjectiveMode::max_over_k;
    const double c = restoration ? 0.0 : (idx.k + idx.s) * 0.5 * inv_ln2;

    if (T.n == 2) {
        const double w00 = f.W(0, 0), w01 = f.W(0, 1), w11 = f.W(1, 1);
        const double v00 = f.Wi(0, 0), v01 = f.Wi(0, 1), v11 = f.Wi(1, 1);
        for (int i = 0; i < T.count(); ++i) {
            double dr = 0.0;
            const double* dmi = dm + static_cast<ptrdiff_t>(i) * N;
            for (int j = 0; j < N; ++j) dr += a[j] * dmi[j];
            const double* Ai = Ab + static_cast<ptrdiff_t>(i) * 4;
            const double a00 = Ai[0], a10 = Ai[1], a01 = Ai[2], a11 = Ai[3];
            // b = W * A * Wi with symmetric W, Wi
            const double t00 = w00 * a00 + w01 * a10;
            const double t01 = w00 * a01 + w01 * a11;
            const double t10 = w01 * a00 + w11 * a10;
            const double t11 = w01 * a01 + w11 * a11;
            const double b00 = t00 * v00 + t01 * v01;
            const double b01 = t00 * v01 + t01 * v11;
            const double b10 = t10 * v00 + t11 * v01;
            const double b11 = t10 * v01 + t11 * v11;
            const double x1 = b00 + b11, y1 = b01 - b10;
            const double x2 = b00 - b11, y2 = b01 + b10;
            const double S1 = std::sqrt(x1 * x1 + y1 * y1);
            const double S2 = std::sqrt(x2 * x2 + y2 * y2);
            const double l1 = std::log2(0.5 * (S1 + S2));
            const double ld = T.log2det[i];
            double val;
            int ak = 0;
            if (restoration) {
                val = 0.0;  // k = 0
                const double j1 = 0.5 * inv_ln2 * dr + l1;
                if (j1 >= val) { val = j1; ak = 1; }
                const double j2 = inv_ln2 * dr + ld;
                if (j2 >= val) { val = j2; ak = 2; }
            } else if (idx.k == 0) {
                val = c * dr + idx.s * l1;
            } else if (idx.k == 1) {
                val = c * dr + l1 + idx.s * (ld - l1);
            } else {
                val = c * dr + ld;
            }
            if (val > best.value) {
                best.value = val;
                best.index = i;
                best.active_k = ak;
            }
        }
        return best;
    }

    const int n = T.n;
    for (int i = 0; i < T.count(); ++i) {
        double dr = 0.0;
        const double* dmi = dm + static_cast<ptrdiff_t>(i) * N;
        for (int j = 0; j < N; ++j) dr += a[j] * dmi[j];
        Eigen::Map<const Mat> Ai(Ab + static_cast<ptrdiff_t>(i) * n * n, n, n);
        Vec alphas = singular_values_of(f.W * Ai * f.Wi);
        Vec l2 = alphas.array().log() * inv_ln2;
        double val;
        int ak = 0;
        if (restoration) {
            val = 0.0;
            double prefix = 0.0;
            for (int k = 1; k <= n; ++k) {
                prefix += l2[k - 1];
                double jk = k * 0.5 * inv_ln2 * dr + prefix;
                if (jk >= val) { val = jk; ak = k; }
            }
        } else {
            val = c * dr + sigma_from_logs(l2, idx.k, idx.s);
        }
        if (val > best.value) {
            best.value = val;
            best.index = i;
            best.active_k = ak;
        }
    }
    return best;
}

MaximizeResult maximize_with_tables(const MonomialBasis& basis,
                                    const SmoothMap& map,
                                    const QuadRegion& region,
                                    const GridSpec& spec,
                                    const ObjectiveIndex& idx,
                                    const MetricParams& params,
                                    const PointTable& coarse) {
    idx.validate(map.dim);
    SqrtFactors f = sqrt_factors(params.p);
    ScanBest best = scan_table(coarse, params.a, f, idx);
    const PointTable* winner_table = &coarse;
    PointTable refined;
    bool refined_won = false;
    if (spec.refine) {
        refined = build_point_table(basis, map, region,
                                    refine_uv(spec, coarse.uv[best.index]));
        ScanBest rb = scan_table(refined, params.a, f, idx);
        if (rb.value > best.value) {
            best = rb;
            winner_table = &refined;
            refined_won = true;
        }
    }
    MaximizeResult out;
    out.x_star = winner_table->x[best.index];
    out.uv_star = winner_table->uv[best.index];
    out.value = best.value;
    out.active_k = best.active_k;
    const int n = winner_table->n;
    out.A_star = Eigen::Map<const Mat>(
        winner_table->A.data() + static_cast<ptrdiff_t>(best.index) * n * n, n, n);
    out.dm_star = Eigen::Map<const Vec>(
        winner_table->dm.data() + static_cast<ptrdiff_t>(best.index) * winner_table->N,
        winner_table->N);
    out.refined_won = refined_won;
    return out;
}

bool gap_is_exact(const Vec& alphas, int k, double gap) {
    if (k == 0) return true;
    return gap > gap_rel_tolerance * alphas[0];
}

SubgradientResult subgradient_from(const MaximizeResult& mr,
                                   const MetricParams& params,
                                   const ObjectiveIndex& idx) {
    const int n = static_cast<int>(mr.A_star.rows());
    SqrtFactors f = sqrt_factors(params.p);
    Vec alphas = singular_values_of(f.W * mr.A_star * f.Wi);

    SubgradientResult r;
    r.value = mr.value;
    r.maximizer = mr.x_star;

    double c;
    if (idx.mode == ObjectiveMode::max_over_k) {
        r.active_k = mr.active_k;
        auto [g, gap] = subgrad_spd(params.p, mr.A_star, r.active_k);
        r.grad.dp = g;
        r.gap_delta = gap;
        r.exact_flag = gap_is_exact(alphas, r.active_k, gap);
        c = r.active_k * 0.5 * inv_ln2;
    } else if (idx.s == 0.0) {
        r.active_k = idx.k;
        auto [g, gap] = subgrad_spd(params.p, mr.A_star, idx.k);
        r.grad.dp = g;
        r.gap_delta = gap;
        r.exact_flag = gap_is_exact(alphas, idx.k, gap);
        c = idx.k * 0.5 * inv_ln2;
    } else {
        r.active_k = idx.k;
        auto [gk, gap_k] = subgrad_spd(params.p, mr.A_star, idx.k);
        auto [gk1, gap_k1] = subgrad_spd(params.p, mr.A_star, idx.k + 1);
        r.grad.dp = (1.0 - idx.s) * gk + idx.s * gk1;
        r.gap_delta = gap_k;
        r.exact_flag = gap_is_exact(alphas, idx.k, gap_k) &&
                       gap_is_exact(alphas, idx.k + 1, gap_k1);
        c = (idx.k + idx.s) * 0.5 * inv_ln2;
    }
    r.grad.da = c * mr.dm_star;
    return r;
}

}  // namespace

void ObjectiveIndex::validate(int n) const {
    if (mode == ObjectiveMode::max_over_k) return;
    if (k < 0 || k > n)
        throw config_error("ObjectiveIndex: k must lie in [0, n]");
    if (s < 0.0 || s >= 1.0)
        throw config_error("ObjectiveIndex: s must lie in [0, 1)");
    if (s > 0.0 && k > n - 1)
        throw config_error("ObjectiveIndex: fractional s requires k <= n-1");
}

Mat metric_at(const MonomialBasis& basis, const MetricParams& params,
              const Vec& x) {
    require_spd(params.p, "metric_at");
    double r = eval(basis, params.a, x);
    if (std::abs(r) > 700.0)
        throw numerical_domain_error("metric_at: scalar exponential overflow");
    return std::exp(r) * params.p;
}

SingularSpectrum weighted_singular_values(const MonomialBasis& basis,
                                          const MetricParams& params,
                                          const SmoothMap& map, const Vec& x) {
    const Mat A = map.jacobian(x);
    if (std::abs(A.determinant()) <= 1e-12)
        throw numerical_domain_error(
            "weighted_singular_values: Jacobian is singular");
    double r1 = eval(basis, params.a, x);
    double r2 = eval(basis, params.a, map.eval(x));
    if (std::abs(r1) > 700.0 || std::abs(r2) > 700.0 ||
        std::abs(0.5 * (r2 - r1)) > 700.0)
        throw numerical_domain_error(
            "weighted_singular_values: scalar exponential overflow");
    SqrtFactors f = sqrt_factors(params.p);
    SingularSpectrum sp;
    sp.alphas = std::exp(0.5 * (r2 - r1)) * singular_values_of(f.W * A * f.Wi);
    return sp;
}

double sigma_ks(const MonomialBasis& basis, const MetricParams& params,
                const SmoothMap& map, const Vec& x, const ObjectiveIndex& idx) {
    idx.validate(map.dim);
    SingularSpectrum sp = weighted_singular_values(basis, params, map, x);
    Vec l2 = sp.alphas.array().log() * inv_ln2;
    if (idx.mode == ObjectiveMode::single_index)
        return sigma_from_logs(l2, idx.k, idx.s);
    double best = 0.0, prefix = 0.0;
    for (int k = 1; k <= map.dim; ++k) {
        prefix += l2[k - 1];
        if (prefix >= best) best = prefix;
    }
    return best;
}

double j_value(const MonomialBasis& basis, const MetricParams& params,
               const SmoothMap& map, const Vec& x, const ObjectiveIndex& idx) {
    idx.validate(map.dim);
    const Mat A = map.jacobian(x);
    if (std::abs(A.determinant()) <= 1e-12)
        throw numerical_domain_error("j_value: Jacobian is singular");
    double dr = eval(basis, params.a, map.eval(x)) - eval(basis, params.a, x);
    SqrtFactors f = sqrt_factors(params.p);
    Vec l2 = singular_values_of(f.W * A * f.Wi).array().log() * inv_ln2;
    if (idx.mode == ObjectiveMode::single_index)
        return (idx.k + idx.s) * 0.5 * inv_ln2 * dr +
               sigma_from_logs(l2, idx.k, idx.s);
    double best = 0.0, prefix = 0.0;
    for (int k = 1; k <= map.dim; ++k) {
        prefix += l2[k - 1];
        double jk = k * 0.5 * inv_ln2 * dr + prefix;
        if (jk >= best) best = jk;
    }
    return best;
}

PointTable build_point_table(const MonomialBasis& basis, const SmoothMap& map,
                             const QuadRegion& region,
                             const std::vector<Vec2>& uv) {
    if (map.dim != 2 || basis.n_vars != 2)
        throw config_error("build_point_table: region grids are 2-D");
    PointTable T;
    T.n = 2;
    T.N = basis.size();
    const int count = static_cast<int>(uv.size());
    T.x.reserve(count);
    T.uv = uv;
    T.A.resize(static_cast<size_t>(count) * 4);
    T.dm.resize(static_cast<size_t>(count) * T.N);
    T.log2det.resize(count);
    Eigen::VectorXd xv(2);
    for (int i = 0; i < count; ++i) {
        Vec2 x = region.at(uv[i].x(), uv[i].y());
        T.x.push_back(x);
        xv << x.x(), x.y();
        Mat A = map.jacobian(xv);
        double det = A.determinant();
        if (std::abs(det) <= 1e-12)
            throw numerical_domain_error(
                "build_point_table: Jacobian is singular at a grid point");
        T.A[i * 4 + 0] = A(0, 0);
        T.A[i * 4 + 1] = A(1, 0);
        T.A[i * 4 + 2] = A(0, 1);
        T.A[i * 4 + 3] = A(1, 1);
        Vec dm = coeff_gradient(basis, map.eval(xv)) - coeff_gradient(basis, xv);
        for (int j = 0; j < T.N; ++j) T.dm[static_cast<size_t>(i) * T.N + j] = dm[j];
        T.log2det[i] = std::log2(std::abs(det));
    }
    return T;
}

MaximizeResult maximize_over_region(const MonomialBasis& basis,
                                    const MetricParams& params,
                                    const SmoothMap& map,
                                    const QuadRegion& region,
                                    const GridSpec& spec,
                                    const ObjectiveIndex& idx) {
    GridSpec coarse_spec = spec;
    std::vector<Vec2> uv;
    uv.reserve(static_cast<size_t>(spec.m) * spec.m);
    const double h = 1.0 / (spec.m - 1);
    for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.m; ++j) uv.push_back(Vec2(i * h, j * h));
    PointTable coarse = build_point_table(basis, map, region, uv);
    return maximize_with_tables(basis, map, region, coarse_spec, idx, params,
                                coarse);
}

std::pair<Mat, double> subgrad_spd(const Mat& p, const Mat& A, int k) {
    require_spd(p, "subgrad_spd");
    const int n = static_cast<int>(p.rows());
    if (k < 0 || k > n)
        throw config_error("subgrad_spd: k must lie in [0, n]");
    if (std::abs(A.determinant()) <= 1e-12)
        throw numerical_domain_error("subgrad_spd: Jacobian is singular");
    if (k == 0) return {Mat::Zero(n, n), kinf};

    Eigen::SelfAdjointEigenSolver<Mat> es(sym(p));
    const Mat& Q = es.eigenvectors();
    Vec sq = es.eigenvalues().cwiseSqrt();
    Mat W = sym(Q * sq.asDiagonal() * Q.transpose());
    Mat Wi = sym(Q * sq.cwiseInverse().asDiagonal() * Q.transpose());
    Mat zeta = W * A * Wi;

    Eigen::JacobiSVD<Mat> svd(zeta, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec alphas = svd.singularValues();
    double gap = (k == n) ? alphas[n - 1] : alphas[k - 1] - alphas[k];

    Mat S = inv_ln2 * svd.matrixU().leftCols(k) *
            alphas.head(k).cwiseInverse().asDiagonal() *
            svd.matrixV().leftCols(k).transpose();

    Mat AWi = A * Wi;
    Mat grad = Mat::Zero(n, n);
    std::vector<Mat> basis = orthonormal_basis(p);
    for (const Mat& e : basis) {
        // symmetric Sylvester equation p^{1/2} X + X p^{1/2} = e, solved in
        // the eigenbasis of p
        Mat ehat = Q.transpose() * e * Q;
        Mat Xhat(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) Xhat(a, b) = ehat(a, b) / (sq[a] + sq[b]);
        Mat X = Q * Xhat * Q.transpose();
        Mat Z = X * AWi - zeta * X * Wi;
        grad += S.cwiseProduct(Z).sum() * e;
    }
    return {sym(grad), gap};
}

SubgradientResult subgradient(const MonomialBasis& basis,
                              const MetricParams& params, const SmoothMap& map,
                              const QuadRegion& region, const GridSpec& spec,
                              const ObjectiveIndex& idx) {
    MaximizeResult mr =
        maximize_over_region(basis, params, map, region, spec, idx);
    return subgradient_from(mr, params, idx);
}

double lipschitz_constant(int n) {
    if (n < 1) throw config_error("lipschitz_constant: n >= 1");
    return std::sqrt(static_cast<double>(n)) * inv_ln2;
}

double wedin_error_bound(const Mat& p, const Mat& A_x, const Mat& A_y, int k) {
    const int n = static_cast<int>(p.rows());
    if (k < 1 || k > n - 1)
        throw config_error("wedin_error_bound: k must lie in [1, n-1]");
    SqrtFactors f = sqrt_factors(p);
    Vec ax = singular_values_of(f.W * A_x * f.Wi);
    Vec ay = singular_values_of(f.W * A_y * f.Wi);
    double delta = ay[k - 1] - ax[k];
    if (!(delta > 0.0))
        throw gap_violation_error(
            "wedin_error_bound: cross spectral gap is not positive");
    return std::sqrt(2.0 * n * (n + 1)) * inv_ln2 / delta * f.W.norm() *
           f.Wi.norm() * (A_x - A_y).norm();
}

Vec sigma_vec(const Mat& g) {
    Vec alphas = singular_values_of(g);
    const int n = static_cast<int>(alphas.size());
    if (!(alphas[n - 1] > 1e-12 * alphas[0]))
        throw numerical_domain_error("sigma_vec: matrix is singular");
    return alphas.array().log() * inv_ln2;
}

bool majorization_leq(const Vec& xi, const Vec& eta, double tol) {
    const int n = static_cast<int>(xi.size());
    if (eta.size() != n)
        throw numerical_domain_error("majorization_leq: length mismatch");
    for (int i = 0; i + 1 < n; ++i)
        if (xi[i] < xi[i + 1] - tol || eta[i] < eta[i + 1] - tol)
            throw numerical_domain_error(
                "majorization_leq: inputs must be descending");
    double sx = 0.0, se = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += xi[i];
        se += eta[i];
        if (i + 1 < n && sx > se + tol) return false;
    }
    return std::abs(sx - se) <= tol;
}

RegionObjective::RegionObjective(MonomialBasis basis, SmoothMap map,
                                 QuadRegion region, GridSpec spec,
                                 ObjectiveIndex idx)
    : basis_(std::move(basis)),
      map_(std::move(map)),
      region_(region),
      spec_(spec),
      idx_(idx) {
    idx_.validate(map_.dim);
    std::vector<Vec2> uv;
    uv.reserve(static_cast<size_t>(spec_.m) * spec_.m);
    const double h = 1.0 / (spec_.m - 1);
    for (int i = 0; i < spec_.m; ++i)
        for (int j = 0; j < spec_.m; ++j) uv.push_back(Vec2(i * h, j * h));
    coarse_ = build_point_table(basis_, map_, region_, uv);
}

void RegionObjective::set_index(const ObjectiveIndex& idx) {
    ObjectiveIndex copy = idx;
    copy.validate(map_.dim);
    idx_ = copy;
}

SubgradientResult RegionObjective::eval(const MetricParams& params) const {
    MaximizeResult mr = maximize_with_tables(basis_, map_, region_, spec_, idx_,
                                             params, coarse_);
    return subgradient_from(mr, params, idx_);
}

double RegionObjective::max_dm_norm() const {
    double best = 0.0;
    for (int i = 0; i < coarse_.count(); ++i) {
        Eigen::Map<const Vec> dmi(
            coarse_.dm.data() + static_cast<ptrdiff_t>(i) * coarse_.N, coarse_.N);
        best = std::max(best, dmi.norm());
    }
    return best;
}

double iota_default(const RegionObjective& objective) {
    const int n = objective.coarse_table().n;
    const ObjectiveIndex& idx = objective.index();
    double c = (idx.mode == ObjectiveMode::max_over_k)
                   ? n * 0.5 * inv_ln2
                   : (idx.k + idx.s) * 0.5 * inv_ln2;
    return lipschitz_constant(n) + c * objective.max_dm_norm();
}

}  // namespace riembound
