#pragma once

/// Singular values of the system Jacobian measured in a state-dependent
/// metric P(x) = e^{r_a(x)} p, the log-singular-value objectives
///
///     Sigma_{k+s,x}(P) = sum_{i<=k} log2 alpha_i^P(x) + s log2 alpha_{k+1}^P(x),
///     J_{k+s,x}(a,p)   = (k+s)/(2 ln 2) (r_a(phi x) - r_a(x)) + Sigma_{k+s,x}(p),
///
/// their maximization over a gridded region, the subgradient of the max
/// function on R^N x SPD(n), the global Lipschitz constant sqrt(n)/ln 2,
/// and a Wedin-type error bound for the subgradient under Jacobian
/// perturbations.  alpha_i^P(x) are the singular values of
/// B(x) = P(phi x)^{1/2} A(x) P(x)^{-1/2}.

#include <limits>
#include <utility>
#include <vector>

#include "riembound/poly.hpp"
#include "riembound/product.hpp"
#include "riembound/system.hpp"

namespace riembound {

/// Descending singular values alpha_1 >= ... >= alpha_n > 0.
struct SingularSpectrum {
    Vec alphas;
};

enum class ObjectiveMode {
    single_index,  ///< J_{k+s} for one fixed (k, s)
    max_over_k     ///< max_{0<=k<=n} J_k with Sigma_0 == 0 (entropy objective)
};

struct ObjectiveIndex {
    int k = 1;
    double s = 0.0;
    ObjectiveMode mode = ObjectiveMode::single_index;

    static ObjectiveIndex single(int k, double s = 0.0) {
        return ObjectiveIndex{k, s, ObjectiveMode::single_index};
    }
    static ObjectiveIndex restoration() {
        return ObjectiveIndex{0, 0.0, ObjectiveMode::max_over_k};
    }
    /// k in [0, n]; s in [0, 1); fractional s requires k <= n-1.
    void validate(int n) const;
};

/// Relative spectral-gap tolerance below which a subgradient is flagged
/// inexact (gap measured against alpha_1).
inline constexpr double gap_rel_tolerance = 1e-10;

/// P(x) = e^{r_a(x)} p.  Throws numerical_domain_error when |r_a(x)| > 700
/// (scalar exponential overflow).
Mat metric_at(const MonomialBasis& basis, const MetricParams& params,
              const Vec& x);

/// Singular values of B(x) = P(phi x)^{1/2} A(x) P(x)^{-1/2}, descending.
SingularSpectrum weighted_singular_values(const MonomialBasis& basis,
                                          const MetricParams& params,
                                          const SmoothMap& map, const Vec& x);

/// Sigma_{k+s,x}(P) from the weighted spectrum (single index), or
/// max_k Sigma_{k,x}(P) in restoration mode.
double sigma_ks(const MonomialBasis& basis, const MetricParams& params,
                const SmoothMap& map, const Vec& x, const ObjectiveIndex& idx);

/// Same value through the linear + spectral split
/// J = (k+s)/(2 ln 2) * (r_a(phi x) - r_a(x)) + Sigma_{k+s,x}(p); never
/// exponentiates, so it is safe for arbitrary coefficient vectors.
double j_value(const MonomialBasis& basis, const MetricParams& params,
               const SmoothMap& map, const Vec& x, const ObjectiveIndex& idx);

/// Where and how large the grid maximum of x -> J_{k+s,x} is.
struct MaximizeResult {
    Vec2 x_star;   ///< maximizer in state space
    Vec2 uv_star;  ///< its unit-square coordinates
    double value;      ///< max over coarse grid (union refinement if enabled)
    int active_k;      ///< restoration mode: the k attaining the max
    Mat A_star;        ///< Jacobian at the maximizer
    Vec dm_star;       ///< coeff_gradient(phi x*) - coeff_gradient(x*)
    bool refined_won;  ///< maximizer came from the refinement pass
};

/// Grid maximum with deterministic tie-breaks: first point in enumeration
/// order (coarse pass first, then refinement); a refined candidate replaces
/// the coarse winner only when strictly larger.
MaximizeResult maximize_over_region(const MonomialBasis& basis,
                                    const MetricParams& params,
                                    const SmoothMap& map,
                                    const QuadRegion& region,
                                    const GridSpec& spec,
                                    const ObjectiveIndex& idx);

/// Six-step subgradient of p -> Sigma_{k,x}(p) at fixed x (Jacobian A):
///   (1) orthonormal tangent basis e_i = p^{1/2} E_i p^{1/2};
///   (2) X_i from the symmetric Sylvester equation
///       p^{1/2} X_i + X_i p^{1/2} = e_i, solved in the eigenbasis of p;
///   (3) Z_i = X_i A p^{-1/2} - p^{1/2} A p^{-1/2} X_i p^{-1/2};
///   (4) SVD of zeta = p^{1/2} A p^{-1/2};
///   (5) S = (1/ln 2) * U_k diag(alpha_1^-1..alpha_k^-1) V_k^T;
///   (6) grad = sum_i tr(S^T Z_i) e_i.
/// Returns (gradient, spectral gap alpha_k - alpha_{k+1}).  k = 0 returns a
/// zero tangent with infinite gap; k = n reports gap alpha_n (the objective
/// is then constant in p, and the returned tangent vanishes).
std::pair<Mat, double> subgrad_spd(const Mat& p, const Mat& A, int k);

struct SubgradientResult {
    ProductTangent grad;
    double value;      ///< max_{x in grid} J at the given params (bits)
    Vec2 maximizer;    ///< x* attaining the max
    int active_k;      ///< k used for the spectral part
    double gap_delta;  ///< alpha_k - alpha_{k+1} at the maximizer
    bool exact_flag;   ///< every spectral gap used exceeds the tolerance
};

/// Subgradient of (a,p) -> max_{x in grid} J_{k+s,x}(a,p): linear part from
/// the coefficient gradient at the maximizer, spectral part from
/// subgrad_spd; fractional s blends (1-s) * grad_k + s * grad_{k+1} at the
/// single maximizer; restoration mode uses the active k (ties toward larger
/// k).
SubgradientResult subgradient(const MonomialBasis& basis,
                              const MetricParams& params, const SmoothMap& map,
                              const QuadRegion& region, const GridSpec& spec,
                              const ObjectiveIndex& idx);

/// Global Lipschitz constant of p -> Sigma_{k+s,x}(p): sqrt(n)/ln 2.
double lipschitz_constant(int n);

/// Wedin-type bound on the subgradient change under a Jacobian perturbation:
///
///     sqrt(2n(n+1))/ln 2 * (1/delta) * ||p^{1/2}||_F ||p^{-1/2}||_F
///                                    * ||A_x - A_y||_F,
///
/// with the cross gap delta = alpha_k(zeta_y) - alpha_{k+1}(zeta_x) > 0.
/// Throws gap_violation_error when delta <= 0.
double wedin_error_bound(const Mat& p, const Mat& A_x, const Mat& A_y, int k);

/// sigma_vec(g) = (log2 alpha_1(g), ..., log2 alpha_n(g)), descending.
Vec sigma_vec(const Mat& g);

/// Majorization partial order on descending vectors: all prefix sums of xi
/// bounded by those of eta, with equality of the total sums (tol).
bool majorization_leq(const Vec& xi, const Vec& eta, double tol = 1e-9);

/// Per-point data of a gridded region, precomputed once (Jacobian,
/// monomial difference vector, log2 |det A|); metric independent, so a
/// multi-iteration run rescans it with only the metric changing.
struct PointTable {
    int n = 0;  ///< state dimension
    int N = 0;  ///< basis size
    std::vector<Vec2> x;
    std::vector<Vec2> uv;
    std::vector<double> A;        ///< column-major n*n blocks per point
    std::vector<double> dm;       ///< N-blocks per point
    std::vector<double> log2det;  ///< log2 |det A(x)|
    int count() const { return static_cast<int>(x.size()); }
};

/// Evaluate map/basis data for an explicit uv list.
PointTable build_point_table(const MonomialBasis& basis, const SmoothMap& map,
                             const QuadRegion& region,
                             const std::vector<Vec2>& uv);

/// Reusable objective over a fixed region grid: caches the coarse point
/// table across solver iterations and exposes the value+subgradient
/// evaluation the solver consumes.
class RegionObjective {
  public:
    RegionObjective(MonomialBasis basis, SmoothMap map, QuadRegion region,
                    GridSpec spec, ObjectiveIndex idx);

    SubgradientResult eval(const MetricParams& params) const;

    /// Retarget (k, s) while keeping the cached point table; the table
    /// depends only on the map, region, basis and grid.
    void set_index(const ObjectiveIndex& idx);

    const PointTable& coarse_table() const { return coarse_; }
    const MonomialBasis& basis() const { return basis_; }
    const ObjectiveIndex& index() const { return idx_; }
    const GridSpec& grid() const { return spec_; }

    /// max over the coarse grid of the Euclidean norm of the monomial
    /// difference vector; used for the default subgradient-norm bound iota.
    double max_dm_norm() const;

  private:
    MonomialBasis basis_;
    SmoothMap map_;
    QuadRegion region_;
    GridSpec spec_;
    ObjectiveIndex idx_;
    PointTable coarse_;
};

/// Default bound iota on subgradient norms for the convergence formulas:
/// Lipschitz constant of the spectral part plus the largest linear-part
/// gradient norm over the grid, (k_max+s)/(2 ln 2) * max ||dm||.
double iota_default(const RegionObjective& objective);

}  // namespace riembound
