#pragma once

/// Projected inexact subgradient descent on R^N x SPD(n):
///
///     p_{k+1} = Proj_X( exp_{p_k}( -t_k v_k / ||v_k|| ) ),
///
/// with exogenous (t_k = t0/(k+1)), constant, and Polyak step rules, plus
/// the convergence-rate calculators
///
///     zeta  = D sinh(kh*sigma) / (sigma tanh(kh*D)),
///     exogenous bound  (eps+iota)(D^2 + zeta*sum t^2) / (2 sum t),
///     Gamma = (2a - kh*D/tanh(kh*D) * a^2) / ((eps+iota)^2 D^2),
///     Polyak bound 1/sqrt(Gamma*N),
///
/// where kh is the curvature constant sqrt(1/2) and D bounds the feasible
/// diameter.  The iteration budget is fixed (no tolerance-based stopping);
/// a vanishing subgradient ends the run with status "stationary".

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "riembound/objective.hpp"

namespace riembound {

struct StepRule {
    enum class Kind { exogenous, constant, polyak };
    Kind kind = Kind::exogenous;
    double t0 = 16.0;      ///< exogenous: t_k = t0/(k+1)
    double tbar = 1.0;     ///< constant
    double alpha = 1.0;    ///< polyak coefficient, 0 < alpha < 2 tanh(kh D)/(kh D)
    double f_star = 0.0;   ///< polyak target value
    double epsilon = 0.0;  ///< polyak subgradient-error allowance

    static StepRule exogenous(double t0) {
        StepRule r;
        r.kind = Kind::exogenous;
        r.t0 = t0;
        return r;
    }
    static StepRule constant(double tbar) {
        StepRule r;
        r.kind = Kind::constant;
        r.tbar = tbar;
        return r;
    }
    static StepRule polyak(double alpha, double f_star, double epsilon = 0.0) {
        StepRule r;
        r.kind = Kind::polyak;
        r.alpha = alpha;
        r.f_star = f_star;
        r.epsilon = epsilon;
        return r;
    }
};

struct SolverConfig {
    long max_iters = 1000;
    FeasibleSet feasible{1.5, {0.5, 2.0}};
    double D = 0.0;               ///< diameter bound; <= 0 means compute it
    double kappa = kappa_hat;     ///< curvature constant sqrt(1/2)
    double sigma_cap = 16.0;      ///< step-size cap feeding zeta
    long record_every = 1;
};

struct IterateRecord {
    long k = 0;
    double objective = 0.0;
    double step = 0.0;       ///< step length taken from this iterate
    bool gap_flag = true;    ///< spectral gaps above tolerance at this iterate
    double moved = 0.0;      ///< product distance actually moved
    double best_so_far = 0.0;
    long best_iter = 0;
};

/// One objective evaluation: value of the max function and a subgradient.
struct ObjectiveEval {
    double value = 0.0;
    ProductTangent grad;
    bool exact = true;
    double gap = 0.0;
};

using ObjectiveHandle = std::function<ObjectiveEval(const MetricParams&)>;

struct RunTrace {
    std::vector<IterateRecord> records;
    double best_value = 0.0;
    long best_iter = 0;
    MetricParams best_params;
    std::string status;  ///< "completed" or "stationary"
    std::vector<double> steps;  ///< every step length taken, in order
    double max_grad_norm = 0.0;
    /// first iterate index with objective < 0, if any
    std::optional<long> first_negative_iter;
    std::optional<double> value_at_first_negative;
};

/// Run the descent from a feasible start.  Evaluates the objective at
/// k = 0..max_iters (max_iters steps in between); stops early only when the
/// subgradient vanishes.  Negative Polyak steps are clamped to zero and the
/// iterate stays in place.  When trace_out is given, records stream to it
/// as JSON lines (every record_every-th iterate plus every new best).
/// stop_at_first_negative ends the run at the first negative objective
/// value (used by dimension scans whose certificate only needs a sign).
RunTrace run(const ObjectiveHandle& objective, const MetricParams& start,
             const StepRule& rule, const SolverConfig& cfg,
             std::ostream* trace_out = nullptr,
             bool stop_at_first_negative = false);

/// zeta = D sinh(kh sigma) / (sigma tanh(kh D)).
double zeta_constant(double D, double sigma, double kappa);

/// Optimal constant step for an N-iteration budget: D / sqrt(zeta N).
double constant_step_optimal(double D, double zeta, long N_iters);

/// Polyak step t = alpha (f - f* - eps D)/||v||; may be negative, the
/// caller clamps.
double polyak_step(double f_pk, const StepRule& rule, double D, double v_norm);

/// Largest admissible Polyak coefficient: 2 tanh(kh D)/(kh D).
double polyak_alpha_limit(double D, double kappa);

/// Theorem-style bound for arbitrary step sequences:
/// (eps+iota)(D^2 + zeta sum t_k^2)/(2 sum t_k).
double bound_exogenous(double eps, double iota, double D, double zeta,
                       std::span<const double> steps);

/// Same bound at a constant schedule of N steps tbar.
double bound_constant(double eps, double iota, double D, double zeta,
                      double tbar, long N);

/// Polyak-rate bound 1/sqrt(Gamma N) with
/// Gamma = (2 alpha - kh D/tanh(kh D) alpha^2) / ((eps+iota)^2 D^2).
/// Throws config_error when alpha leaves the admissible range (Gamma <= 0).
double bound_polyak(double eps, double iota, double D, double alpha,
                    double kappa, long N);

}  // namespace riembound
