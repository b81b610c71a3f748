#pragma once

/// Randomized property suites for the geometric and spectral invariants the
/// descent relies on: curvature pinched in [-1/2, 0], nonexpansive interval
/// projection, geodesic convexity of the objective, singular-value
/// majorization along geodesics, finite-difference agreement of the
/// subgradient, the sqrt(n)/ln 2 Lipschitz constant, the Wedin perturbation
/// bound, exp/log consistency, and a synthetic descent problem with a known
/// minimizer that exercises the convergence-rate bounds end to end.
///
/// Each suite is deterministic given its seed and returns pass/fail plus a
/// human-readable detail line.

#include <cstdint>
#include <string>
#include <vector>

#include "riembound/solver.hpp"

namespace riembound {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Sectional curvature over random tangent pairs at the identity (n = 2 and
/// n = 3 halves): every value in [-1/2 - 1e-9, 1e-9] and the sampled
/// minimum at most -0.49.
CheckResult check_curvature_bounds(int samples, std::uint64_t seed);

/// d(proj p, proj q) <= d(p, q) + 1e-12 for random SPD pairs projected onto
/// the order interval [0.5, 2].
CheckResult check_projection_nonexpansive(int pairs, std::uint64_t seed);

/// J_{k+s,x} and the restoration objective are convex along product
/// geodesics (affine in the coefficients, geodesic in the SPD part).
CheckResult check_geodesic_convexity(int samples, std::uint64_t seed);

/// The log-singular-value vector along a geodesic is majorized by the
/// convex combination of the endpoint vectors (equal totals).
CheckResult check_majorization(int samples, std::uint64_t seed);

/// Central finite differences of p -> Sigma_k(zeta(p)) along random unit
/// tangents match <grad, h>_p to relative 1e-5 away from spectral
/// crossings.  flip_sign negates the analytic gradient first, which must
/// make the suite fail (fault-injection hook wired to a CLI flag).
CheckResult check_fd_subgradient(int samples, std::uint64_t seed,
                                 bool flip_sign = false);

/// |Sigma_{k+s}(zeta_p) - Sigma_{k+s}(zeta_q)| <= sqrt(n)/ln 2 * d(p, q).
CheckResult check_lipschitz(int pairs, std::uint64_t seed);

/// Subgradient perturbation under a Jacobian change stays within the
/// Wedin-type error bound whenever the cross gap is positive.
CheckResult check_wedin(int triples, std::uint64_t seed);

/// log_map inverts exp_map, ||log_map(p, q)||_p equals d(p, q).
CheckResult check_exp_log_roundtrip(int samples, std::uint64_t seed);

/// Outcome of the synthetic problem f(p) = d(p, q*)^2 over the interval
/// [0.5 I, 2 I] (q* strictly inside, f* = 0) run with the horizon-optimal
/// constant step tbar = D / sqrt(zeta N).
struct SyntheticDescentOutcome {
    double D = 0.0;
    double zeta = 0.0;
    double tbar = 0.0;
    double final_best = 0.0;     ///< min over the run of f
    double iota_measured = 0.0;  ///< max subgradient norm seen
    double bound = 0.0;          ///< constant-step rate bound at eps = 0
    bool meets_tolerance = false;
    bool within_bound = false;
};

SyntheticDescentOutcome synthetic_interval_descent(int n, long iters,
                                                   double tol);

/// Synthetic descent as a named check (tol 1e-3 for n = 2, 1e-2 otherwise).
CheckResult check_synthetic_descent(int n, long iters);

struct CheckOptions {
    std::uint64_t seed = 0x5eed;
    int curvature_samples = 100000;
    int projection_pairs = 1000;
    int convexity_samples = 500;
    int majorization_samples = 500;
    int fd_samples = 200;
    int lipschitz_pairs = 10000;
    int wedin_triples = 1000;
    int roundtrip_samples = 500;
    long synthetic_iters = 2000;
    bool flip_subgradient_sign = false;
};

/// Reduced sample counts for the interactive `check` subcommand.
CheckOptions reduced_check_options();

/// Run every suite (synthetic descent at n = 3) with seeds derived from
/// opts.seed.
std::vector<CheckResult> run_property_checks(const CheckOptions& opts);

}  // namespace riembound
