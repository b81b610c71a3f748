/// Acceptance gate: one self-contained criterion per number, each printing
///
///     criterion N: PASS|FAIL - detail
///
/// Arguments select criteria (default: all).  The exit code is 0 only when
/// every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riembound/checks.hpp"
#include "riembound/estimators.hpp"
#include "riembound/poly.hpp"
#include "riembound/system.hpp"

using namespace riembound;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

MonomialBasis default_basis() { return MonomialBasis::total_degree(2, 4); }

SolverConfig budget(long iters) {
    SolverConfig cfg;
    cfg.max_iters = iters;
    return cfg;
}

/// 1: the restoration-entropy objective at the identity metric on the fine
/// grid reproduces the frozen reference value.
Outcome entropy_identity_value() {
    EntropyEstimate est = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), default_basis(), GridSpec{1000, true},
        budget(0), StepRule::exogenous(16.0));
    const double expected = 1.951140849266661;
    double got = est.report.bound;
    std::ostringstream os;
    os << "identity-metric entropy bound " << std::setprecision(15) << got
       << ", reference " << expected << " (tol 1e-9)";
    return {std::abs(got - expected) <= 1e-9, os.str()};
}

/// 2: the k + s = 1.450 singular-value objective at the identity metric on
/// the fine grid against its recorded reference value.
Outcome dimension_identity_value() {
    RegionObjective obj(default_basis(), henon(1.4, 0.3), henon_region(),
                        GridSpec{1000, true}, ObjectiveIndex::single(1, 0.45));
    MetricParams identity{Vec::Zero(default_basis().size()),
                          Mat::Identity(2, 2)};
    const double expected = -0.02278695484779664;
    double got = obj.eval(identity).value;
    std::ostringstream os;
    os << "objective value at the identity metric " << std::setprecision(15)
       << got << ", reference " << expected << " (tol 1e-6)";
    return {std::abs(got - expected) <= 1e-6, os.str()};
}

/// 3: a descent run certifies dimension bound 1.445 within its budget.
Outcome dimension_certificate() {
    DimensionScanResult res = dimension_scan(
        henon(1.4, 0.3), henon_region(), default_basis(), GridSpec{250, true},
        1, {0.445}, budget(2000), StepRule::exogenous(16.0), true);
    const DimensionRow& row = res.rows.front();
    std::ostringstream os;
    if (row.first_negative_iter) {
        os << "s = 0.445 certified at iteration " << *row.first_negative_iter
           << " with maximum " << std::setprecision(6)
           << *row.value_at_first_negative;
        return {*row.first_negative_iter <= 2000, os.str()};
    }
    os << "no negative maximum within 2000 iterations";
    return {false, os.str()};
}

/// 4: a 1000-iteration entropy descent reaches a bound of at most 1.40.
Outcome entropy_descent_bound() {
    EntropyEstimate est = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), default_basis(), GridSpec{250, true},
        budget(1000), StepRule::exogenous(16.0));
    std::ostringstream os;
    os << "best entropy bound " << std::setprecision(15) << est.report.bound
       << " after 1000 iterations (target <= 1.40), attained at iteration "
       << est.report.bound_iter;
    return {est.report.bound <= 1.40, os.str()};
}

/// 5: enlarging the feasible set improves the certified bound by a clear
/// margin (at least 0.03 bits).
Outcome feasible_set_separation() {
    SolverConfig tight = budget(2000);
    tight.feasible = FeasibleSet{0.5, {1.5, 2.0}};
    SolverConfig loose = budget(2000);
    loose.feasible = FeasibleSet{1.5, {0.5, 2.0}};
    StepRule rule = StepRule::exogenous(16.0);
    GridSpec grid{250, true};
    EntropyEstimate on_tight = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), default_basis(), grid, tight, rule);
    EntropyEstimate on_loose = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), default_basis(), grid, loose, rule);
    double gap = on_tight.report.bound - on_loose.report.bound;
    std::ostringstream os;
    os << "tight-set bound " << std::setprecision(15) << on_tight.report.bound
       << ", loose-set bound " << on_loose.report.bound << ", separation "
       << std::setprecision(6) << gap << " (target >= 0.03)";
    return {gap >= 0.03, os.str()};
}

/// 6: the full-sample property-check suite passes within a minute.
Outcome property_suite() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results = run_property_checks(CheckOptions{});
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool all = true;
    std::string failed;
    for (const CheckResult& r : results)
        if (!r.pass) {
            all = false;
            failed += (failed.empty() ? "" : ", ") + r.name;
        }
    std::ostringstream os;
    if (all)
        os << results.size() << " property checks passed in "
           << std::setprecision(3) << secs << " s (limit 60 s)";
    else
        os << "failed checks: " << failed;
    return {all && secs < 60.0, os.str()};
}

/// 7: the synthetic interval descent reaches its target accuracy and stays
/// within the constant-step convergence bound.
Outcome synthetic_rate() {
    SyntheticDescentOutcome out = synthetic_interval_descent(2, 10000, 1e-3);
    std::ostringstream os;
    os << "final best " << std::setprecision(6) << out.final_best
       << " (target < 0.001), rate bound " << out.bound;
    return {out.meets_tolerance && out.within_bound, os.str()};
}

/// 8: the closed-form fixed point is mapped to itself and its local
/// dimension from the Jacobian eigenvalues matches the reference 1.3521.
Outcome fixed_point_dimension() {
    const double a = 1.4, b = 0.3;
    double xp = henon_fixed_point_plus(a, b);
    SmoothMap map = henon(a, b);
    Vec x(2);
    x << xp, xp;
    double drift = (map.eval(x) - x).norm();

    // eigenvalues of [[-2 xp, b], [1, 0]]: mu^2 + 2 xp mu - b = 0
    double root = std::sqrt(xp * xp + b);
    double mu1 = -xp - root;  // |mu1| > 1, expanding
    double mu2 = -xp + root;  // |mu2| < 1, contracting
    double local_dim = 1.0 + std::log(std::abs(mu1)) /
                                 std::abs(std::log(std::abs(mu2)));
    const double expected = 1.3521;
    std::ostringstream os;
    os << "fixed-point drift " << std::setprecision(3) << drift
       << ", local dimension " << std::setprecision(6) << local_dim
       << ", reference " << expected << " (tol 5e-4)";
    return {drift <= 1e-12 && std::abs(local_dim - expected) <= 5e-4, os.str()};
}

Outcome dispatch(int criterion) {
    switch (criterion) {
        case 1: return entropy_identity_value();
        case 2: return dimension_identity_value();
        case 3: return dimension_certificate();
        case 4: return entropy_descent_bound();
        case 5: return feasible_set_separation();
        case 6: return property_suite();
        case 7: return synthetic_rate();
        case 8: return fixed_point_dimension();
        default: return {false, "unknown criterion"};
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) {
        int c = std::atoi(argv[i]);
        if (c < 1 || c > 8) {
            std::cerr << "unknown criterion '" << argv[i] << "' (valid: 1..8)\n";
            return 2;
        }
        wanted.push_back(c);
    }
    if (wanted.empty()) wanted = {1, 2, 3, 4, 5, 6, 7, 8};

    bool all = true;
    for (int c : wanted) {
        Outcome out = dispatch(c);
        std::cout << "criterion " << c << ": " << (out.pass ? "PASS" : "FAIL")
                  << " - " << out.detail << std::endl;
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
