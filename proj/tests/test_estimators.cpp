#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "riembound/errors.hpp"
#include "riembound/estimators.hpp"
#include "riembound/poly.hpp"
#include "riembound/system.hpp"

using namespace riembound;

namespace {

SolverConfig budget(long iters) {
    SolverConfig cfg;
    cfg.max_iters = iters;
    return cfg;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("dimension scan certifies large s at the identity metric") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    std::vector<double> svals{0.45, 0.9, 0.6};
    DimensionScanResult res =
        dimension_scan(henon(1.4, 0.3), henon_region(), basis, GridSpec{50, true},
                       1, svals, budget(0), StepRule::exogenous(16.0));
    CHECK(res.k == 1);
    REQUIRE(res.rows.size() == 3);
    // sorted by s descending
    CHECK(res.rows[0].s == 0.9);
    CHECK(res.rows[1].s == 0.6);
    CHECK(res.rows[2].s == 0.45);

    // at P = I the objective is (1-s) log2 a1 + s log2 |det|, already
    // negative for s above log2 a1 / (log2 a1 - log2 |det|) ~ 0.529
    REQUIRE(res.rows[0].first_negative_iter.has_value());
    CHECK(*res.rows[0].first_negative_iter == 0);
    CHECK(*res.rows[0].value_at_first_negative ==
          doctest::Approx(-1.3681549498229193).epsilon(1e-9));
    REQUIRE(res.rows[1].first_negative_iter.has_value());
    CHECK(*res.rows[1].first_negative_iter == 0);
    CHECK(*res.rows[1].value_at_first_negative ==
          doctest::Approx(-0.26172301679305909).epsilon(1e-9));
    // s = 0.45 is positive at P = I and the zero-iteration budget cannot
    // improve it, so that row carries no certificate
    CHECK(!res.rows[2].first_negative_iter.has_value());
    CHECK(!res.rows[2].value_at_first_negative.has_value());

    REQUIRE(res.best_bound.has_value());
    CHECK(*res.best_bound == 1.6);
}

TEST_CASE("dimension scan with no certifying s reports no bound") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 2);
    DimensionScanResult res = dimension_scan(
        henon(1.4, 0.3), henon_region(), basis, GridSpec{25, false}, 1,
        {0.3, 0.45}, budget(0), StepRule::exogenous(16.0));
    CHECK(!res.best_bound.has_value());
    for (const DimensionRow& row : res.rows)
        CHECK(!row.first_negative_iter.has_value());
}

TEST_CASE("each s value restarts from the identity metric") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 2);
    GridSpec grid{25, false};
    StepRule rule = StepRule::exogenous(8.0);
    // a short real descent so the state would differ if runs were chained
    DimensionScanResult multi =
        dimension_scan(henon(1.4, 0.3), henon_region(), basis, grid, 1,
                       {0.45, 0.9}, budget(5), rule);
    DimensionScanResult alone =
        dimension_scan(henon(1.4, 0.3), henon_region(), basis, grid, 1, {0.45},
                       budget(5), rule);
    REQUIRE(multi.rows.size() == 2);
    REQUIRE(alone.rows.size() == 1);
    const DimensionRow& shared = multi.rows[1];  // s = 0.45 after the sort
    CHECK(shared.s == alone.rows[0].s);
    CHECK(shared.first_negative_iter == alone.rows[0].first_negative_iter);
    CHECK(shared.value_at_first_negative == alone.rows[0].value_at_first_negative);
}

TEST_CASE("a descent run certifies a dimension bound below the identity value") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    DimensionScanResult res = dimension_scan(
        henon(1.4, 0.3), henon_region(), basis, GridSpec{25, false}, 1, {0.445},
        budget(2000), StepRule::exogenous(16.0), true);
    REQUIRE(res.rows.size() == 1);
    REQUIRE(res.rows[0].first_negative_iter.has_value());
    CHECK(*res.rows[0].first_negative_iter > 0);
    CHECK(*res.rows[0].first_negative_iter <= 2000);
    CHECK(*res.rows[0].value_at_first_negative < 0.0);
    REQUIRE(res.best_bound.has_value());
    CHECK(*res.best_bound == 1.445);
}

TEST_CASE("dimension scan validates the s list") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 2);
    GridSpec grid{25, false};
    CHECK_THROWS_AS(dimension_scan(henon(1.4, 0.3), henon_region(), basis, grid,
                                   1, {}, budget(0), StepRule::exogenous(16.0)),
                    const config_error&);
    CHECK_THROWS_AS(dimension_scan(henon(1.4, 0.3), henon_region(), basis, grid,
                                   1, {1.0}, budget(0), StepRule::exogenous(16.0)),
                    const config_error&);
    CHECK_THROWS_AS(dimension_scan(henon(1.4, 0.3), henon_region(), basis, grid,
                                   1, {-0.1}, budget(0), StepRule::exogenous(16.0)),
                    const config_error&);
}

TEST_CASE("metric report of the identity start") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    MetricParams id{Vec::Zero(basis.size()), Mat::Identity(2, 2)};
    MetricReport rep = emit_metric_report(id, 1.25, 42, basis);
    CHECK(rep.bound == 1.25);
    CHECK(rep.bound_iter == 42);
    CHECK(rep.norm_a == 0.0);
    CHECK(rep.eig_p_min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.eig_p_max == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.p.isApprox(Mat::Identity(2, 2)));
    CHECK(rep.coefficients.size() == basis.size());
    CHECK(rep.coefficients.norm() == 0.0);
    CHECK(rep.labels == term_labels(basis));
}

TEST_CASE("metric report carries the spd spectrum and coefficient norm") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 2);
    MetricParams mp;
    mp.a = Vec(basis.size());
    mp.a << 0.3, -0.2, 0.1, 0.05, -0.4;
    Mat rot(2, 2);
    double c = std::cos(0.7), s = std::sin(0.7);
    rot << c, -s, s, c;
    mp.p = rot * Eigen::Vector2d(0.7, 1.6).asDiagonal() * rot.transpose();
    MetricReport rep = emit_metric_report(mp, -0.01, 7, basis);
    CHECK(rep.norm_a == doctest::Approx(mp.a.norm()).epsilon(1e-15));
    CHECK(rep.eig_p_min == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rep.eig_p_max == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(rep.coefficients.isApprox(mp.a));
    CHECK(rep.p.isApprox(mp.p));
}

TEST_CASE("metric report rejects a coefficient count that does not match the basis") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    MetricParams bad{Vec::Zero(3), Mat::Identity(2, 2)};
    CHECK_THROWS_AS(emit_metric_report(bad, 0.0, 0, basis), const config_error&);
}

TEST_CASE("entropy estimate at a zero budget reproduces the identity value") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    EntropyEstimate est =
        restoration_entropy_estimate(henon(1.4, 0.3), henon_region(), basis,
                                     GridSpec{50, true}, budget(0),
                                     StepRule::exogenous(16.0));
    CHECK(est.report.bound == doctest::Approx(1.951140849266661).epsilon(1e-12));
    CHECK(est.report.bound_iter == 0);
    CHECK(est.report.norm_a == 0.0);
    CHECK(est.report.eig_p_min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(est.report.eig_p_max == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(est.trace.status == "completed");
    CHECK(est.trace.best_value == est.report.bound);
}

TEST_CASE("entropy estimate is sound: re-evaluating its metric reproduces the bound") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 4);
    GridSpec grid{25, false};
    EntropyEstimate est = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), basis, grid, budget(30),
        StepRule::exogenous(4.0));
    CHECK(est.report.bound == est.trace.best_value);
    CHECK(est.report.bound_iter == est.trace.best_iter);
    CHECK(est.report.bound < 1.951140849266661);  // the descent made progress

    MetricParams best{est.report.coefficients, est.report.p};
    RegionObjective obj(basis, henon(1.4, 0.3), henon_region(), grid,
                        ObjectiveIndex::restoration());
    CHECK(obj.eval(best).value == doctest::Approx(est.report.bound).epsilon(1e-12));
}

TEST_CASE("entropy estimate streams its trace when asked") {
    MonomialBasis basis = MonomialBasis::total_degree(2, 2);
    std::ostringstream os;
    EntropyEstimate est = restoration_entropy_estimate(
        henon(1.4, 0.3), henon_region(), basis, GridSpec{25, false}, budget(5),
        StepRule::exogenous(4.0), &os);
    long newlines = 0;
    for (char ch : os.str())
        if (ch == '\n') ++newlines;
    CHECK(newlines == static_cast<long>(est.trace.records.size()));
    CHECK(os.str().find("\"gap_ok\":") != std::string::npos);
}

}  // TEST_SUITE("estimators")
