#include "riembound/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "riembound/errors.hpp"

namespace riembound {

namespace {

MetricParams identity_start(int basis_size, int n) {
    MetricParams start;
    start.a = Vec::Zero(basis_size);
    start.p = Mat::Identity(n, n);
    return start;
}

ObjectiveHandle wrap(RegionObjective& objective) {
    return [&objective](const MetricParams& params) {
        SubgradientResult r = objective.eval(params);
        ObjectiveEval out;
        out.value = r.value;
        out.grad = r.grad;
        out.exact = r.exact_flag;
        out.gap = r.gap_delta;
        return out;
    };
}

}  // namespace

DimensionScanResult dimension_scan(const SmoothMap& map,
                                   const QuadRegion& region,
                                   const MonomialBasis& basis,
                                   const GridSpec& grid, int k,
                                   const std::vector<double>& s_values,
                                   const SolverConfig& cfg,
                                   const StepRule& rule,
                                   bool stop_at_first_negative) {
    if (s_values.empty())
        throw config_error("dimension_scan: empty list of s values");
    for (double s : s_values)
        if (!(s >= 0.0) || !(s < 1.0))
            throw config_error("dimension_scan: s must lie in [0, 1)");

    DimensionScanResult result;
    result.k = k;
    result.rows.reserve(s_values.size());

    RegionObjective objective(basis, map, region, grid,
                              ObjectiveIndex::single(k, 0.0));
    const int n = map.dim;
    for (double s : s_values) {
        objective.set_index(ObjectiveIndex::single(k, s));
        RunTrace trace = run(wrap(objective), identity_start(basis.size(), n),
                             rule, cfg, nullptr, stop_at_first_negative);
        DimensionRow row;
        row.s = s;
        row.first_negative_iter = trace.first_negative_iter;
        row.value_at_first_negative = trace.value_at_first_negative;
        result.rows.push_back(row);
    }

    std::sort(result.rows.begin(), result.rows.end(),
              [](const DimensionRow& a, const DimensionRow& b) {
                  return a.s > b.s;
              });
    for (const DimensionRow& row : result.rows)
        if (row.first_negative_iter) {
            double candidate = k + row.s;
            if (!result.best_bound || candidate < *result.best_bound)
                result.best_bound = candidate;
        }
    return result;
}

MetricReport emit_metric_report(const MetricParams& params, double bound,
                                long iter, const MonomialBasis& basis) {
    if (params.a.size() != basis.size())
        throw config_error(
            "emit_metric_report: coefficient count does not match basis");
    MetricReport report;
    report.p = sym(params.p);
    report.coefficients = params.a;
    report.labels = term_labels(basis);
    report.bound = bound;
    report.bound_iter = iter;
    report.norm_a = params.a.norm();
    Eigen::SelfAdjointEigenSolver<Mat> es(report.p);
    report.eig_p_min = es.eigenvalues().minCoeff();
    report.eig_p_max = es.eigenvalues().maxCoeff();
    return report;
}

EntropyEstimate restoration_entropy_estimate(const SmoothMap& map,
                                             const QuadRegion& region,
                                             const MonomialBasis& basis,
                                             const GridSpec& grid,
                                             const SolverConfig& cfg,
                                             const StepRule& rule,
                                             std::ostream* trace_out) {
    RegionObjective objective(basis, map, region, grid,
                              ObjectiveIndex::restoration());
    RunTrace trace = run(wrap(objective), identity_start(basis.size(), map.dim),
                         rule, cfg, trace_out);
    EntropyEstimate estimate;
    estimate.report = emit_metric_report(trace.best_params, trace.best_value,
                                         trace.best_iter, basis);
    estimate.trace = std::move(trace);
    return estimate;
}

}  // namespace riembound
