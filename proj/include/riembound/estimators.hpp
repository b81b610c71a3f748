#pragma once

/// The two applications of the descent machinery:
///  - Lyapunov-dimension upper bounds: for k fixed, scan s values and
///    record the first iteration at which max_x Sigma_{k+s,x}(P) turns
///    negative (certifying dim <= k + s);
///  - restoration-entropy upper bounds: minimize
///    max_{0<=k<=n} Sigma_k(P) over the metric family.
/// Plus the metric report (polynomial coefficients, SPD part, bound)
/// mirroring the result tables.

#include <optional>

#include "riembound/solver.hpp"

namespace riembound {

struct DimensionRow {
    double s = 0.0;
    std::optional<long> first_negative_iter;
    std::optional<double> value_at_first_negative;
};

struct DimensionScanResult {
    int k = 1;
    /// rows sorted by s descending
    std::vector<DimensionRow> rows;
    /// k + min{s certified}; empty when no scanned s certifies
    std::optional<double> best_bound;
};

/// Independent solver runs over the s values, each restarted at P = I
/// (a = 0, p = I).  stop_at_first_negative ends each run once its sign
/// certificate is obtained instead of exhausting the budget.
DimensionScanResult dimension_scan(const SmoothMap& map,
                                   const QuadRegion& region,
                                   const MonomialBasis& basis,
                                   const GridSpec& grid, int k,
                                   const std::vector<double>& s_values,
                                   const SolverConfig& cfg,
                                   const StepRule& rule,
                                   bool stop_at_first_negative = false);

/// Result-table view of a metric: labeled polynomial coefficients in basis
/// order, the SPD part, the certified bound and where it was attained.
struct MetricReport {
    Mat p;
    Vec coefficients;
    std::vector<std::string> labels;
    double bound = 0.0;
    long bound_iter = 0;
    double norm_a = 0.0;
    double eig_p_min = 0.0;
    double eig_p_max = 0.0;
};

MetricReport emit_metric_report(const MetricParams& params, double bound,
                                long iter, const MonomialBasis& basis);

struct EntropyEstimate {
    MetricReport report;
    RunTrace trace;
};

/// Minimize the restoration objective max_k Sigma_k over the metric family
/// starting from P = I; the report carries the best bound found and the
/// metric attaining it.
EntropyEstimate restoration_entropy_estimate(const SmoothMap& map,
                                             const QuadRegion& region,
                                             const MonomialBasis& basis,
                                             const GridSpec& grid,
                                             const SolverConfig& cfg,
                                             const StepRule& rule,
                                             std::ostream* trace_out = nullptr);

}  // namespace riembound
