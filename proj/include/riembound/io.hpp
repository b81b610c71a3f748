#pragma once

/// Serialization layer: run configuration (JSON, strict keys, round-trip
/// identity), metric reports (JSON with labeled coefficients), and the
/// CSV emitters for dimension scans and best-bound curves.  Every float
/// is written as %.16e (17 significant digits), which round-trips a
/// double exactly.

#include <array>
#include <iosfwd>
#include <string>

#include "riembound/estimators.hpp"

namespace riembound {

/// Full-precision scientific representation of a double.
std::string g17(double v);

/// One config document drives every subcommand.  Sections:
///   system   - name ("henon"), params {a, b}, optional corners (4 x [x,y])
///   basis    - degree of the monomial basis (constant term excluded)
///   grid     - m (points per side), refine (local refinement pass)
///   feasible - ball_radius for coefficients, [alpha, beta] eigenvalue box
///   step     - rule ("exogenous" | "constant" | "polyak") and its knobs
///   run      - iters, record_every, output_dir
struct RunConfig {
    std::string system_name = "henon";
    double param_a = 1.4;
    double param_b = 0.3;
    bool has_corners = false;
    std::array<Vec2, 4> corners{};

    int degree = 4;

    int grid_m = 1000;
    bool grid_refine = true;

    double ball_radius = 1.5;
    double alpha = 0.5;
    double beta = 2.0;

    std::string step_rule = "exogenous";
    double t0 = 16.0;
    double tbar = 0.0;  ///< <= 0 requests the horizon-optimal constant step
    double alpha_factor = 1.0;
    double f_star = 0.0;
    double epsilon = 0.0;

    long iters = 1000;
    long record_every = 1;
    std::string output_dir = "out";
};

/// Parse a config document; unknown sections or keys, malformed values and
/// inconsistent settings (for example non-default map parameters without
/// explicit corners) raise config_error.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

/// Consistency checks shared by parse_config and flag overrides; throws
/// config_error on the first violation.
void validate_run_config(const RunConfig& cfg);

/// Deterministic serialization; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

/// Assemble the pieces a RunConfig describes.
SmoothMap config_map(const RunConfig& cfg);
QuadRegion config_region(const RunConfig& cfg);
FeasibleSet config_feasible(const RunConfig& cfg);
GridSpec config_grid(const RunConfig& cfg);

void write_metric_report(std::ostream& os, const MetricReport& report);
MetricReport read_metric_report(std::istream& is);

/// The metric a report describes, in solver form (coefficients + SPD part).
MetricParams params_from_report(const MetricReport& report);

/// Columns: bound (k + s), s, first_negative_iter, value; the last two are
/// empty when the run never certified a negative maximum.
void write_dimension_csv(std::ostream& os, const DimensionScanResult& scan);

/// Columns: iteration, best_bound; one row per recorded iterate.
void write_best_bound_csv(std::ostream& os, const RunTrace& trace);

}  // namespace riembound
