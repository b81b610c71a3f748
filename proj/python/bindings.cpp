/// Python bindings: the SPD and product geometry, the monomial metric
/// family, the singular-value objectives with their subgradients, the
/// projected descent with its rate bounds, the entropy and dimension
/// estimators, and the randomized property suites.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riembound/checks.hpp"
#include "riembound/estimators.hpp"

namespace py = pybind11;
using namespace riembound;
using namespace pybind11::literals;

PYBIND11_MODULE(_riembound, m) {
    m.doc() = "Certified upper bounds for restoration entropy and Lyapunov "
              "dimension via subgradient descent over state-dependent "
              "metrics";

    py::register_exception<numerical_domain_error>(m, "NumericalDomainError");
    py::register_exception<config_error>(m, "ConfigError");

    // ---- SPD(n) geometry --------------------------------------------------
    m.def("sym", &sym, "m"_a, "Symmetric part (m + m^T)/2");
    m.def("is_spd", &is_spd, "m"_a);
    m.def("spd_power", &spd_power, "m"_a, "t"_a);
    m.def("sym_exp", &sym_exp, "s"_a, "Matrix exponential of a symmetric matrix");
    m.def("spd_log_matrix", &spd_log_matrix, "m"_a);
    m.def("inner", &inner, "p"_a, "v"_a, "w"_a,
          "Trace-metric inner product tr(p^-1 v p^-1 w)");
    m.def("norm", &norm, "p"_a, "v"_a);
    m.def("dist", &dist, "p"_a, "q"_a, "Geodesic distance on SPD(n)");
    m.def("geodesic", &geodesic, "p"_a, "q"_a, "theta"_a);
    m.def("exp_map", &exp_map, "p"_a, "v"_a);
    m.def("log_map", &log_map, "p"_a, "q"_a);
    m.def("orthonormal_basis", &orthonormal_basis, "p"_a);
    m.def("sectional_curvature_identity", &sectional_curvature_identity,
          "X"_a, "Y"_a);

    py::class_<OrderInterval>(m, "OrderInterval",
                              "Order interval [alpha*I, beta*I] of SPD(n)")
        .def(py::init([](double alpha, double beta) {
                 return OrderInterval{alpha, beta};
             }),
             "alpha"_a, "beta"_a)
        .def_readwrite("alpha", &OrderInterval::alpha)
        .def_readwrite("beta", &OrderInterval::beta)
        .def("valid", &OrderInterval::valid)
        .def("contains", &OrderInterval::contains, "p"_a, "slack"_a = 1e-12);
    m.def("project_interval", &project_interval, "p"_a, "interval"_a);
    m.def("interval_diameter", &interval_diameter, "interval"_a, "n"_a);

    // ---- product manifold R^N x SPD(n) -------------------------------------
    m.attr("kappa_hat") = kappa_hat;

    py::class_<MetricParams>(m, "MetricParams",
                             "Point (a, p) of the metric family P(x) = "
                             "e^{r_a(x)} p")
        .def(py::init([](Vec a, Mat p) {
                 return MetricParams{std::move(a), std::move(p)};
             }),
             "a"_a, "p"_a)
        .def_readwrite("a", &MetricParams::a)
        .def_readwrite("p", &MetricParams::p);

    py::class_<ProductTangent>(m, "ProductTangent")
        .def(py::init([](Vec da, Mat dp) {
                 return ProductTangent{std::move(da), std::move(dp)};
             }),
             "da"_a, "dp"_a)
        .def_readwrite("da", &ProductTangent::da)
        .def_readwrite("dp", &ProductTangent::dp);

    py::class_<FeasibleSet>(m, "FeasibleSet",
                            "Coefficient ball x eigenvalue order interval")
        .def(py::init([](double ball_radius, OrderInterval interval) {
                 return FeasibleSet{ball_radius, interval};
             }),
             "ball_radius"_a, "interval"_a)
        .def_readwrite("ball_radius", &FeasibleSet::ball_radius)
        .def_readwrite("interval", &FeasibleSet::interval)
        .def("contains", &FeasibleSet::contains, "x"_a, "slack"_a = 1e-12);

    m.def("product_dist", &product_dist, "u"_a, "v"_a);
    m.def("product_norm", &product_norm, "x"_a, "t"_a);
    m.def("product_step", &product_step, "x"_a, "t"_a, "dir"_a,
          "One descent step of length t against dir");
    m.def("project_feasible", &project_feasible, "x"_a, "feasible"_a);
    m.def("feasible_diameter", &feasible_diameter, "feasible"_a, "n"_a, "N"_a);

    // ---- monomial basis -----------------------------------------------------
    py::class_<MonomialBasis>(m, "MonomialBasis",
                              "Graded-lex monomial basis, constant excluded")
        .def_static("total_degree", &MonomialBasis::total_degree, "n_vars"_a,
                    "degree"_a)
        .def_readonly("n_vars", &MonomialBasis::n_vars)
        .def_readonly("degree", &MonomialBasis::degree)
        .def_readonly("terms", &MonomialBasis::terms)
        .def("size", &MonomialBasis::size)
        .def("__len__", &MonomialBasis::size);
    m.def("poly_eval", &eval, "basis"_a, "a"_a, "x"_a,
          "r_a(x) = sum_j a_j x^terms[j]");
    m.def("coeff_gradient", &coeff_gradient, "basis"_a, "x"_a);
    m.def("term_labels", &term_labels, "basis"_a);

    // ---- dynamical system ---------------------------------------------------
    py::class_<SmoothMap>(m, "SmoothMap")
        .def_readonly("dim", &SmoothMap::dim)
        .def_readonly("name", &SmoothMap::name)
        .def("eval",
             [](const SmoothMap& map, const Vec& x) { return map.eval(x); },
             "x"_a)
        .def("jacobian",
             [](const SmoothMap& map, const Vec& x) { return map.jacobian(x); },
             "x"_a);
    m.def("henon", &henon, "a"_a, "b"_a);
    m.def("henon_fixed_point_plus", &henon_fixed_point_plus, "a"_a, "b"_a);

    py::class_<QuadRegion>(m, "QuadRegion",
                           "Convex quadrilateral in bilinear corner order")
        .def(py::init([](Vec2 A, Vec2 B, Vec2 C, Vec2 D) {
                 return QuadRegion{A, B, C, D};
             }),
             "A"_a, "B"_a, "C"_a, "D"_a)
        .def_readwrite("A", &QuadRegion::A)
        .def_readwrite("B", &QuadRegion::B)
        .def_readwrite("C", &QuadRegion::C)
        .def_readwrite("D", &QuadRegion::D)
        .def("at", &QuadRegion::at, "u"_a, "v"_a)
        .def("contains", &QuadRegion::contains, "pt"_a, "slack"_a = 1e-9);
    m.def("henon_region", &henon_region);
    m.def("henon_region_enlarged", &henon_region_enlarged);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int grid_m, bool refine) {
                 return GridSpec{grid_m, refine};
             }),
             "m"_a = 1000, "refine"_a = true)
        .def_readwrite("m", &GridSpec::m)
        .def_readwrite("refine", &GridSpec::refine);
    m.def("grid_points", &grid_points, "region"_a, "spec"_a);
    m.def("grid_uv", &grid_uv, "spec"_a, "index"_a);

    // ---- singular-value objectives ------------------------------------------
    m.attr("gap_rel_tolerance") = gap_rel_tolerance;

    py::class_<ObjectiveIndex>(m, "ObjectiveIndex")
        .def_static("single", &ObjectiveIndex::single, "k"_a, "s"_a = 0.0,
                    "J_{k+s} for one fixed index")
        .def_static("restoration", &ObjectiveIndex::restoration,
                    "max over 0 <= k <= n (entropy objective)")
        .def_readonly("k", &ObjectiveIndex::k)
        .def_readonly("s", &ObjectiveIndex::s)
        .def_property_readonly("is_restoration",
                               [](const ObjectiveIndex& idx) {
                                   return idx.mode == ObjectiveMode::max_over_k;
                               })
        .def("validate", &ObjectiveIndex::validate, "n"_a);

    m.def("metric_at", &metric_at, "basis"_a, "params"_a, "x"_a,
          "P(x) = e^{r_a(x)} p");
    m.def("weighted_singular_values",
          [](const MonomialBasis& basis, const MetricParams& params,
             const SmoothMap& map, const Vec& x) {
              return weighted_singular_values(basis, params, map, x).alphas;
          },
          "basis"_a, "params"_a, "map"_a, "x"_a,
          "Descending singular values of P(phi x)^{1/2} A(x) P(x)^{-1/2}");
    m.def("sigma_ks", &sigma_ks, "basis"_a, "params"_a, "map"_a, "x"_a,
          "index"_a);
    m.def("j_value", &j_value, "basis"_a, "params"_a, "map"_a, "x"_a,
          "index"_a, "Overflow-safe linear + spectral split of sigma_ks");

    py::class_<MaximizeResult>(m, "MaximizeResult")
        .def_readonly("x_star", &MaximizeResult::x_star)
        .def_readonly("uv_star", &MaximizeResult::uv_star)
        .def_readonly("value", &MaximizeResult::value)
        .def_readonly("active_k", &MaximizeResult::active_k)
        .def_readonly("A_star", &MaximizeResult::A_star)
        .def_readonly("dm_star", &MaximizeResult::dm_star)
        .def_readonly("refined_won", &MaximizeResult::refined_won);
    m.def("maximize_over_region", &maximize_over_region, "basis"_a, "params"_a,
          "map"_a, "region"_a, "spec"_a, "index"_a);

    m.def("subgrad_spd", &subgrad_spd, "p"_a, "A"_a, "k"_a,
          "Subgradient of p -> Sigma_k and the spectral gap alpha_k - "
          "alpha_{k+1}");

    py::class_<SubgradientResult>(m, "SubgradientResult")
        .def_readonly("grad", &SubgradientResult::grad)
        .def_readonly("value", &SubgradientResult::value)
        .def_readonly("maximizer", &SubgradientResult::maximizer)
        .def_readonly("active_k", &SubgradientResult::active_k)
        .def_readonly("gap_delta", &SubgradientResult::gap_delta)
        .def_readonly("exact_flag", &SubgradientResult::exact_flag);
    m.def("subgradient", &subgradient, "basis"_a, "params"_a, "map"_a,
          "region"_a, "spec"_a, "index"_a);

    m.def("lipschitz_constant", &lipschitz_constant, "n"_a,
          "Global Lipschitz constant sqrt(n)/ln 2");
    m.def("wedin_error_bound", &wedin_error_bound, "p"_a, "A_x"_a, "A_y"_a,
          "k"_a);
    m.def("sigma_vec", &sigma_vec, "g"_a,
          "(log2 alpha_1(g), ..., log2 alpha_n(g)), descending");
    m.def("majorization_leq", &majorization_leq, "xi"_a, "eta"_a,
          "tol"_a = 1e-9);

    py::class_<RegionObjective>(m, "RegionObjective",
                                "max_{x in grid} J_{k+s,x} with a cached "
                                "point table")
        .def(py::init<MonomialBasis, SmoothMap, QuadRegion, GridSpec,
                      ObjectiveIndex>(),
             "basis"_a, "map"_a, "region"_a, "spec"_a, "index"_a)
        .def("eval", &RegionObjective::eval, "params"_a)
        .def("set_index", &RegionObjective::set_index, "index"_a)
        .def("max_dm_norm", &RegionObjective::max_dm_norm)
        .def_property_readonly("index", &RegionObjective::index);
    m.def("iota_default", &iota_default, "objective"_a,
          "Default subgradient-norm bound for the rate formulas");

    // ---- projected subgradient descent ---------------------------------------
    py::class_<StepRule>(m, "StepRule")
        .def_static("exogenous", &StepRule::exogenous, "t0"_a)
        .def_static("constant", &StepRule::constant, "tbar"_a)
        .def_static("polyak", &StepRule::polyak, "alpha"_a, "f_star"_a,
                    "epsilon"_a = 0.0)
        .def_readwrite("t0", &StepRule::t0)
        .def_readwrite("tbar", &StepRule::tbar)
        .def_readwrite("alpha", &StepRule::alpha)
        .def_readwrite("f_star", &StepRule::f_star)
        .def_readwrite("epsilon", &StepRule::epsilon);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("max_iters", &SolverConfig::max_iters)
        .def_readwrite("feasible", &SolverConfig::feasible)
        .def_readwrite("D", &SolverConfig::D)
        .def_readwrite("kappa", &SolverConfig::kappa)
        .def_readwrite("sigma_cap", &SolverConfig::sigma_cap)
        .def_readwrite("record_every", &SolverConfig::record_every);

    py::class_<ObjectiveEval>(m, "ObjectiveEval")
        .def(py::init([](double value, ProductTangent grad, bool exact,
                         double gap) {
                 return ObjectiveEval{value, std::move(grad), exact, gap};
             }),
             "value"_a, "grad"_a, "exact"_a = true, "gap"_a = 0.0)
        .def_readwrite("value", &ObjectiveEval::value)
        .def_readwrite("grad", &ObjectiveEval::grad)
        .def_readwrite("exact", &ObjectiveEval::exact)
        .def_readwrite("gap", &ObjectiveEval::gap);

    py::class_<IterateRecord>(m, "IterateRecord")
        .def_readonly("k", &IterateRecord::k)
        .def_readonly("objective", &IterateRecord::objective)
        .def_readonly("step", &IterateRecord::step)
        .def_readonly("gap_flag", &IterateRecord::gap_flag)
        .def_readonly("moved", &IterateRecord::moved)
        .def_readonly("best_so_far", &IterateRecord::best_so_far)
        .def_readonly("best_iter", &IterateRecord::best_iter);

    py::class_<RunTrace>(m, "RunTrace")
        .def_readonly("records", &RunTrace::records)
        .def_readonly("best_value", &RunTrace::best_value)
        .def_readonly("best_iter", &RunTrace::best_iter)
        .def_readonly("best_params", &RunTrace::best_params)
        .def_readonly("status", &RunTrace::status)
        .def_readonly("steps", &RunTrace::steps)
        .def_readonly("max_grad_norm", &RunTrace::max_grad_norm)
        .def_readonly("first_negative_iter", &RunTrace::first_negative_iter)
        .def_readonly("value_at_first_negative",
                      &RunTrace::value_at_first_negative);

    m.def("run",
          [](const ObjectiveHandle& objective, const MetricParams& start,
             const StepRule& rule, const SolverConfig& cfg,
             bool stop_at_first_negative) {
              return run(objective, start, rule, cfg, nullptr,
                         stop_at_first_negative);
          },
          "objective"_a, "start"_a, "rule"_a, "cfg"_a,
          "stop_at_first_negative"_a = false,
          "Projected descent; objective maps MetricParams to ObjectiveEval");

    m.def("zeta_constant", &zeta_constant, "D"_a, "sigma"_a, "kappa"_a);
    m.def("constant_step_optimal", &constant_step_optimal, "D"_a, "zeta"_a,
          "N_iters"_a);
    m.def("polyak_step", &polyak_step, "f_pk"_a, "rule"_a, "D"_a, "v_norm"_a);
    m.def("polyak_alpha_limit", &polyak_alpha_limit, "D"_a, "kappa"_a);
    m.def("bound_exogenous",
          [](double eps, double iota, double D, double zeta,
             const std::vector<double>& steps) {
              return bound_exogenous(eps, iota, D, zeta, steps);
          },
          "eps"_a, "iota"_a, "D"_a, "zeta"_a, "steps"_a);
    m.def("bound_constant", &bound_constant, "eps"_a, "iota"_a, "D"_a,
          "zeta"_a, "tbar"_a, "N"_a);
    m.def("bound_polyak", &bound_polyak, "eps"_a, "iota"_a, "D"_a, "alpha"_a,
          "kappa"_a, "N"_a);

    // ---- estimators -----------------------------------------------------------
    py::class_<DimensionRow>(m, "DimensionRow")
        .def_readonly("s", &DimensionRow::s)
        .def_readonly("first_negative_iter", &DimensionRow::first_negative_iter)
        .def_readonly("value_at_first_negative",
                      &DimensionRow::value_at_first_negative);

    py::class_<DimensionScanResult>(m, "DimensionScanResult")
        .def_readonly("k", &DimensionScanResult::k)
        .def_readonly("rows", &DimensionScanResult::rows)
        .def_readonly("best_bound", &DimensionScanResult::best_bound);

    m.def("dimension_scan", &dimension_scan, "map"_a, "region"_a, "basis"_a,
          "grid"_a, "k"_a, "s_values"_a, "cfg"_a, "rule"_a,
          "stop_at_first_negative"_a = false);

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("p", &MetricReport::p)
        .def_readonly("coefficients", &MetricReport::coefficients)
        .def_readonly("labels", &MetricReport::labels)
        .def_readonly("bound", &MetricReport::bound)
        .def_readonly("bound_iter", &MetricReport::bound_iter)
        .def_readonly("norm_a", &MetricReport::norm_a)
        .def_readonly("eig_p_min", &MetricReport::eig_p_min)
        .def_readonly("eig_p_max", &MetricReport::eig_p_max);
    m.def("emit_metric_report", &emit_metric_report, "params"_a, "bound"_a,
          "iter"_a, "basis"_a);

    py::class_<EntropyEstimate>(m, "EntropyEstimate")
        .def_readonly("report", &EntropyEstimate::report)
        .def_readonly("trace", &EntropyEstimate::trace);
    m.def("restoration_entropy_estimate",
          [](const SmoothMap& map, const QuadRegion& region,
             const MonomialBasis& basis, const GridSpec& grid,
             const SolverConfig& cfg, const StepRule& rule) {
              return restoration_entropy_estimate(map, region, basis, grid,
                                                  cfg, rule);
          },
          "map"_a, "region"_a, "basis"_a, "grid"_a, "cfg"_a, "rule"_a);

    // ---- property checks --------------------------------------------------------
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("detail", &CheckResult::detail);

    py::class_<CheckOptions>(m, "CheckOptions")
        .def(py::init<>())
        .def_readwrite("seed", &CheckOptions::seed)
        .def_readwrite("curvature_samples", &CheckOptions::curvature_samples)
        .def_readwrite("projection_pairs", &CheckOptions::projection_pairs)
        .def_readwrite("convexity_samples", &CheckOptions::convexity_samples)
        .def_readwrite("majorization_samples",
                       &CheckOptions::majorization_samples)
        .def_readwrite("fd_samples", &CheckOptions::fd_samples)
        .def_readwrite("lipschitz_pairs", &CheckOptions::lipschitz_pairs)
        .def_readwrite("wedin_triples", &CheckOptions::wedin_triples)
        .def_readwrite("roundtrip_samples", &CheckOptions::roundtrip_samples)
        .def_readwrite("synthetic_iters", &CheckOptions::synthetic_iters)
        .def_readwrite("flip_subgradient_sign",
                       &CheckOptions::flip_subgradient_sign);
    m.def("reduced_check_options", &reduced_check_options);
    m.def("run_property_checks", &run_property_checks, "opts"_a);

    py::class_<SyntheticDescentOutcome>(m, "SyntheticDescentOutcome")
        .def_readonly("D", &SyntheticDescentOutcome::D)
        .def_readonly("zeta", &SyntheticDescentOutcome::zeta)
        .def_readonly("tbar", &SyntheticDescentOutcome::tbar)
        .def_readonly("final_best", &SyntheticDescentOutcome::final_best)
        .def_readonly("iota_measured", &SyntheticDescentOutcome::iota_measured)
        .def_readonly("bound", &SyntheticDescentOutcome::bound)
        .def_readonly("meets_tolerance",
                      &SyntheticDescentOutcome::meets_tolerance)
        .def_readonly("within_bound", &SyntheticDescentOutcome::within_bound);
    m.def("synthetic_interval_descent", &synthetic_interval_descent, "n"_a,
          "iters"_a, "tol"_a);
}
