/// Command-line front end.
///
///   riembound entropy    minimize the restoration objective; writes
///                        trace.jsonl, metric_report.json, best_bound.csv
///                        and config_used.json into the output directory
///   riembound dimension  scan s values at fixed k for sign certificates;
///                        writes dimension_scan.csv
///   riembound bound      print the convergence-rate bounds as JSON
///   riembound check      run the property suites at reduced counts
///
/// Exit codes: 0 success, 1 failed checks, 2 invalid configuration,
/// 3 numerical domain error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riembound/checks.hpp"
#include "riembound/errors.hpp"
#include "riembound/io.hpp"

namespace fs = std::filesystem;
using namespace riembound;

namespace {

struct CommonOpts {
    std::string config_path;
    long iters = 0;
    int degree = 0;
    int grid_m = 0;
    bool no_refine = false;
    std::string step_rule;
    double t0 = 0.0;
    double tbar = 0.0;
    double alpha_factor = 0.0;
    double f_star = 0.0;
    double epsilon = 0.0;
    double ball_radius = 0.0;
    std::vector<double> interval;
    std::string output;
    long record_every = 0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--iters", o.iters, "iteration budget");
    sub->add_option("--degree", o.degree, "monomial basis degree");
    sub->add_option("--grid", o.grid_m, "grid points per side");
    sub->add_flag("--no-refine", o.no_refine, "skip the refinement pass");
    sub->add_option("--step-rule", o.step_rule, "exogenous | constant | polyak")
        ->check(CLI::IsMember({"exogenous", "constant", "polyak"}));
    sub->add_option("--t0", o.t0, "exogenous step scale, t_k = t0/(k+1)");
    sub->add_option("--tbar", o.tbar,
                    "constant step; <= 0 derives the horizon-optimal one");
    sub->add_option("--alpha-factor", o.alpha_factor,
                    "Polyak coefficient as a multiple of tanh(kh D)/(kh D); "
                    "admissible in (0, 2)");
    sub->add_option("--f-star", o.f_star, "Polyak target value");
    sub->add_option("--epsilon", o.epsilon, "subgradient error allowance");
    sub->add_option("--ball-radius", o.ball_radius,
                    "coefficient ball radius of the feasible set");
    sub->add_option("--interval", o.interval,
                    "eigenvalue interval bounds: alpha beta")
        ->expected(2);
    sub->add_option("--output", o.output, "output directory");
    sub->add_option("--record-every", o.record_every,
                    "record every n-th iterate in the trace");
}

RunConfig build_config(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg;
    if (sub->count("--config")) cfg = load_config_file(o.config_path);
    if (sub->count("--iters")) cfg.iters = o.iters;
    if (sub->count("--degree")) cfg.degree = o.degree;
    if (sub->count("--grid")) cfg.grid_m = o.grid_m;
    if (sub->count("--no-refine")) cfg.grid_refine = false;
    if (sub->count("--step-rule")) cfg.step_rule = o.step_rule;
    if (sub->count("--t0")) cfg.t0 = o.t0;
    if (sub->count("--tbar")) cfg.tbar = o.tbar;
    if (sub->count("--alpha-factor")) cfg.alpha_factor = o.alpha_factor;
    if (sub->count("--f-star")) cfg.f_star = o.f_star;
    if (sub->count("--epsilon")) cfg.epsilon = o.epsilon;
    if (sub->count("--ball-radius")) cfg.ball_radius = o.ball_radius;
    if (sub->count("--interval")) {
        cfg.alpha = o.interval[0];
        cfg.beta = o.interval[1];
    }
    if (sub->count("--output")) cfg.output_dir = o.output;
    if (sub->count("--record-every")) cfg.record_every = o.record_every;
    validate_run_config(cfg);
    return cfg;
}

struct Problem {
    SmoothMap map;
    QuadRegion region;
    MonomialBasis basis;
    GridSpec grid;
    SolverConfig solver;
};

Problem assemble(const RunConfig& cfg) {
    Problem pr{config_map(cfg), config_region(cfg),
               MonomialBasis::total_degree(2, cfg.degree), config_grid(cfg),
               SolverConfig{}};
    pr.solver.max_iters = cfg.iters;
    pr.solver.feasible = config_feasible(cfg);
    pr.solver.record_every = cfg.record_every;
    pr.solver.D = feasible_diameter(pr.solver.feasible, pr.map.dim,
                                    pr.basis.size());
    return pr;
}

/// tbar = D / sqrt(zeta(tbar) N) by fixed point (zeta is nearly constant
/// for small steps).
double derived_constant_step(double D, long iters) {
    if (iters < 1)
        throw config_error(
            "constant step derivation needs at least one iteration");
    double tbar = constant_step_optimal(D, zeta_constant(D, 1.0, kappa_hat),
                                        iters);
    for (int i = 0; i < 6; ++i)
        tbar = constant_step_optimal(D, zeta_constant(D, tbar, kappa_hat),
                                     iters);
    return tbar;
}

StepRule make_rule(const RunConfig& cfg, const Problem& pr) {
    if (cfg.step_rule == "exogenous") return StepRule::exogenous(cfg.t0);
    if (cfg.step_rule == "constant") {
        double tbar = cfg.tbar > 0.0
                          ? cfg.tbar
                          : derived_constant_step(pr.solver.D, cfg.iters);
        return StepRule::constant(tbar);
    }
    double alpha = cfg.alpha_factor * std::tanh(kappa_hat * pr.solver.D) /
                   (kappa_hat * pr.solver.D);
    return StepRule::polyak(alpha, cfg.f_star, cfg.epsilon);
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw config_error("cannot write '" + p.string() + "'");
    return os;
}

int cmd_entropy(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg = build_config(sub, o);
    Problem pr = assemble(cfg);
    StepRule rule = make_rule(cfg, pr);
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    {
        std::ofstream cfg_os = open_out(dir / "config_used.json");
        cfg_os << serialize_config(cfg);
    }
    std::ofstream trace_os = open_out(dir / "trace.jsonl");
    EntropyEstimate est = restoration_entropy_estimate(
        pr.map, pr.region, pr.basis, pr.grid, pr.solver, rule, &trace_os);
    {
        std::ofstream report_os = open_out(dir / "metric_report.json");
        write_metric_report(report_os, est.report);
    }
    {
        std::ofstream curve_os = open_out(dir / "best_bound.csv");
        write_best_bound_csv(curve_os, est.trace);
    }
    std::cout << "{\"best_bound\": " << g17(est.trace.best_value)
              << ", \"best_iter\": " << est.trace.best_iter
              << ", \"status\": \"" << est.trace.status
              << "\", \"output_dir\": \"" << cfg.output_dir << "\"}\n";
    return 0;
}

int cmd_dimension(const CLI::App* sub, const CommonOpts& o, int k,
                  const std::vector<double>& s_values) {
    RunConfig cfg = build_config(sub, o);
    Problem pr = assemble(cfg);
    StepRule rule = make_rule(cfg, pr);
    DimensionScanResult scan =
        dimension_scan(pr.map, pr.region, pr.basis, pr.grid, k, s_values,
                       pr.solver, rule, /*stop_at_first_negative=*/true);
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    {
        std::ofstream cfg_os = open_out(dir / "config_used.json");
        cfg_os << serialize_config(cfg);
    }
    {
        std::ofstream csv_os = open_out(dir / "dimension_scan.csv");
        write_dimension_csv(csv_os, scan);
    }
    std::cout << "{\"k\": " << scan.k << ", \"best_bound\": ";
    if (scan.best_bound)
        std::cout << g17(*scan.best_bound);
    else
        std::cout << "null";
    std::cout << ", \"output_dir\": \"" << cfg.output_dir << "\"}\n";
    return 0;
}

int cmd_bound(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.iters < 1)
        throw config_error("bound: iters must be >= 1 (the rate bounds are "
                           "per iteration budget)");
    Problem pr = assemble(cfg);
    const double D = pr.solver.D;
    RegionObjective objective(pr.basis, pr.map, pr.region, pr.grid,
                              ObjectiveIndex::restoration());
    const double iota = iota_default(objective);
    const double eps = cfg.epsilon;
    const long N = cfg.iters;

    std::vector<double> schedule(static_cast<size_t>(N));
    for (long i = 0; i < N; ++i)
        schedule[static_cast<size_t>(i)] = cfg.t0 / static_cast<double>(i + 1);
    const double zeta_exo = zeta_constant(D, cfg.t0, kappa_hat);
    const double b_exo = bound_exogenous(eps, iota, D, zeta_exo, schedule);

    const double tbar =
        cfg.tbar > 0.0 ? cfg.tbar : derived_constant_step(D, N);
    const double zeta_bar = zeta_constant(D, tbar, kappa_hat);
    const double b_bar = bound_constant(eps, iota, D, zeta_bar, tbar, N);

    const double alpha =
        cfg.alpha_factor * std::tanh(kappa_hat * D) / (kappa_hat * D);
    const double coth = kappa_hat * D / std::tanh(kappa_hat * D);
    const double gamma = (2.0 * alpha - coth * alpha * alpha) /
                         ((eps + iota) * (eps + iota) * D * D);
    const double b_pol = bound_polyak(eps, iota, D, alpha, kappa_hat, N);

    std::cout << "{\n"
              << "  \"D\": " << g17(D) << ",\n"
              << "  \"kappa_hat\": " << g17(kappa_hat) << ",\n"
              << "  \"iota\": " << g17(iota) << ",\n"
              << "  \"epsilon\": " << g17(eps) << ",\n"
              << "  \"iters\": " << N << ",\n"
              << "  \"exogenous\": {\"t0\": " << g17(cfg.t0)
              << ", \"zeta\": " << g17(zeta_exo) << ", \"bound\": "
              << g17(b_exo) << "},\n"
              << "  \"constant\": {\"tbar\": " << g17(tbar)
              << ", \"zeta\": " << g17(zeta_bar) << ", \"bound\": "
              << g17(b_bar) << "},\n"
              << "  \"polyak\": {\"alpha\": " << g17(alpha)
              << ", \"alpha_limit\": " << g17(polyak_alpha_limit(D, kappa_hat))
              << ", \"Gamma\": " << g17(gamma) << ", \"bound\": " << g17(b_pol)
              << "}\n"
              << "}\n";
    return 0;
}

int cmd_check(std::uint64_t seed, bool inject_sign_flip) {
    CheckOptions opts = reduced_check_options();
    opts.seed = seed;
    opts.flip_subgradient_sign = inject_sign_flip;
    std::vector<CheckResult> results = run_property_checks(opts);
    bool all_pass = true;
    std::cout << "{\n  \"seed\": " << seed << ",\n  \"checks\": [\n";
    for (size_t i = 0; i < results.size(); ++i) {
        const CheckResult& r = results[i];
        all_pass = all_pass && r.pass;
        std::cout << "    {\"name\": \"" << r.name << "\", \"pass\": "
                  << (r.pass ? "true" : "false") << ", \"detail\": \""
                  << r.detail << "\"}" << (i + 1 < results.size() ? "," : "")
                  << "\n";
    }
    std::cout << "  ],\n  \"all_pass\": " << (all_pass ? "true" : "false")
              << "\n}\n";
    if (!all_pass) {
        for (const CheckResult& r : results)
            if (!r.pass) std::cerr << "failed: " << r.name << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified upper bounds for restoration entropy and "
                 "Lyapunov dimension via subgradient descent over "
                 "state-dependent metrics"};
    app.require_subcommand(1);

    CommonOpts eo;
    CLI::App* entropy = app.add_subcommand(
        "entropy", "minimize the restoration objective");
    add_common(entropy, eo);

    CommonOpts do_;
    int dim_k = 1;
    std::vector<double> dim_s;
    CLI::App* dimension = app.add_subcommand(
        "dimension", "scan s values at fixed k for sign certificates");
    add_common(dimension, do_);
    dimension->add_option("--k", dim_k, "integer index k");
    dimension->add_option("--s", dim_s, "s values in [0, 1)")
        ->delimiter(',');

    CommonOpts bo;
    CLI::App* bound =
        app.add_subcommand("bound", "print the convergence-rate bounds");
    add_common(bound, bo);

    std::uint64_t seed = 0x5eed;
    bool inject = false;
    CLI::App* check =
        app.add_subcommand("check", "run the property suites");
    check->add_option("--seed", seed, "RNG seed for the suites");
    check->add_flag("--inject-sign-flip", inject,
                    "negate the analytic subgradient in the FD suite; the "
                    "suite must then fail (self-test of the checker)");

    try {
        app.parse(argc, argv);
        if (entropy->parsed()) return cmd_entropy(entropy, eo);
        if (dimension->parsed()) return cmd_dimension(dimension, do_, dim_k,
                                                      dim_s);
        if (bound->parsed()) return cmd_bound(bound, bo);
        if (check->parsed()) return cmd_check(seed, inject);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_domain_error& e) {
        std::cerr << "numerical domain error: " << e.what() << "\n";
        return 3;
    }
}
