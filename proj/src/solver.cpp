#include "riembound/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace riembound {

namespace {

constexpr double kinf = std::numeric_limits<double>::infinity();

/// Full-precision scientific float for the JSON-lines trace (17 significant
/// digits, enough to round-trip a double exactly).
std::string trace_float(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void stream_record(std::ostream& os, const IterateRecord& r) {
    os << "{\"k\":" << r.k << ",\"f\":" << trace_float(r.objective)
       << ",\"t\":" << trace_float(r.step) << ",\"best\":"
       << trace_float(r.best_so_far) << ",\"best_k\":" << r.best_iter
       << ",\"gap_ok\":" << (r.gap_flag ? "true" : "false")
       << ",\"moved\":" << trace_float(r.moved) << "}\n";
}

}  // namespace

RunTrace run(const ObjectiveHandle& objective, const MetricParams& start,
             const StepRule& rule, const SolverConfig& cfg,
             std::ostream* trace_out, bool stop_at_first_negative) {
    if (cfg.max_iters < 0) throw config_error("run: max_iters must be >= 0");
    if (cfg.record_every < 1) throw config_error("run: record_every must be >= 1");
    const int n = static_cast<int>(start.p.rows());
    const int N = static_cast<int>(start.a.size());
    const double D =
        cfg.D > 0.0 ? cfg.D : feasible_diameter(cfg.feasible, n, N);
    if (rule.kind == StepRule::Kind::polyak) {
        double limit = polyak_alpha_limit(D, cfg.kappa);
        if (!(rule.alpha > 0.0) || !(rule.alpha < limit))
            throw config_error("run: polyak alpha outside (0, 2 tanh(kD)/(kD))");
    }
    if (rule.kind == StepRule::Kind::constant && !(rule.tbar > 0.0))
        throw config_error("run: constant step must be positive");
    if (rule.kind == StepRule::Kind::exogenous && !(rule.t0 > 0.0))
        throw config_error("run: exogenous t0 must be positive");

    RunTrace trace;
    trace.status = "completed";
    MetricParams x = project_feasible(start, cfg.feasible);
    trace.best_value = kinf;
    trace.best_iter = 0;

    for (long k = 0;; ++k) {
        ObjectiveEval ev = objective(x);
        bool new_best = ev.value < trace.best_value;
        if (new_best) {
            trace.best_value = ev.value;
            trace.best_iter = k;
            trace.best_params = x;
        }
        if (!trace.first_negative_iter && ev.value < 0.0) {
            trace.first_negative_iter = k;
            trace.value_at_first_negative = ev.value;
        }
        bool last = k == cfg.max_iters ||
                    (stop_at_first_negative && ev.value < 0.0);

        double t = 0.0;
        double moved = 0.0;
        if (!last) {
            double vn = product_norm(x, ev.grad);
            trace.max_grad_norm = std::max(trace.max_grad_norm, vn);
            if (vn < 1e-15) {
                trace.status = "stationary";
                last = true;
            } else {
                switch (rule.kind) {
                    case StepRule::Kind::exogenous:
                        t = rule.t0 / (k + 1);
                        break;
                    case StepRule::Kind::constant:
                        t = rule.tbar;
                        break;
                    case StepRule::Kind::polyak:
                        t = std::max(0.0, polyak_step(ev.value, rule, D, vn));
                        break;
                }
                if (t > 0.0) {
                    MetricParams xn = project_feasible(
                        product_step(x, t, ev.grad), cfg.feasible);
                    moved = product_dist(x, xn);
                    x = xn;
                }
                trace.steps.push_back(t);
            }
        }

        IterateRecord rec{k,     ev.value,         t,
                          ev.exact, moved,         trace.best_value,
                          trace.best_iter};
        if (k % cfg.record_every == 0 || new_best || last) {
            trace.records.push_back(rec);
            if (trace_out) stream_record(*trace_out, rec);
        }
        if (last) break;
    }
    return trace;
}

double zeta_constant(double D, double sigma, double kappa) {
    if (!(D > 0.0) || !(sigma > 0.0) || !(kappa > 0.0))
        throw config_error("zeta_constant: D, sigma, kappa must be positive");
    return D * std::sinh(kappa * sigma) / (sigma * std::tanh(kappa * D));
}

double constant_step_optimal(double D, double zeta, long N_iters) {
    if (!(D > 0.0) || !(zeta > 0.0) || N_iters < 1)
        throw config_error("constant_step_optimal: invalid arguments");
    return D / std::sqrt(zeta * static_cast<double>(N_iters));
}

double polyak_step(double f_pk, const StepRule& rule, double D, double v_norm) {
    if (!(v_norm > 0.0)) throw config_error("polyak_step: zero gradient norm");
    return rule.alpha * (f_pk - rule.f_star - rule.epsilon * D) / v_norm;
}

double polyak_alpha_limit(double D, double kappa) {
    return 2.0 * std::tanh(kappa * D) / (kappa * D);
}

double bound_exogenous(double eps, double iota, double D, double zeta,
                       std::span<const double> steps) {
    double sum_t = 0.0, sum_t2 = 0.0;
    for (double t : steps) {
        sum_t += t;
        sum_t2 += t * t;
    }
    if (!(sum_t > 0.0)) throw config_error("bound_exogenous: empty schedule");
    return (eps + iota) * (D * D + zeta * sum_t2) / (2.0 * sum_t);
}

double bound_constant(double eps, double iota, double D, double zeta,
                      double tbar, long N) {
    if (!(tbar > 0.0) || N < 1)
        throw config_error("bound_constant: invalid arguments");
    double Nd = static_cast<double>(N);
    return (eps + iota) * (D * D + zeta * Nd * tbar * tbar) / (2.0 * Nd * tbar);
}

double bound_polyak(double eps, double iota, double D, double alpha,
                    double kappa, long N) {
    if (N < 1) throw config_error("bound_polyak: N must be >= 1");
    double curv = kappa * D / std::tanh(kappa * D);
    double gamma_num = 2.0 * alpha - curv * alpha * alpha;
    if (!(gamma_num > 0.0))
        throw config_error("bound_polyak: alpha outside the admissible range");
    double gamma = gamma_num / ((eps + iota) * (eps + iota) * D * D);
    return 1.0 / std::sqrt(gamma * static_cast<double>(N));
}

}  // namespace riembound
