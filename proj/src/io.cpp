#include "riembound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "riembound/errors.hpp"

namespace riembound {

using nlohmann::json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

/// Reject unknown keys so config typos fail loudly instead of silently
/// falling back to defaults.
void require_keys(const json& obj, const char* section,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw config_error(std::string("config: unknown key '") + it.key() +
                               "' in section '" + section + "'");
    }
}

double get_number(const json& obj, const char* section, const char* key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw config_error(std::string("config: ") + section + "." + key +
                           " must be a number");
    return v.get<double>();
}

long get_integer(const json& obj, const char* section, const char* key,
                 long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw config_error(std::string("config: ") + section + "." + key +
                           " must be an integer");
    return v.get<long>();
}

bool get_bool(const json& obj, const char* section, const char* key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw config_error(std::string("config: ") + section + "." + key +
                           " must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const char* section, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        throw config_error(std::string("config: ") + section + "." + key +
                           " must be a string");
    return v.get<std::string>();
}

}  // namespace

void validate_run_config(const RunConfig& cfg) {
    if (cfg.system_name != "henon")
        throw config_error("config: unknown system '" + cfg.system_name + "'");
    if (cfg.param_b == 0.0)
        throw config_error("config: system.params.b must be nonzero");
    if (!cfg.has_corners && (cfg.param_a != 1.4 || cfg.param_b != 0.3))
        throw config_error(
            "config: non-default map parameters require explicit corners; "
            "the built-in region traps only the default map");
    if (cfg.degree < 1) throw config_error("config: basis.degree must be >= 1");
    if (cfg.grid_m < 2) throw config_error("config: grid.m must be >= 2");
    if (!(cfg.ball_radius > 0.0))
        throw config_error("config: feasible.ball_radius must be positive");
    if (!(cfg.alpha > 0.0) || !(cfg.beta > cfg.alpha))
        throw config_error("config: feasible interval needs 0 < alpha < beta");
    if (cfg.step_rule != "exogenous" && cfg.step_rule != "constant" &&
        cfg.step_rule != "polyak")
        throw config_error("config: step.rule must be exogenous, constant or "
                           "polyak");
    if (!(cfg.t0 > 0.0)) throw config_error("config: step.t0 must be positive");
    if (!(cfg.epsilon >= 0.0))
        throw config_error("config: step.epsilon must be >= 0");
    if (!std::isfinite(cfg.alpha_factor) || !std::isfinite(cfg.f_star) ||
        !std::isfinite(cfg.tbar))
        throw config_error("config: step parameters must be finite");
    if (cfg.iters < 0) throw config_error("config: run.iters must be >= 0");
    if (cfg.record_every < 1)
        throw config_error("config: run.record_every must be >= 1");
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config: document must be an object");
    require_keys(doc, "<top>",
                 {"system", "basis", "grid", "feasible", "step", "run"});

    RunConfig cfg;
    if (doc.contains("system")) {
        const json& sys = doc.at("system");
        require_keys(sys, "system", {"name", "params", "corners"});
        cfg.system_name = get_string(sys, "system", "name", cfg.system_name);
        if (sys.contains("params")) {
            const json& par = sys.at("params");
            require_keys(par, "system.params", {"a", "b"});
            cfg.param_a = get_number(par, "system.params", "a", cfg.param_a);
            cfg.param_b = get_number(par, "system.params", "b", cfg.param_b);
        }
        if (sys.contains("corners")) {
            const json& cs = sys.at("corners");
            if (!cs.is_array() || cs.size() != 4)
                throw config_error(
                    "config: system.corners must be an array of 4 points");
            for (int i = 0; i < 4; ++i) {
                const json& pt = cs.at(i);
                if (!pt.is_array() || pt.size() != 2 || !pt.at(0).is_number() ||
                    !pt.at(1).is_number())
                    throw config_error(
                        "config: each corner must be a [x, y] pair");
                cfg.corners[static_cast<size_t>(i)] =
                    Vec2(pt.at(0).get<double>(), pt.at(1).get<double>());
            }
            cfg.has_corners = true;
        }
    }
    if (doc.contains("basis")) {
        const json& bas = doc.at("basis");
        require_keys(bas, "basis", {"degree"});
        cfg.degree =
            static_cast<int>(get_integer(bas, "basis", "degree", cfg.degree));
    }
    if (doc.contains("grid")) {
        const json& gr = doc.at("grid");
        require_keys(gr, "grid", {"m", "refine"});
        cfg.grid_m = static_cast<int>(get_integer(gr, "grid", "m", cfg.grid_m));
        cfg.grid_refine = get_bool(gr, "grid", "refine", cfg.grid_refine);
    }
    if (doc.contains("feasible")) {
        const json& fe = doc.at("feasible");
        require_keys(fe, "feasible", {"ball_radius", "alpha", "beta"});
        cfg.ball_radius =
            get_number(fe, "feasible", "ball_radius", cfg.ball_radius);
        cfg.alpha = get_number(fe, "feasible", "alpha", cfg.alpha);
        cfg.beta = get_number(fe, "feasible", "beta", cfg.beta);
    }
    if (doc.contains("step")) {
        const json& st = doc.at("step");
        require_keys(st, "step",
                     {"rule", "t0", "tbar", "alpha_factor", "f_star",
                      "epsilon"});
        cfg.step_rule = get_string(st, "step", "rule", cfg.step_rule);
        cfg.t0 = get_number(st, "step", "t0", cfg.t0);
        cfg.tbar = get_number(st, "step", "tbar", cfg.tbar);
        cfg.alpha_factor =
            get_number(st, "step", "alpha_factor", cfg.alpha_factor);
        cfg.f_star = get_number(st, "step", "f_star", cfg.f_star);
        cfg.epsilon = get_number(st, "step", "epsilon", cfg.epsilon);
    }
    if (doc.contains("run")) {
        const json& rn = doc.at("run");
        require_keys(rn, "run", {"iters", "record_every", "output_dir"});
        cfg.iters = get_integer(rn, "run", "iters", cfg.iters);
        cfg.record_every =
            get_integer(rn, "run", "record_every", cfg.record_every);
        cfg.output_dir = get_string(rn, "run", "output_dir", cfg.output_dir);
    }
    validate_run_config(cfg);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"system\": {\"name\": \"" << cfg.system_name
       << "\", \"params\": {\"a\": " << g17(cfg.param_a)
       << ", \"b\": " << g17(cfg.param_b) << "}";
    if (cfg.has_corners) {
        os << ", \"corners\": [";
        for (int i = 0; i < 4; ++i) {
            const Vec2& c = cfg.corners[static_cast<size_t>(i)];
            os << (i ? ", [" : "[") << g17(c.x()) << ", " << g17(c.y()) << "]";
        }
        os << "]";
    }
    os << "},\n";
    os << "  \"basis\": {\"degree\": " << cfg.degree << "},\n";
    os << "  \"grid\": {\"m\": " << cfg.grid_m << ", \"refine\": "
       << (cfg.grid_refine ? "true" : "false") << "},\n";
    os << "  \"feasible\": {\"ball_radius\": " << g17(cfg.ball_radius)
       << ", \"alpha\": " << g17(cfg.alpha) << ", \"beta\": " << g17(cfg.beta)
       << "},\n";
    os << "  \"step\": {\"rule\": \"" << cfg.step_rule
       << "\", \"t0\": " << g17(cfg.t0) << ", \"tbar\": " << g17(cfg.tbar)
       << ", \"alpha_factor\": " << g17(cfg.alpha_factor)
       << ", \"f_star\": " << g17(cfg.f_star)
       << ", \"epsilon\": " << g17(cfg.epsilon) << "},\n";
    os << "  \"run\": {\"iters\": " << cfg.iters
       << ", \"record_every\": " << cfg.record_every
       << ", \"output_dir\": \"" << cfg.output_dir << "\"}\n";
    os << "}\n";
    return os.str();
}

SmoothMap config_map(const RunConfig& cfg) {
    return henon(cfg.param_a, cfg.param_b);
}

QuadRegion config_region(const RunConfig& cfg) {
    if (cfg.has_corners)
        return QuadRegion{cfg.corners[0], cfg.corners[1], cfg.corners[2],
                          cfg.corners[3]};
    return henon_region();
}

FeasibleSet config_feasible(const RunConfig& cfg) {
    return FeasibleSet{cfg.ball_radius, OrderInterval{cfg.alpha, cfg.beta}};
}

GridSpec config_grid(const RunConfig& cfg) {
    return GridSpec{cfg.grid_m, cfg.grid_refine};
}

void write_metric_report(std::ostream& os, const MetricReport& report) {
    const int n = static_cast<int>(report.p.rows());
    os << "{\n";
    os << "  \"bound\": " << g17(report.bound) << ",\n";
    os << "  \"bound_iter\": " << report.bound_iter << ",\n";
    os << "  \"norm_a\": " << g17(report.norm_a) << ",\n";
    os << "  \"eig_p_min\": " << g17(report.eig_p_min) << ",\n";
    os << "  \"eig_p_max\": " << g17(report.eig_p_max) << ",\n";
    os << "  \"p\": [";
    for (int i = 0; i < n; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n; ++j)
            os << (j ? ", " : "") << g17(report.p(i, j));
        os << "]";
    }
    os << "],\n";
    os << "  \"coefficients\": [\n";
    for (size_t i = 0; i < report.labels.size(); ++i)
        os << "    {\"term\": \"" << report.labels[i]
           << "\", \"value\": " << g17(report.coefficients(static_cast<long>(i)))
           << "}" << (i + 1 < report.labels.size() ? "," : "") << "\n";
    os << "  ]\n";
    os << "}\n";
}

MetricReport read_metric_report(std::istream& is) {
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::exception& e) {
        throw config_error(std::string("metric report: invalid JSON: ") +
                           e.what());
    }
    MetricReport report;
    try {
        report.bound = doc.at("bound").get<double>();
        report.bound_iter = doc.at("bound_iter").get<long>();
        report.norm_a = doc.at("norm_a").get<double>();
        report.eig_p_min = doc.at("eig_p_min").get<double>();
        report.eig_p_max = doc.at("eig_p_max").get<double>();
        const json& p = doc.at("p");
        const int n = static_cast<int>(p.size());
        report.p.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                report.p(i, j) = p.at(i).at(j).get<double>();
        const json& coeffs = doc.at("coefficients");
        report.coefficients.resize(static_cast<long>(coeffs.size()));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            report.labels.push_back(coeffs.at(i).at("term").get<std::string>());
            report.coefficients(static_cast<long>(i)) =
                coeffs.at(i).at("value").get<double>();
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("metric report: missing field: ") +
                           e.what());
    }
    return report;
}

MetricParams params_from_report(const MetricReport& report) {
    MetricParams params;
    params.a = report.coefficients;
    params.p = report.p;
    return params;
}

void write_dimension_csv(std::ostream& os, const DimensionScanResult& scan) {
    os << "bound,s,first_negative_iter,value\n";
    for (const DimensionRow& row : scan.rows) {
        os << g17(scan.k + row.s) << "," << g17(row.s) << ",";
        if (row.first_negative_iter) os << *row.first_negative_iter;
        os << ",";
        if (row.value_at_first_negative) os << g17(*row.value_at_first_negative);
        os << "\n";
    }
}

void write_best_bound_csv(std::ostream& os, const RunTrace& trace) {
    os << "iteration,best_bound\n";
    for (const IterateRecord& rec : trace.records)
        os << rec.k << "," << g17(rec.best_so_far) << "\n";
}

}  // namespace riembound
