#include "riembound/poly.hpp"

#include <array>

namespace riembound {

namespace {

/// Emit all multi-indices of total degree exactly t over n variables in
/// descending lexicographic order (x-power first), recursively.
void emit_degree(int n, int t, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(t);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = t; e >= 0; --e) {
        cur.push_back(e);
        emit_degree(n, t - e, cur, out);
        cur.pop_back();
    }
}

}  // namespace

MonomialBasis MonomialBasis::total_degree(int n_vars, int degree) {
    if (n_vars < 1 || degree < 1)
        throw config_error("MonomialBasis: need n_vars >= 1 and degree >= 1");
    MonomialBasis b;
    b.n_vars = n_vars;
    b.degree = degree;
    std::vector<int> cur;
    for (int t = 1; t <= degree; ++t) emit_degree(n_vars, t, cur, b.terms);
    return b;
}

double eval(const MonomialBasis& basis, const Vec& a, const Vec& x) {
    if (a.size() != basis.size())
        throw config_error("poly eval: coefficient length mismatch");
    return a.dot(coeff_gradient(basis, x));
}

Vec coeff_gradient(const MonomialBasis& basis, const Vec& x) {
    if (x.size() != basis.n_vars)
        throw config_error("coeff_gradient: point dimension mismatch");
    // powers[v][e] = x_v^e for e = 0..degree
    std::vector<std::vector<double>> powers(basis.n_vars);
    for (int v = 0; v < basis.n_vars; ++v) {
        powers[v].resize(basis.degree + 1);
        powers[v][0] = 1.0;
        for (int e = 1; e <= basis.degree; ++e)
            powers[v][e] = powers[v][e - 1] * x[v];
    }
    Vec g(basis.size());
    for (int j = 0; j < basis.size(); ++j) {
        double m = 1.0;
        for (int v = 0; v < basis.n_vars; ++v) m *= powers[v][basis.terms[j][v]];
        g[j] = m;
    }
    return g;
}

std::vector<std::string> term_labels(const MonomialBasis& basis) {
    auto var_name = [&](int v) -> std::string {
        static const std::array<const char*, 3> named = {"x", "y", "z"};
        if (basis.n_vars <= 3) return named[v];
        return "x" + std::to_string(v + 1);
    };
    std::vector<std::string> labels;
    labels.reserve(basis.terms.size());
    for (const auto& t : basis.terms) {
        std::string s;
        for (int v = 0; v < basis.n_vars; ++v) {
            if (t[v] == 0) continue;
            s += var_name(v);
            if (t[v] > 1) s += "^" + std::to_string(t[v]);
        }
        labels.push_back(s);
    }
    return labels;
}

}  // namespace riembound
