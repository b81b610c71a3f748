#include "riembound/product.hpp"

#include <cmath>

namespace riembound {

bool FeasibleSet::contains(const MetricParams& x, double slack) const {
    return x.a.norm() <= ball_radius + slack && interval.contains(x.p, slack);
}

double product_dist(const MetricParams& u, const MetricParams& v) {
    if (u.a.size() != v.a.size())
        throw numerical_domain_error("product_dist: coefficient length mismatch");
    double de = (u.a - v.a).squaredNorm();
    double ds = dist(u.p, v.p);
    return std::sqrt(de + ds * ds);
}

double product_norm(const MetricParams& x, const ProductTangent& t) {
    double g = t.da.squaredNorm() + inner(x.p, t.dp, t.dp);
    return g > 0.0 ? std::sqrt(g) : 0.0;
}

MetricParams product_step(const MetricParams& x, double t,
                          const ProductTangent& dir) {
    double nrm = product_norm(x, dir);
    if (!(nrm > 0.0))
        throw numerical_domain_error("product_step: zero direction");
    double scale = -t / nrm;
    MetricParams out;
    out.a = x.a + scale * dir.da;
    out.p = exp_map(x.p, scale * dir.dp);
    return out;
}

MetricParams project_feasible(const MetricParams& x, const FeasibleSet& X) {
    MetricParams out = x;
    double na = out.a.norm();
    if (na > X.ball_radius && na > 0.0) out.a *= X.ball_radius / na;
    out.p = project_interval(out.p, X.interval);
    return out;
}

double feasible_diameter(const FeasibleSet& X, int n, int N) {
    if (!(X.ball_radius > 0.0) || !X.interval.valid() || n < 1 || N < 0)
        throw numerical_domain_error("feasible_diameter: invalid arguments");
    double ball = N > 0 ? 4.0 * X.ball_radius * X.ball_radius : 0.0;
    double li = std::log(X.interval.beta / X.interval.alpha);
    return std::sqrt(ball + n * li * li);
}

}  // namespace riembound
