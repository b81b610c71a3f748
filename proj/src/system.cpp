#include "riembound/system.hpp"

#include <cmath>

namespace riembound {

SmoothMap henon(double a, double b) {
    SmoothMap m;
    m.dim = 2;
    m.name = "henon";
    m.eval = [a, b](const Eigen::VectorXd& x) {
        Eigen::VectorXd y(2);
        y[0] = a - x[0] * x[0] + b * x[1];
        y[1] = x[0];
        return y;
    };
    m.jacobian = [b](const Eigen::VectorXd& x) {
        Eigen::MatrixXd J(2, 2);
        J(0, 0) = -2.0 * x[0];
        J(0, 1) = b;
        J(1, 0) = 1.0;
        J(1, 1) = 0.0;
        return J;
    };
    return m;
}

double henon_fixed_point_plus(double a, double b) {
    return 0.5 * (b - 1.0 + std::sqrt((b - 1.0) * (b - 1.0) + 4.0 * a));
}

Vec2 QuadRegion::at(double u, double v) const {
    return (1.0 - u) * (1.0 - v) * A + u * (1.0 - v) * B + u * v * C +
           (1.0 - u) * v * D;
}

bool QuadRegion::contains(const Vec2& pt, double slack) const {
    auto cross = [](const Vec2& o, const Vec2& e, const Vec2& q) {
        return (e.x() - o.x()) * (q.y() - o.y()) -
               (e.y() - o.y()) * (q.x() - o.x());
    };
    // boundary order of the bilinear parameterization: A -> B -> C -> D
    double c1 = cross(A, B, pt);
    double c2 = cross(B, C, pt);
    double c3 = cross(C, D, pt);
    double c4 = cross(D, A, pt);
    bool all_nonneg = c1 >= -slack && c2 >= -slack && c3 >= -slack && c4 >= -slack;
    bool all_nonpos = c1 <= slack && c2 <= slack && c3 <= slack && c4 <= slack;
    return all_nonneg || all_nonpos;
}

QuadRegion henon_region() {
    QuadRegion r;
    r.A = Vec2(-1.862, 1.96);
    r.B = Vec2(1.848, 0.6267);
    r.C = Vec2(1.743, -0.6533);
    r.D = Vec2(-1.484, -2.3333);
    return r;
}

QuadRegion henon_region_enlarged() {
    QuadRegion r = henon_region();
    r.D = Vec2(-2.0, -2.3333);
    return r;
}

std::vector<Vec2> grid_points(const QuadRegion& region, const GridSpec& spec) {
    if (spec.m < 2) throw config_error("grid_points: need m >= 2");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<size_t>(spec.m) * spec.m);
    const double h = 1.0 / (spec.m - 1);
    for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.m; ++j)
            pts.push_back(region.at(i * h, j * h));
    return pts;
}

Vec2 grid_uv(const GridSpec& spec, int index) {
    const double h = 1.0 / (spec.m - 1);
    int i = index / spec.m;
    int j = index % spec.m;
    return Vec2(i * h, j * h);
}

std::vector<Vec2> refine_uv(const GridSpec& spec, const Vec2& center_uv) {
    if (spec.m < 2) throw config_error("refine_uv: need m >= 2");
    const double h = 1.0 / (spec.m - 1);
    auto window = [&](double c) {
        double lo = std::max(0.0, c - 1.5 * h);
        double hi = std::min(1.0, c + 1.5 * h);
        return std::pair<double, double>(lo, hi);
    };
    auto [ulo, uhi] = window(center_uv.x());
    auto [vlo, vhi] = window(center_uv.y());
    std::vector<Vec2> uv;
    uv.reserve(static_cast<size_t>(spec.m) * spec.m);
    const double du = (uhi - ulo) / (spec.m - 1);
    const double dv = (vhi - vlo) / (spec.m - 1);
    for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.m; ++j)
            uv.push_back(Vec2(ulo + i * du, vlo + j * dv));
    return uv;
}

std::vector<Vec2> refine_around(const QuadRegion& region, const GridSpec& spec,
                                const Vec2& center_uv) {
    std::vector<Vec2> uv = refine_uv(spec, center_uv);
    std::vector<Vec2> pts;
    pts.reserve(uv.size());
    for (const auto& q : uv) pts.push_back(region.at(q.x(), q.y()));
    return pts;
}

}  // namespace riembound
