#pragma once

/// Discrete-time system abstraction (map and Jacobian), the built-in
/// Henon map, its trapping quadrilateral, and deterministic grid sampling
/// of the quadrilateral with one refinement pass around a maximizer.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riembound/errors.hpp"

namespace riembound {

using Vec2 = Eigen::Vector2d;

/// A C^1 map together with its Jacobian A(x) = Dphi(x), assumed invertible
/// at every evaluated point (checked lazily: |det| > 1e-12).
struct SmoothMap {
    int dim = 0;
    std::string name;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian;
};

/// Henon map phi(x,y) = (a - x^2 + b*y, x) with Jacobian
/// [[-2x, b], [1, 0]]; |det| = b everywhere.
SmoothMap henon(double a, double b);

/// Larger Henon fixed-point coordinate x_+ = (b-1+sqrt((b-1)^2+4a))/2;
/// (x_+, x_+) is a fixed point of the map.
double henon_fixed_point_plus(double a, double b);

/// Convex quadrilateral region given by its four corners in the bilinear
/// parameterization order A=(0,0), B=(1,0), C=(1,1), D=(0,1) of the unit
/// square.
struct QuadRegion {
    Vec2 A, B, C, D;

    /// Bilinear image of (u,v) in [0,1]^2.
    Vec2 at(double u, double v) const;
    /// Point-in-convex-quad test (orientation signs), tolerance on the
    /// cross products.
    bool contains(const Vec2& pt, double slack = 1e-9) const;
};

/// Trapping quadrilateral for the standard Henon map:
/// A=(-1.862, 1.96), B=(1.848, 0.6267), C=(1.743, -0.6533),
/// D=(-1.484, -2.3333).
QuadRegion henon_region();

/// Variant with D moved to (-2, -2.3333) so the region also contains the
/// second equilibrium.
QuadRegion henon_region_enlarged();

struct GridSpec {
    int m = 1000;       ///< points per axis
    bool refine = true; ///< run the refinement pass around the maximizer
};

/// m x m bilinear lattice over the region: image of the uniform
/// (i/(m-1), j/(m-1)) grid, row-major in u then v; includes all corners.
std::vector<Vec2> grid_points(const QuadRegion& region, const GridSpec& spec);

/// Unit-square coordinates of grid point index (same enumeration order as
/// grid_points).
Vec2 grid_uv(const GridSpec& spec, int index);

/// m x m lattice over the window of +-1.5 coarse cells around center_uv
/// (the 3x3 block of coarse cells), clipped to [0,1]^2, mapped bilinearly.
std::vector<Vec2> refine_around(const QuadRegion& region, const GridSpec& spec,
                                const Vec2& center_uv);

/// Same refinement window, but returned as unit-square coordinates.
std::vector<Vec2> refine_uv(const GridSpec& spec, const Vec2& center_uv);

}  // namespace riembound
