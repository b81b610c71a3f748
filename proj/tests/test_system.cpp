#include <cmath>
#include <random>

#include "doctest.h"
#include "riembound/errors.hpp"
#include "riembound/spd.hpp"
#include "riembound/system.hpp"

using namespace riembound;

TEST_SUITE("system") {

TEST_CASE("map evaluation and Jacobian") {
    SmoothMap map = henon(1.4, 0.3);
    CHECK(map.dim == 2);
    Vec x(2);
    x << 1.0, 2.0;
    Vec y = map.eval(x);
    // (1.4 - 1 + 0.6, 1) = (1.0, 1.0)
    CHECK(y(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(y(1) == doctest::Approx(1.0).epsilon(1e-15));
    Mat j = map.jacobian(x);
    CHECK(j(0, 0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(j(0, 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(j(1, 0) == doctest::Approx(1.0));
    CHECK(j(1, 1) == doctest::Approx(0.0));
    // |det| = b everywhere
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Vec z(2);
        z << uni(rng), uni(rng);
        CHECK(std::abs(map.jacobian(z).determinant()) ==
              doctest::Approx(0.3).epsilon(1e-14));
    }
}

TEST_CASE("Jacobian matches finite differences of the map") {
    SmoothMap map = henon(1.4, 0.3);
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        Vec x(2);
        x << uni(rng), uni(rng);
        Mat j = map.jacobian(x);
        for (int c = 0; c < 2; ++c) {
            Vec e = Vec::Zero(2);
            e(c) = h;
            Vec fd = (map.eval(x + e) - map.eval(x - e)) / (2.0 * h);
            CHECK((fd - j.col(c)).norm() <= 1e-7);
        }
    }
}

TEST_CASE("fixed point") {
    double xp = henon_fixed_point_plus(1.4, 0.3);
    CHECK(xp == doctest::Approx(0.8838963).epsilon(1e-6));
    SmoothMap map = henon(1.4, 0.3);
    Vec fixed(2);
    fixed << xp, xp;
    CHECK((map.eval(fixed) - fixed).norm() <= 1e-12);
    // defining quadratic x^2 + (1-b) x - a = 0
    CHECK(xp * xp + 0.7 * xp - 1.4 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("trapping region corners") {
    QuadRegion r = henon_region();
    CHECK(r.A.x() == -1.862);
    CHECK(r.A.y() == 1.96);
    CHECK(r.B.x() == 1.848);
    CHECK(r.B.y() == 0.6267);
    CHECK(r.C.x() == 1.743);
    CHECK(r.C.y() == -0.6533);
    CHECK(r.D.x() == -1.484);
    CHECK(r.D.y() == -2.3333);

    QuadRegion e = henon_region_enlarged();
    CHECK(e.D.x() == -2.0);
    CHECK(e.D.y() == -2.3333);
    // the other corners agree
    CHECK((e.A - r.A).norm() == doctest::Approx(0.0));
    CHECK((e.B - r.B).norm() == doctest::Approx(0.0));
    CHECK((e.C - r.C).norm() == doctest::Approx(0.0));
}

TEST_CASE("bilinear parameterization hits the corners") {
    QuadRegion r = henon_region();
    CHECK((r.at(0, 0) - r.A).norm() == doctest::Approx(0.0));
    CHECK((r.at(1, 0) - r.B).norm() == doctest::Approx(0.0));
    CHECK((r.at(1, 1) - r.C).norm() == doctest::Approx(0.0));
    CHECK((r.at(0, 1) - r.D).norm() == doctest::Approx(0.0));
    // center is the corner average
    Vec2 center = 0.25 * (r.A + r.B + r.C + r.D);
    CHECK((r.at(0.5, 0.5) - center).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("region membership") {
    QuadRegion r = henon_region();
    CHECK(r.contains(r.at(0.3, 0.7)));
    CHECK(r.contains(r.A));
    Vec2 outside(5.0, 5.0);
    CHECK_FALSE(r.contains(outside));
    Vec2 fixed(henon_fixed_point_plus(1.4, 0.3), henon_fixed_point_plus(1.4, 0.3));
    CHECK(r.contains(fixed));
}

TEST_CASE("the region traps sampled forward orbits") {
    SmoothMap map = henon(1.4, 0.3);
    QuadRegion r = henon_region();
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Vec2 uv(uni(rng), uni(rng));
        Vec2 pt = r.at(uv.x(), uv.y());
        Vec x(2);
        x << pt.x(), pt.y();
        Vec y = map.eval(x);
        // forward images of region points stay inside (trapping), up to a
        // small boundary slack
        CHECK(r.contains(Vec2(y(0), y(1)), 1e-6));
        ++checked;
    }
    CHECK(checked == 2000);
}

TEST_CASE("grid enumeration and corner membership") {
    QuadRegion r = henon_region();
    GridSpec two{2, false};
    auto pts2 = grid_points(r, two);
    REQUIRE(pts2.size() == 4);
    // row-major in u then v: (0,0), (0,1), (1,0), (1,1)
    CHECK((pts2[0] - r.A).norm() == doctest::Approx(0.0));
    CHECK((pts2[1] - r.D).norm() == doctest::Approx(0.0));
    CHECK((pts2[2] - r.B).norm() == doctest::Approx(0.0));
    CHECK((pts2[3] - r.C).norm() == doctest::Approx(0.0));

    GridSpec three{3, false};
    auto pts3 = grid_points(r, three);
    REQUIRE(pts3.size() == 9);
    Vec2 center = 0.25 * (r.A + r.B + r.C + r.D);
    CHECK((pts3[4] - center).norm() == doctest::Approx(0.0).epsilon(1e-14));

    // uv enumeration matches the points
    GridSpec m5{5, false};
    auto pts5 = grid_points(r, m5);
    for (int idx = 0; idx < 25; ++idx) {
        Vec2 uv = grid_uv(m5, idx);
        CHECK((pts5[static_cast<size_t>(idx)] - r.at(uv.x(), uv.y())).norm() ==
              doctest::Approx(0.0).epsilon(1e-14));
    }

    CHECK_THROWS_AS(grid_points(r, GridSpec{1, false}), config_error);
}

TEST_CASE("grids are deterministic") {
    QuadRegion r = henon_region();
    GridSpec spec{37, false};
    auto a = grid_points(r, spec);
    auto b = grid_points(r, spec);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK((a[i] - b[i]).norm() == doctest::Approx(0.0));
}

TEST_CASE("refinement window") {
    GridSpec spec{11, true};  // h = 0.1
    Vec2 center(0.5, 0.5);
    auto uv = refine_uv(spec, center);
    REQUIRE(uv.size() == 121);
    double lo_u = 1.0, hi_u = 0.0, lo_v = 1.0, hi_v = 0.0;
    for (const Vec2& p : uv) {
        lo_u = std::min(lo_u, p.x());
        hi_u = std::max(hi_u, p.x());
        lo_v = std::min(lo_v, p.y());
        hi_v = std::max(hi_v, p.y());
        CHECK(p.x() >= 0.0);
        CHECK(p.x() <= 1.0);
        CHECK(p.y() >= 0.0);
        CHECK(p.y() <= 1.0);
    }
    // window spans +-1.5 cells = +-0.15 around the center
    CHECK(lo_u == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(hi_u == doctest::Approx(0.65).epsilon(1e-12));
    CHECK(lo_v == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(hi_v == doctest::Approx(0.65).epsilon(1e-12));

    // corner window clips to the unit square
    auto uv0 = refine_uv(spec, Vec2(0.0, 0.0));
    for (const Vec2& p : uv0) {
        CHECK(p.x() >= 0.0);
        CHECK(p.y() >= 0.0);
        CHECK(p.x() <= doctest::Approx(0.15).epsilon(1e-12));
        CHECK(p.y() <= doctest::Approx(0.15).epsilon(1e-12));
    }
    // window still contains the center itself
    bool has_center = false;
    for (const Vec2& p : uv0)
        if (p.norm() < 1e-14) has_center = true;
    CHECK(has_center);

    // mapped variant agrees with at()
    QuadRegion r = henon_region();
    auto mapped = refine_around(r, spec, center);
    REQUIRE(mapped.size() == uv.size());
    for (size_t i = 0; i < uv.size(); ++i)
        CHECK((mapped[i] - r.at(uv[i].x(), uv[i].y())).norm() ==
              doctest::Approx(0.0).epsilon(1e-14));
}

}  // TEST_SUITE
