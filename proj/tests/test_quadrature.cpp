#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyplab/geom.hpp"
#include "hyplab/quadrature.hpp"

using namespace hyplab;

TEST_CASE("weight integral over a rectangle reproduces the closed form") {
    // f = 1: integral of dx dy / y^2 = width * (1/y0 - 1/y1).
    Rect r{0.0, 1.0, 0.5, 4.0};
    QuadratureResult q = integrate_weight(r, [](double, double) { return 1.0; });
    CHECK(q.value == doctest::Approx(r.hyp_measure()).epsilon(1e-12));
}

TEST_CASE("weight integral of a smooth function") {
    // integral over [0,1]x[1,2] of y^2 * (dx dy / y^2) = 1.
    Rect r{0.0, 1.0, 1.0, 2.0};
    QuadratureResult q = integrate_weight(r, [](double, double y) { return y * y; });
    CHECK(q.value == doctest::Approx(1.0).epsilon(1e-12));
    // x-dependent: integral of x over [0,1] times (1/1 - 1/2).
    QuadratureResult q2 = integrate_weight(r, [](double x, double) { return x; });
    CHECK(q2.value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("cusp-domain area with analytic tail: 1/a") {
    // Numeric part up to Y plus the tail width * 1/Y gives exactly 1/a.
    double a = 0.35, Y = 50.0;
    Rect r{0.0, 1.0, a, Y};
    QuadratureResult q = integrate_weight(r, [](double, double) { return 1.0; });
    double with_tail = q.value + 1.0 * (1.0 / Y);
    CHECK(with_tail == doctest::Approx(1.0 / a).epsilon(1e-10));
}

TEST_CASE("zero integrand") {
    Rect r{0.0, 1.0, 1.0, 2.0};
    QuadratureResult q = integrate_weight(r, [](double, double) { return 0.0; });
    CHECK(q.value == 0.0);
}

TEST_CASE("ball volume by disk slices agrees with 4 pi sinh^2(R/2)") {
    // The geodesic ball is integrated through its Euclidean realization with
    // the angle substitution y = cy + r sin(phi): an independent route to
    // ball_volume.
    for (double R : {0.25, 1.0, 2.0, 4.0}) {
        EuclideanDisk d = ball_to_euclidean(GeodesicBall(HPoint(0.3, 2.0), R));
        auto slice = [&](double phi) {
            double y = d.cy + d.r * std::sin(phi);
            double halfwidth = d.r * std::cos(phi);
            return 2.0 * halfwidth * d.r * std::cos(phi) / (y * y);
        };
        QuadratureOptions opts;
        opts.rel_tol = 1e-10;
        double vol = integrate_1d(-M_PI / 2, M_PI / 2, slice, opts).value;
        CHECK(vol == doctest::Approx(ball_volume(R)).epsilon(1e-8));
    }
}

TEST_CASE("1d quadrature on elementary integrals") {
    QuadratureResult q =
        integrate_1d(0.0, M_PI, [](double x) { return std::sin(x); });
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
    QuadratureResult g =
        integrate_1d(0.0, 10.0, [](double x) { return std::exp(-x * x); });
    CHECK(g.value == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
}

TEST_CASE("1d quadrature resolves a sqrt endpoint kink") {
    QuadratureResult q = integrate_1d(0.0, 1.0, [](double x) { return std::sqrt(x); });
    CHECK(q.value == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("invalid domains are rejected") {
    CHECK_THROWS_AS(integrate_weight(Rect{0, 1, -1, 2}, [](double, double) { return 1.0; }),
                    ValidationError);
    CHECK_THROWS_AS(integrate_1d(1.0, 0.0, [](double) { return 1.0; }), ValidationError);
}
