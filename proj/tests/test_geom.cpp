#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyplab/geom.hpp"
#include "hyplab/rng.hpp"

using namespace hyplab;

namespace {

HPoint random_point(const CounterRng& rng, std::uint64_t i) {
    double x = rng.uniform(3 * i, -10.0, 10.0);
    double y = std::exp(rng.uniform(3 * i + 1, -3.0, 3.0));
    return HPoint(x, y);
}

Mobius random_mobius(const CounterRng& rng, std::uint64_t i) {
    // Random products of translations, dilations and a lower-triangular map.
    Mobius t = Mobius::translation(rng.uniform(4 * i, -5.0, 5.0));
    Mobius d = Mobius::dilation(std::exp(rng.uniform(4 * i + 1, -2.0, 2.0)));
    double c = rng.uniform(4 * i + 2, -2.0, 2.0);
    Mobius k(1.0, 0.0, c, 1.0);
    return t * d * k;
}

} // namespace

TEST_CASE("distance on the vertical geodesic is log ratio") {
    CHECK(dist(HPoint(0, 1), HPoint(0, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(dist(HPoint(3, 0.5), HPoint(3, 8)) ==
          doctest::Approx(std::log(16.0)).epsilon(1e-14));
}

TEST_CASE("distance between horizontal translates matches the arccosh identity") {
    // cosh d = 1 + k^2 / (2 Im^2) with k = 1, Im = 2.
    double expected = std::acosh(1.0 + 1.0 / 8.0);
    CHECK(dist(HPoint(0, 2), HPoint(1, 2)) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(0.4949329230945269).epsilon(1e-12));
}

TEST_CASE("distance is symmetric, nonnegative, zero iff equal") {
    CounterRng rng(11, "geom-sym");
    for (std::uint64_t i = 0; i < 10000; ++i) {
        HPoint p = random_point(rng, 2 * i), q = random_point(rng, 2 * i + 1);
        double d1 = dist(p, q), d2 = dist(q, p);
        CHECK(d1 == d2);
        CHECK(d1 >= 0.0);
    }
    HPoint p(0.3, 1.7);
    CHECK(dist(p, p) == 0.0);
}

TEST_CASE("triangle inequality on sampled triples") {
    CounterRng rng(12, "geom-tri");
    for (std::uint64_t i = 0; i < 2000; ++i) {
        HPoint a = random_point(rng, 3 * i), b = random_point(rng, 3 * i + 1),
               c = random_point(rng, 3 * i + 2);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
    }
}

TEST_CASE("Mobius constructor normalizes and rejects bad determinants") {
    Mobius m(2, 0, 0, 2); // det 4, normalized to identity
    HPoint p(0.5, 3.0);
    HPoint q = m.apply(p);
    CHECK(q.x == doctest::Approx(p.x));
    CHECK(q.y == doctest::Approx(p.y));
    CHECK_THROWS_AS(Mobius(1, 0, 0, -1), ValidationError);
    CHECK_THROWS_AS(Mobius(1, 2, 2, 4), ValidationError); // det 0
}

TEST_CASE("identity fixes every point") {
    CounterRng rng(13, "geom-id");
    for (std::uint64_t i = 0; i < 100; ++i) {
        HPoint p = random_point(rng, i);
        HPoint q = Mobius::identity().apply(p);
        CHECK(q.x == doctest::Approx(p.x).epsilon(1e-15));
        CHECK(q.y == doctest::Approx(p.y).epsilon(1e-15));
    }
}

TEST_CASE("funnel generator acts as dilation on the axis") {
    double l = 0.7;
    Mobius g = Mobius::dilation(std::exp(l));
    HPoint q = g.apply(HPoint(0, 1));
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(std::exp(l)).epsilon(1e-14));
}

TEST_CASE("cusp generator translates by one") {
    HPoint q = Mobius::translation(1.0).apply(HPoint(0, 1));
    CHECK(q.x == doctest::Approx(1.0));
    CHECK(q.y == doctest::Approx(1.0));
}

TEST_CASE("Mobius maps preserve distance to 1e-12") {
    CounterRng rng(14, "geom-iso");
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Mobius T = random_mobius(rng, i);
        HPoint p = random_point(rng, 2 * i), q = random_point(rng, 2 * i + 1);
        double before = dist(p, q);
        double after = dist(T.apply(p), T.apply(q));
        CHECK(std::abs(after - before) <= 1e-12 * std::max(1.0, before));
    }
}

TEST_CASE("composition equals successive application") {
    CounterRng rng(15, "geom-comp");
    for (std::uint64_t i = 0; i < 2000; ++i) {
        Mobius A = random_mobius(rng, 2 * i), B = random_mobius(rng, 2 * i + 1);
        HPoint p = random_point(rng, i);
        HPoint lhs = (A * B).apply(p);
        HPoint rhs = A.apply(B.apply(p));
        CHECK(std::abs(lhs.x - rhs.x) <= 1e-12 * (1.0 + std::abs(rhs.x)));
        CHECK(std::abs(lhs.y - rhs.y) <= 1e-12 * (1.0 + std::abs(rhs.y)));
    }
}

TEST_CASE("ball realization: center shifted upwards") {
    GeodesicBall b(HPoint(3, 2), std::log(2.0));
    EuclideanDisk d = ball_to_euclidean(b);
    CHECK(d.cx == doctest::Approx(3.0));
    CHECK(d.cy == doctest::Approx(2.5).epsilon(1e-15)); // 2 cosh ln 2 = 2.5
    CHECK(d.r == doctest::Approx(1.5).epsilon(1e-15));  // 2 sinh ln 2 = 1.5

    EuclideanDisk d2 = ball_to_euclidean(GeodesicBall(HPoint(0, 1), 1.3));
    CHECK(d2.cx == 0.0);
    CHECK(d2.cy == doctest::Approx(std::cosh(1.3)));
    CHECK(d2.r == doctest::Approx(std::sinh(1.3)));
}

TEST_CASE("ball realization degenerates correctly as R -> 0") {
    GeodesicBall b(HPoint(0.4, 2.2), 1e-9);
    EuclideanDisk d = ball_to_euclidean(b);
    CHECK(d.cx == doctest::Approx(0.4));
    CHECK(d.cy == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(d.r == doctest::Approx(2.2e-9).epsilon(1e-6));
}

TEST_CASE("ball realization round-trips") {
    CounterRng rng(16, "geom-ball");
    for (std::uint64_t i = 0; i < 1000; ++i) {
        HPoint c = random_point(rng, i);
        double R = rng.uniform(7000 + i, 0.01, 4.0);
        GeodesicBall b(c, R);
        GeodesicBall back = ball_from_euclidean(ball_to_euclidean(b));
        CHECK(std::abs(back.center.x - c.x) <= 1e-12 * (1 + std::abs(c.x)));
        CHECK(std::abs(back.center.y - c.y) <= 1e-12 * c.y);
        CHECK(std::abs(back.radius - R) <= 1e-12 * R);
    }
}

TEST_CASE("ball volume formula and doubling identity") {
    CHECK(ball_volume(2.0) ==
          doctest::Approx(4.0 * M_PI * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-15));
    // Small radii behave like pi R^2.
    CHECK(ball_volume(1e-4) == doctest::Approx(M_PI * 1e-8).epsilon(1e-7));
    // vol(2r)/vol(r) = 4 cosh^2(r/2); uses sinh r = 2 sinh(r/2) cosh(r/2).
    for (double r : {0.25, 0.5, 1.0, 2.0}) {
        double ratio = ball_volume(2 * r) / ball_volume(r);
        double ch = std::cosh(0.5 * r);
        CHECK(ratio == doctest::Approx(4.0 * ch * ch).epsilon(1e-12));
    }
    CHECK(ball_volume(2.0) / ball_volume(1.0) ==
          doctest::Approx(5.0861612696304865).epsilon(1e-12));
}

TEST_CASE("isometry_to_origin sends p to i and preserves distances") {
    CHECK(isometry_to_origin(HPoint(0, 1)).apply(HPoint(0, 1)).y == doctest::Approx(1.0));
    CounterRng rng(17, "geom-orig");
    for (std::uint64_t i = 0; i < 1000; ++i) {
        HPoint p = random_point(rng, 2 * i);
        Mobius T = isometry_to_origin(p);
        HPoint img = T.apply(p);
        CHECK(std::abs(img.x) <= 1e-12);
        CHECK(std::abs(img.y - 1.0) <= 1e-12);
        // The closed form (1/sqrt(y)) [[1, -x], [0, y]].
        double s = 1.0 / std::sqrt(p.y);
        CHECK(T.a() == doctest::Approx(s).epsilon(1e-14));
        CHECK(T.b() == doctest::Approx(-p.x * s).epsilon(1e-13));
        CHECK(T.c() == 0.0);
        CHECK(T.d() == doctest::Approx(p.y * s).epsilon(1e-14));
        HPoint q = random_point(rng, 2 * i + 1);
        CHECK(std::abs(dist(T.apply(p), T.apply(q)) - dist(p, q)) <= 1e-12);
    }
}

TEST_CASE("HPoint validates its invariants") {
    CHECK_THROWS_AS(HPoint(0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(HPoint(0.0, -1.0), ValidationError);
    CHECK_THROWS_AS(HPoint(std::nan(""), 1.0), ValidationError);
}
