#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyplab/quotient.hpp"
#include "hyplab/rng.hpp"

using namespace hyplab;

TEST_CASE("cusp reduction: integer translation recovered") {
    EndModel cusp = EndModel::cusp(1.0);
    auto [q, k] = reduce(HPoint(2.3, 5.0), cusp);
    CHECK(k == 2);
    CHECK(q.rep.x == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(q.rep.y == doctest::Approx(5.0));
    CHECK_THROWS_AS(reduce(HPoint(0.0, 0.5), cusp), OutOfRegion);
}

TEST_CASE("funnel reduction: dilation recovered") {
    EndModel funnel = EndModel::funnel(std::log(4.0));
    auto [q, k] = reduce(HPoint(0.0 - 1e-300, 8.0), funnel); // -8i, on the axis side
    // |z| = 8, e^l = 4: representative -2i with k = 1.
    CHECK(k == 1);
    CHECK(q.rep.y == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(reduce(HPoint(1.0, 1.0), funnel), OutOfRegion);
}

TEST_CASE("points already in the domain reduce trivially") {
    EndModel cusp = EndModel::cusp(2.0);
    auto [q, k] = reduce(HPoint(0.25, 3.0), cusp);
    CHECK(k == 0);
    CHECK(q.rep.x == 0.25);

    EndModel funnel = EndModel::funnel(0.9);
    auto [qf, kf] = reduce(HPoint(-1.2, 0.9), funnel);
    CHECK(kf == 0);
    CHECK(qf.rep.x == -1.2);
}

TEST_CASE("reduce then translate recovers the point") {
    CounterRng rng(21, "quot-roundtrip");
    EndModel cusp = EndModel::cusp(1.0);
    EndModel funnel = EndModel::funnel(0.8);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        HPoint p(rng.uniform(4 * i, -50.0, 50.0), std::exp(rng.uniform(4 * i + 1, 0.1, 4.0)));
        auto [q, k] = reduce(p, cusp);
        HPoint back = cusp.translate(q.rep, k);
        CHECK(std::abs(back.x - p.x) <= 1e-12 * (1 + std::abs(p.x)));
        CHECK(back.y == p.y);

        double r = std::exp(rng.uniform(4 * i + 2, -4.0, 4.0));
        double phi = rng.uniform(4 * i + 3, M_PI / 2 + 0.01, M_PI - 0.01);
        HPoint pf(r * std::cos(phi), r * std::sin(phi));
        auto [qf, kf] = reduce(pf, funnel);
        CHECK(funnel.in_domain(qf.rep));
        HPoint backf = funnel.translate(qf.rep, kf);
        CHECK(std::abs(backf.x - pf.x) <= 1e-11 * (1 + std::abs(pf.x)));
        CHECK(std::abs(backf.y - pf.y) <= 1e-11 * pf.y);
    }
}

TEST_CASE("quotient distance of a point to itself is zero") {
    EndModel cusp = EndModel::cusp(1.0);
    QuotientPoint p{HPoint(0.2, 4.0)};
    CHECK(quotient_distance(p, p, cusp) == 0.0);
}

TEST_CASE("high cusp points are close through the wrap") {
    // p = iy, q = 1/2 + iy: distance through k = -1/0/+1 translates only.
    EndModel cusp = EndModel::cusp(1.0);
    for (double y : {10.0, 100.0, 1000.0}) {
        QuotientPoint p{HPoint(0.0, y)}, q{HPoint(0.5, y)};
        double expected = std::acosh(1.0 + 0.25 / (2 * y * y)); // k = 0 translate wins
        double d = quotient_distance(p, q, cusp);
        CHECK(d == doctest::Approx(expected).epsilon(1e-12));
        CHECK(d <= 0.5 / y * 1.01); // ~ 1/(2y), not the ambient distance
        CHECK(d <= dist(p.rep, q.rep));
    }
}

TEST_CASE("quotient distance is a pseudometric on sampled triples") {
    CounterRng rng(22, "quot-metric");
    EndModel cusp = EndModel::cusp(1.0);
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto pt = [&](std::uint64_t j) {
            return QuotientPoint{HPoint(rng.uniform(6 * i + j, -0.5, 0.5),
                                        std::exp(rng.uniform(6 * i + 3 + j, 0.1, 3.0)))};
        };
        QuotientPoint a = pt(0), b = pt(1), c = pt(2);
        double ab = quotient_distance(a, b, cusp);
        double ba = quotient_distance(b, a, cusp);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-10));
        double ac = quotient_distance(a, c, cusp);
        double bc = quotient_distance(b, c, cusp);
        CHECK(ac <= ab + bc + 1e-10);
    }
}

TEST_CASE("funnel quotient distance wraps around the dilation") {
    EndModel funnel = EndModel::funnel(0.5);
    // Points near the two domain edges |z| = 1 and |z| = e^l are close on the quotient.
    QuotientPoint p{HPoint(-1.0 + 1e-9, 1e-4)}; // |z| near 1... keep simple: use axis points
    QuotientPoint a{HPoint(-0.0001, 1.0001)};
    QuotientPoint b{HPoint(-0.0001 * std::exp(0.5), 1.0001 * std::exp(0.5) * 0.99999)};
    double d = quotient_distance(a, b, funnel);
    CHECK(d < 0.1); // one generator step apart, tiny quotient distance
    (void)p;
}

TEST_CASE("copies_intersected small ball inside one copy") {
    EndModel cusp = EndModel::cusp(1.0);
    // Euclidean radius = y sinh R < 1/4 with the ball near x = 0.
    QuotientPoint z{HPoint(0.0, 2.0)};
    double R = std::asinh(0.24 / 2.0);
    CHECK(copies_intersected(z, R, cusp) == 1);
}

TEST_CASE("copies_intersected grows like 2 y sinh R and obeys the N-2 bound") {
    EndModel cusp = EndModel::cusp(1.0);
    CounterRng rng(23, "quot-copies");
    for (std::uint64_t i = 0; i < 2000; ++i) {
        double R = rng.uniform(3 * i, 0.1, 2.0);
        double y = std::exp(rng.uniform(3 * i + 1, 1.0, 7.0));
        if (y * std::exp(-R) <= 1.0) continue;
        double x = rng.uniform(3 * i + 2, -0.5, 0.5);
        QuotientPoint z{HPoint(x, y)};
        long N = copies_intersected(z, R, cusp);
        double w = y * std::sinh(R);
        CHECK(static_cast<double>(N - 2) <= 2.0 * w);
        // Direct interval count oracle.
        long count = 0;
        for (long n = static_cast<long>(std::floor(x - w)) - 2;
             n <= static_cast<long>(std::ceil(x + w)) + 2; ++n) {
            if (n + 0.5 > x - w && n - 0.5 < x + w) ++count;
        }
        CHECK(N == count);
    }
    // Large-height asymptotic: N = 2 y sinh R + O(1).
    for (double y : {100.0, 1000.0, 10000.0}) {
        QuotientPoint z{HPoint(0.13, y)};
        long N = copies_intersected(z, 1.0, cusp);
        CHECK(std::abs(static_cast<double>(N) - 2.0 * y * std::sinh(1.0)) <= 2.0);
    }
    CHECK_THROWS_AS(copies_intersected(QuotientPoint{HPoint(0.0, 1.05)}, 1.0, cusp),
                    OutOfRegion);
}

TEST_CASE("copies_intersected is monotone in R and in the height") {
    EndModel cusp = EndModel::cusp(1.0);
    long prev = 0;
    for (double R = 0.2; R <= 2.0; R += 0.1) {
        long N = copies_intersected(QuotientPoint{HPoint(0.1, 40.0)}, R, cusp);
        CHECK(N >= prev);
        prev = N;
    }
    prev = 0;
    for (double y = 10.0; y <= 200.0; y *= 1.4) {
        long N = copies_intersected(QuotientPoint{HPoint(0.1, y)}, 1.0, cusp);
        CHECK(N >= prev);
        prev = N;
    }
}

TEST_CASE("cusp inclusion margin formula and small-R limit") {
    double c1 = cusp_inclusion_margin(1.0);
    CHECK(c1 == doctest::Approx(std::sqrt(std::cosh(0.5) - 1.0) /
                                (std::sqrt(2.0) * std::sinh(1.0)))
                    .epsilon(1e-15));
    CHECK(c1 == doctest::Approx(0.21495239978860503).epsilon(1e-12));
    // Taylor: cosh(R/2) - 1 ~ R^2/8, sinh R ~ R gives c -> 1/4.
    CHECK(cusp_inclusion_margin(1e-5) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("certified margin property: |k| < (N-2) c(R) puts the translate in the half ball") {
    EndModel cusp = EndModel::cusp(1.0);
    CounterRng rng(24, "quot-margin");
    int checked = 0;
    for (std::uint64_t i = 0; i < 4000 && checked < 1000; ++i) {
        double R = rng.uniform(3 * i, 0.2, 2.5);
        double y = std::exp(rng.uniform(3 * i + 1, 1.2, 6.0));
        if (y * std::exp(-R) <= 1.0) continue;
        QuotientPoint z{HPoint(rng.uniform(3 * i + 2, -0.5, 0.5), y)};
        long N = copies_intersected(z, R, cusp);
        if (N < 3) continue;
        double bound = (N - 2) * cusp_inclusion_margin(R);
        for (long k = 1; k < static_cast<long>(std::ceil(bound)); ++k) {
            if (static_cast<double>(k) >= bound) break;
            double d = dist(z.rep, HPoint(z.rep.x + k, z.rep.y));
            CHECK(d < 0.5 * R);
        }
        ++checked;
    }
    CHECK(checked == 1000);
}

namespace {

GridFunction random_periodic_cusp_function(const EndModel& end, std::uint64_t seed,
                                           double ylo, double yhi) {
    int nx = 48, ny = 64;
    CounterRng rng(seed, "gridfun");
    double a1 = rng.uniform(0, 0.5, 2.0), a2 = rng.uniform(1, 0.5, 2.0);
    double c1 = rng.uniform(2, -1.0, 1.0), s1 = rng.uniform(3, -1.0, 1.0);
    double c2 = rng.uniform(4, -1.0, 1.0);
    std::vector<double> ygrid(ny), values(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) ygrid[j] = ylo + (yhi - ylo) * j / (ny - 1);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double x = -0.5 + static_cast<double>(i) / nx;
            double th = 2.0 * M_PI * x;
            double v = 1.0 + c1 * std::cos(th) + s1 * std::sin(th) + c2 * std::cos(2 * th);
            v *= 1.0 + 0.5 * std::sin(a1 * std::log(ygrid[j])) +
                 0.3 * std::cos(a2 * std::log(ygrid[j]));
            values[static_cast<std::size_t>(j) * nx + i] = v;
        }
    }
    return GridFunction::cusp_samples(end, nx, std::move(ygrid), std::move(values));
}

} // namespace

TEST_CASE("grid function wraps periodically and interpolates") {
    EndModel cusp = EndModel::cusp(1.0);
    GridFunction g = random_periodic_cusp_function(cusp, 7, 1.0, 100.0);
    CHECK(g.lift_value(HPoint(0.2, 5.0)) ==
          doctest::Approx(g.lift_value(HPoint(3.2, 5.0))).epsilon(1e-12));
    CHECK(g.lift_value(HPoint(-0.3, 12.0)) ==
          doctest::Approx(g.lift_value(HPoint(0.7, 12.0))).epsilon(1e-12));
}

TEST_CASE("exact slice integration of the squared interpolant") {
    EndModel cusp = EndModel::cusp(1.0);
    GridFunction g = random_periodic_cusp_function(cusp, 8, 1.0, 50.0);
    double y = 7.3;
    // Oracle: fine midpoint rule.
    int n = 200000;
    double lo = -0.37, hi = 0.81, h = (hi - lo) / n, acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = g.lift_value(HPoint(lo + (i + 0.5) * h, y));
        acc += v * v * h;
    }
    CHECK(g.integral_sq_x(y, lo, hi) == doctest::Approx(acc).epsilon(1e-6));
}

TEST_CASE("constant lift over a ball integrates to the ball volume") {
    EndModel cusp = EndModel::cusp(1.0);
    int nx = 8, ny = 8;
    std::vector<double> ygrid(ny), values(static_cast<std::size_t>(nx) * ny, 1.0);
    for (int j = 0; j < ny; ++j) ygrid[j] = 1.0 + 40.0 * j / (ny - 1);
    GridFunction one = GridFunction::cusp_samples(cusp, nx, std::move(ygrid), std::move(values));
    QuotientPoint z{HPoint(0.0, 12.0)};
    double R = 1.0;
    LiftNormReport rep = lift_norm_bounds(one, z, R);
    CHECK(rep.lift_sq == doctest::Approx(ball_volume(R)).epsilon(1e-7));
    CHECK(rep.upper_ok);
    CHECK(rep.lower_ok);
}

TEST_CASE("no wrapping: both norms coincide") {
    EndModel cusp = EndModel::cusp(1.0);
    GridFunction g = random_periodic_cusp_function(cusp, 9, 1.0, 20.0);
    QuotientPoint z{HPoint(0.0, 2.0)};
    double R = std::asinh(0.2 / 2.0); // Euclidean radius 0.2, single copy
    LiftNormReport rep = lift_norm_bounds(g, z, R);
    CHECK(rep.copies == 1);
    CHECK(rep.lift_sq == doctest::Approx(rep.quot_R_sq).epsilon(1e-7));
}

TEST_CASE("cusp lift bounds hold on randomized wrapped trials") {
    EndModel cusp = EndModel::cusp(1.0);
    CounterRng rng(25, "quot-lift");
    int done = 0;
    for (std::uint64_t i = 0; i < 200 && done < 60; ++i) {
        double R = rng.uniform(2 * i, 0.4, 1.6);
        double y = std::exp(rng.uniform(2 * i + 1, 1.5, 4.5));
        if (y * std::exp(-R) <= 1.05) continue;
        GridFunction g = random_periodic_cusp_function(cusp, 1000 + i, 1.0,
                                                       y * std::exp(R) * 1.25 + 5.0);
        QuotientPoint z{HPoint(rng.uniform(5000 + i, -0.5, 0.5), y)};
        LiftNormReport rep = lift_norm_bounds(g, z, R);
        CHECK(rep.upper_ok);
        CHECK(rep.lower_ok);
        if (rep.copies >= 3) {
            CHECK(rep.ratio_lo >= 1.0 - 1e-6);
            CHECK(rep.ratio_hi >= 1.0 - 1e-6);
        }
        ++done;
    }
    CHECK(done == 60);
}

TEST_CASE("funnel lift comparison: quotient norm below lift norm") {
    EndModel funnel = EndModel::funnel(0.6);
    int nu = 32, nphi = 48;
    std::vector<double> phigrid(nphi), values(static_cast<std::size_t>(nu) * nphi);
    for (int j = 0; j < nphi; ++j)
        phigrid[j] = M_PI / 2 - 0.3 + (M_PI - 0.35 - (M_PI / 2 - 0.3)) * j / (nphi - 1);
    CounterRng rng(31, "funnel-g");
    for (int j = 0; j < nphi; ++j)
        for (int i = 0; i < nu; ++i)
            values[static_cast<std::size_t>(j) * nu + i] =
                1.0 + 0.5 * std::cos(2 * M_PI * i / static_cast<double>(nu)) +
                0.2 * std::sin(3.0 * phigrid[j]);
    GridFunction g = GridFunction::funnel_samples(funnel, nu, std::move(phigrid),
                                                  std::move(values));
    QuotientPoint z{HPoint(-0.6, 1.0)};
    LiftNormReport rep = lift_norm_bounds(g, z, 0.4);
    CHECK(rep.upper_ok); // quotient ball norm <= lifted ball norm
    CHECK(rep.ratio_hi >= 1.0 - 1e-9);
}
