#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyplab/errors.hpp"
#include "hyplab/rng.hpp"
#include "hyplab/sensor.hpp"

using namespace hyplab;

TEST_CASE("primitive membership") {
    SensorSet r = SensorSet::chart_rect(0, 1, 2, 3);
    CHECK(r.contains(0.5, 2.5));
    CHECK(!r.contains(1.5, 2.5));

    SensorSet d = SensorSet::euclidean_disk(0, 2, 1);
    CHECK(d.contains(0.0, 2.0));
    CHECK(!d.contains(0.0, 3.5));

    SensorSet h = SensorSet::half_plane(0, 1, 2); // y <= 2
    CHECK(h.contains(10.0, 1.0));
    CHECK(!h.contains(0.0, 2.5));

    SensorSet s = SensorSet::theta_strip(0.0, 0.5);
    CHECK(s.contains(0.25, 7.0));
    CHECK(!s.contains(0.75, 7.0));
    CHECK(s.contains(1.25, 7.0));  // wraps
    CHECK(s.contains(-0.8, 7.0));  // frac = 0.2
}

TEST_CASE("boolean combinations and complement") {
    SensorSet ring = SensorSet::intersect(
        {SensorSet::euclidean_disk(0, 2, 1.0),
         SensorSet::complement(SensorSet::euclidean_disk(0, 2, 0.5))});
    CHECK(ring.contains(0.75, 2.0));
    CHECK(!ring.contains(0.0, 2.0));
    CHECK(!ring.contains(1.5, 2.0));

    SensorSet u = SensorSet::unite({SensorSet::chart_rect(0, 1, 1, 2),
                                    SensorSet::chart_rect(2, 3, 1, 2)});
    CHECK(u.contains(0.5, 1.5));
    CHECK(u.contains(2.5, 1.5));
    CHECK(!u.contains(1.5, 1.5));
}

TEST_CASE("cross-sections agree with membership on random samples") {
    SensorSet omega = SensorSet::unite(
        {SensorSet::intersect({SensorSet::euclidean_disk(0.3, 2.0, 0.9),
                               SensorSet::complement(SensorSet::chart_rect(0, 0.4, 1.5, 2.5))}),
         SensorSet::half_plane(1, -1, -1.0)}); // x - y <= -1
    CounterRng rng(5, "sensor-xsec");
    for (std::uint64_t i = 0; i < 5000; ++i) {
        double x = rng.uniform(2 * i, -2.0, 2.0);
        double y = rng.uniform(2 * i + 1, 0.5, 4.0);
        IntervalSet xs = omega.cross_section(y, -2.0, 2.0);
        bool in_section = false;
        for (const auto& iv : xs.parts())
            if (x >= iv.lo && x <= iv.hi) in_section = true;
        bool member = omega.contains(x, y);
        // Boundary points may differ; check on a small margin.
        if (member != in_section) {
            bool near_boundary = false;
            for (double eps : {-1e-9, 1e-9}) {
                if (omega.contains(x + eps, y) != member) near_boundary = true;
                for (const auto& iv : xs.parts())
                    if (std::abs(x - iv.lo) < 1e-9 || std::abs(x - iv.hi) < 1e-9)
                        near_boundary = true;
            }
            CHECK(near_boundary);
        }
    }
}

TEST_CASE("periodic wrap applies to non-strip primitives") {
    SensorSet d = SensorSet::euclidean_disk(0.0, 2.0, 0.3).with_periodic(true);
    CHECK(d.contains(1.0, 2.0));  // representative 0.0
    CHECK(d.contains(-2.0, 2.0));
    CHECK(!d.contains(0.5, 2.0));
    // Cross-section sees the wrapped disk in each period.
    IntervalSet xs = d.cross_section(2.0, -2.5, 2.5);
    CHECK(xs.measure() == doctest::Approx(5 * 0.6).epsilon(1e-9));
}

TEST_CASE("strip cross-section measure") {
    SensorSet s = SensorSet::theta_strip(0.25, 0.75);
    IntervalSet xs = s.cross_section(3.0, 0.0, 1.0);
    CHECK(xs.measure() == doctest::Approx(0.5));
    IntervalSet wide = s.cross_section(3.0, -1.0, 2.0);
    CHECK(wide.measure() == doctest::Approx(1.5));
}

TEST_CASE("serialization round-trips") {
    SensorSet omega =
        SensorSet::unite(
            {SensorSet::theta_strip(0.0, 0.5),
             SensorSet::complement(SensorSet::euclidean_disk(0.1, 2.0, 0.4)),
             SensorSet::intersect({SensorSet::chart_rect(-0.5, 0.5, 1.0, 10.0),
                                   SensorSet::half_plane(0.0, 1.0, 5.0)})})
            .with_periodic(true);
    std::string text = omega.serialize();
    SensorSet back = SensorSet::parse(text);
    CHECK(back.periodic() == omega.periodic());
    CHECK(back.serialize() == text);
    CounterRng rng(6, "sensor-roundtrip");
    for (std::uint64_t i = 0; i < 2000; ++i) {
        double x = rng.uniform(2 * i, -1.0, 1.0);
        double y = rng.uniform(2 * i + 1, 0.5, 12.0);
        CHECK(back.contains(x, y) == omega.contains(x, y));
    }
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(SensorSet::parse("blob { }"), ValidationError);
    CHECK_THROWS_AS(SensorSet::parse("rect { x0 = 0 }"), ValidationError);
    CHECK_THROWS_AS(SensorSet::parse("complement { }"), ValidationError);
    CHECK_THROWS_AS(SensorSet::parse("strip { lo = 0.5 hi = 0.2 }"), ValidationError);
    CHECK_THROWS_AS(SensorSet::parse("rect { x0 = 0 x1 = 1 y0 = 0 y1 = 1 } rect { }"),
                    ValidationError);
}

TEST_CASE("expression depth is capped at 32") {
    SensorSet s = SensorSet::all();
    for (int i = 0; i < 30; ++i) s = SensorSet::complement(std::move(s));
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 5; ++i) s = SensorSet::complement(std::move(s));
        }(),
        ValidationError);
}

TEST_CASE("boundary probes land on primitive boundaries") {
    SensorSet d = SensorSet::euclidean_disk(0.0, 2.0, 0.5);
    auto probes = d.boundary_probes(Rect{-1, 1, 1, 3});
    CHECK(!probes.empty());
    bool found_boundary = false;
    for (auto [x, y] : probes) {
        double rr = std::hypot(x - 0.0, y - 2.0);
        if (std::abs(rr - 0.5) < 1e-12) found_boundary = true;
    }
    CHECK(found_boundary);
}
