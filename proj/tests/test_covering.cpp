#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyplab/covering.hpp"

using namespace hyplab;

TEST_CASE("region samples are inside their regions") {
    Region rect = AmbientRect{Rect{0.0, 2.0, 1.0, 5.0}};
    Region cusp = CuspRegion(EndModel::cusp(1.0), 100.0);
    Region funnel = FunnelRegion(EndModel::funnel(0.8), 2.5);
    R2Sequence seq(5);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        double u, v;
        seq.point(i, u, v);
        HPoint p = region_sample(rect, u, v);
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 2.0);
        CHECK(p.y >= 1.0);
        CHECK(p.y <= 5.0);
        HPoint c = region_sample(cusp, u, v);
        CHECK(c.x >= -0.5);
        CHECK(c.x < 0.5);
        CHECK(c.y > 1.0);
        HPoint f = region_sample(funnel, u, v);
        CHECK(std::get<FunnelRegion>(funnel).end.in_domain(f));
    }
}

TEST_CASE("small region yields a single center") {
    // Ball of radius R/4 around i: any two points are closer than R.
    double R = 1.0;
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(HPoint(0, 1), R / 4));
    double half = d.r / std::sqrt(2.0);
    Region region = AmbientRect{Rect{d.cx - half, d.cx + half, d.cy - half, d.cy + half}};
    SeparatedSet s = build_maximal_separated(region, R, 500, 42);
    CHECK(s.centers.size() == 1);
}

TEST_CASE("vertical segment gives about ten centers at R = 1") {
    // {iy : y in [1, e^10]} as a thin box; greedy 1-d packing on the log scale.
    Region region = AmbientRect{Rect{0.0, 1e-9, 1.0, std::exp(10.0)}};
    SeparatedSet s = build_maximal_separated(region, 1.0, 4000, 7);
    CHECK(s.centers.size() >= 9);
    CHECK(s.centers.size() <= 11);
}

TEST_CASE("same seed reproduces identical centers") {
    Region region = AmbientRect{Rect{0.0, 4.0, 0.5, 8.0}};
    SeparatedSet a = build_maximal_separated(region, 0.7, 3000, 99);
    SeparatedSet b = build_maximal_separated(region, 0.7, 3000, 99);
    REQUIRE(a.centers.size() == b.centers.size());
    for (std::size_t i = 0; i < a.centers.size(); ++i) {
        CHECK(a.centers[i].x == b.centers[i].x);
        CHECK(a.centers[i].y == b.centers[i].y);
    }
    SeparatedSet c = build_maximal_separated(region, 0.7, 3000, 100);
    bool same = a.centers.size() == c.centers.size();
    if (same)
        for (std::size_t i = 0; i < a.centers.size(); ++i)
            same = same && a.centers[i].x == c.centers[i].x;
    CHECK(!same);
}

TEST_CASE("pairwise separation invariant") {
    Region region = AmbientRect{Rect{-2.0, 2.0, 0.5, 6.0}};
    double R = 0.8;
    SeparatedSet s = build_maximal_separated(region, R, 5000, 3);
    for (std::size_t i = 0; i < s.centers.size(); ++i)
        for (std::size_t j = i + 1; j < s.centers.size(); ++j)
            CHECK(region_distance(region, s.centers[i], s.centers[j]) >= R - 1e-12);
}

TEST_CASE("probes at the centers are always covered") {
    Region region = AmbientRect{Rect{-1.0, 1.0, 1.0, 4.0}};
    SeparatedSet s = build_maximal_separated(region, 0.5, 3000, 17);
    CoverReport rep;
    rep.probes = static_cast<long>(s.centers.size());
    long covered = 0;
    for (const HPoint& c : s.centers) {
        bool hit = false;
        for (const HPoint& other : s.centers)
            if (region_distance(region, c, other) < s.R) hit = true;
        if (hit) ++covered;
    }
    CHECK(covered == rep.probes);
}

TEST_CASE("saturated set covers fresh probes") {
    Region region = AmbientRect{Rect{-1.0, 1.0, 1.0, 4.0}};
    SeparatedSet s = build_maximal_separated(region, 0.5, 20000, 17);
    CoverReport rep = verify_covering(s, 10000, 23);
    CHECK(rep.coverage == 1.0);
    CHECK(rep.violators.empty());
}

TEST_CASE("removing a center can break the cover") {
    Region region = AmbientRect{Rect{-1.0, 1.0, 1.0, 4.0}};
    SeparatedSet s = build_maximal_separated(region, 0.6, 20000, 31);
    REQUIRE(s.centers.size() >= 2);
    SeparatedSet broken = s;
    broken.centers.pop_back();
    CoverReport rep = verify_covering(broken, 20000, 57);
    CHECK(rep.coverage < 1.0);
}

TEST_CASE("intersection number basics") {
    Region region = AmbientRect{Rect{-1.0, 1.0, 1.0, 4.0}};
    SeparatedSet one{region, 1.0, {HPoint(0, 2)}};
    CHECK(intersection_number(one, 2.0) == 1);

    SeparatedSet s = build_maximal_separated(region, 0.5, 20000, 41);
    long n1 = intersection_number(s, 0.6);
    long n2 = intersection_number(s, 1.0);
    long n3 = intersection_number(s, 1.5);
    CHECK(n1 <= n2);
    CHECK(n2 <= n3);
}

TEST_CASE("intersection number at 2R respects the 25 e^{2R} bound") {
    for (double R : {0.5, 1.0}) {
        Region region = AmbientRect{Rect{-3.0, 3.0, 0.3, 8.0}};
        SeparatedSet s = build_maximal_separated(region, R, 30000, 13);
        long n = intersection_number(s, 2.0 * R);
        CHECK(static_cast<double>(n) <= 25.0 * std::exp(2.0 * R));
    }
}

TEST_CASE("cusp covering wraps around the period") {
    Region region = CuspRegion(EndModel::cusp(1.0), 50.0);
    SeparatedSet s = build_maximal_separated(region, 0.8, 20000, 11);
    CoverReport rep = verify_covering(s, 5000, 19);
    CHECK(rep.coverage == 1.0);
    for (std::size_t i = 0; i < s.centers.size(); ++i)
        for (std::size_t j = i + 1; j < s.centers.size(); ++j)
            CHECK(region_distance(region, s.centers[i], s.centers[j]) >= s.R - 1e-12);
}

TEST_CASE("funnel covering stays locally finite as the region grows") {
    // Intersection number at 2R stays bounded while the domain deepens.
    double R = 0.7;
    long prev = 0;
    for (double depth : {1.0, 2.0, 3.0}) {
        Region region = FunnelRegion(EndModel::funnel(0.9), depth);
        SeparatedSet s = build_maximal_separated(region, R, 30000, 5);
        long n = intersection_number(s, 2.0 * R);
        CHECK(static_cast<double>(n) <= 25.0 * std::exp(2.0 * R));
        prev = std::max(prev, n);
    }
    CHECK(prev > 0);
}

TEST_CASE("degenerate input errors") {
    Region region = AmbientRect{Rect{0.0, 0.0, 1.0, 1.0}};
    CHECK_THROWS_AS(build_maximal_separated(region, 1.0, 100, 1), EmptyRegion);
    Region ok = AmbientRect{Rect{0.0, 1.0, 1.0, 2.0}};
    CHECK_THROWS_AS(build_maximal_separated(ok, 1.0, 0, 1), EmptyRegion);
    CHECK_THROWS_AS(build_maximal_separated(ok, -1.0, 10, 1), ValidationError);
}
