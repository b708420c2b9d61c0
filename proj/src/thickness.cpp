#include "hyplab/thickness.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "hyplab/csvio.hpp"
#include "hyplab/rng.hpp"

namespace hyplab {

namespace {

// x cross-section of the ball region at height y. For quotient balls the
// region is the fundamental-domain trace of the union of translated disks.
IntervalSet ball_cross_section(const BallSpec& ball, double y) {
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(ball.center, ball.radius));
    if (ball.end == nullptr) {
        double dy = y - d.cy;
        double w2 = d.r * d.r - dy * dy;
        if (w2 <= 0.0) return IntervalSet::empty();
        double w = std::sqrt(w2);
        return IntervalSet::single(d.cx - w, d.cx + w);
    }
    if (ball.end->kind() == EndModel::Kind::cusp)
        return cusp_ball_cross_section(QuotientPoint{ball.center}, ball.radius, *ball.end, y);
    // Funnel: dilated disk translates clipped to the fundamental annulus.
    IntervalSet xs;
    double l = ball.end->length();
    for (long k = -4; k <= 4; ++k) {
        double s = std::exp(-l * static_cast<double>(k));
        double cy = d.cy * s, r = d.r * s, cx = d.cx * s;
        double dy = y - cy;
        double w2 = r * r - dy * dy;
        if (w2 <= 0.0) continue;
        double w = std::sqrt(w2);
        xs.add(cx - w, cx + w);
    }
    xs.normalize();
    double el = std::exp(l);
    double out_lim = el * el - y * y;
    if (out_lim <= 0.0) return IntervalSet::empty();
    double xlo = -std::sqrt(out_lim);
    double xhi = (y * y >= 1.0) ? 0.0 : -std::sqrt(1.0 - y * y);
    return IntervalSet::intersect(xs, IntervalSet::single(xlo, xhi));
}

// y-range that can carry mass for the ball region, clipped to the chart.
std::pair<double, double> ball_span(const BallSpec& ball) {
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(ball.center, ball.radius));
    double ylo = d.cy - d.r, yhi = d.cy + d.r;
    if (ball.end != nullptr && ball.end->kind() == EndModel::Kind::cusp) {
        double a = ball.end->cusp_floor();
        if (!(ylo > a))
            throw OutOfRegion("ball crosses the cusp horocycle boundary");
    }
    if (ball.end != nullptr && ball.end->kind() == EndModel::Kind::funnel) {
        double l = ball.end->length();
        ylo *= std::exp(-4.0 * l);
        yhi *= std::exp(4.0 * l);
        ylo = std::max(ylo, 1e-12);
        yhi = std::min(yhi, std::exp(l) * 1.0000001);
    }
    return {ylo, yhi};
}

double slice_measure(const SensorSet* omega, const BallSpec& ball, const MeasureOptions& opts) {
    auto [ylo, yhi] = ball_span(ball);
    if (yhi <= ylo) return 0.0;
    auto integrand = [&](double y) {
        IntervalSet xs = ball_cross_section(ball, y);
        if (xs.is_empty()) return 0.0;
        double len;
        if (omega == nullptr) {
            len = xs.measure();
        } else {
            double lo = xs.parts().front().lo, hi = xs.parts().back().hi;
            IntervalSet cut = IntervalSet::intersect(xs, omega->cross_section(y, lo, hi));
            len = cut.measure();
        }
        return len / (y * y);
    };
    QuadratureOptions q;
    q.rel_tol = opts.rel_tol * 0.1;
    q.abs_tol = 1e-14;
    QuadratureResult res = integrate_1d(ylo, yhi, integrand, q);
    return res.value;
}

} // namespace

double measure_intersection(const SensorSet& omega, const BallSpec& ball,
                            const MeasureOptions& opts) {
    return slice_measure(&omega, ball, opts);
}

double ball_measure(const BallSpec& ball, const MeasureOptions& opts) {
    if (ball.end == nullptr) return ball_volume(ball.radius);
    return slice_measure(nullptr, ball, opts);
}

double measure_intersection_mc(const SensorSet& omega, const BallSpec& ball,
                               std::uint64_t seed, long samples) {
    auto [ylo, yhi] = ball_span(ball);
    if (yhi <= ylo || samples <= 0) return 0.0;
    // Bounding box in x: fundamental strip for quotient balls, the disk
    // shadow for ambient balls.
    double xlo, xhi;
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(ball.center, ball.radius));
    if (ball.end == nullptr) {
        xlo = d.cx - d.r;
        xhi = d.cx + d.r;
    } else if (ball.end->kind() == EndModel::Kind::cusp) {
        xlo = -0.5;
        xhi = 0.5;
    } else {
        xlo = -std::exp(ball.end->length());
        xhi = 0.0;
    }
    double box_vol = (xhi - xlo) * (1.0 / ylo - 1.0 / yhi);
    CounterRng rng(seed, "measure-mc");
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        double u = rng.uniform(2 * static_cast<std::uint64_t>(i));
        double v = rng.uniform(2 * static_cast<std::uint64_t>(i) + 1);
        double x = xlo + u * (xhi - xlo);
        double y = 1.0 / (1.0 / ylo - v * (1.0 / ylo - 1.0 / yhi));
        IntervalSet xs = ball_cross_section(ball, y);
        bool in_ball = false;
        for (const auto& iv : xs.parts())
            if (x >= iv.lo && x <= iv.hi) {
                in_ball = true;
                break;
            }
        if (in_ball && omega.contains(x, y)) ++hits;
    }
    return box_vol * static_cast<double>(hits) / static_cast<double>(samples);
}

ThicknessReport thickness_profile(const SensorSet& omega, const Region& region, double R,
                                  long center_samples, std::uint64_t seed,
                                  const ProfileOptions& opts) {
    if (!(R > 0.0)) throw ValidationError("thickness_profile requires R > 0");
    ThicknessReport rep;
    rep.R = R;

    const EndModel* end = region_end(region);

    // Stratified centers in (x, log y), jittered by the seed.
    std::vector<HPoint> centers;
    CounterRng rng(seed, "thickness-centers");
    long budget = center_samples > 0
                      ? center_samples
                      : static_cast<long>(opts.strata_x) * opts.strata_y;
    int nx = opts.strata_x, ny = opts.strata_y;
    if (center_samples > 0) {
        nx = std::max(1, static_cast<int>(std::lround(std::sqrt(double(budget)))));
        ny = std::max(1, static_cast<int>(budget / nx));
    }

    if (const auto* c = std::get_if<CuspRegion>(&region)) {
        double a = c->end.cusp_floor();
        double ylo = a * std::exp(R) * 1.0001; // keep the ball above the horocycle
        double yhi = std::max(opts.y_max, ylo * 1.01);
        rep.y_max = yhi;
        rep.unverified_above_ymax = !omega.periodic();
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                std::uint64_t id = static_cast<std::uint64_t>(i) * ny + j;
                double u = (i + rng.uniform(2 * id)) / nx;
                double v = (j + rng.uniform(2 * id + 1)) / ny;
                double x = -0.5 + u;
                double y = ylo * std::pow(yhi / ylo, v);
                centers.emplace_back(x, y);
            }
        }
    } else if (const auto* ar = std::get_if<AmbientRect>(&region)) {
        const Rect& q = ar->rect;
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                std::uint64_t id = static_cast<std::uint64_t>(i) * ny + j;
                double u = (i + rng.uniform(2 * id)) / nx;
                double v = (j + rng.uniform(2 * id + 1)) / ny;
                double x = q.x0 + u * (q.x1 - q.x0);
                double y = q.y0 * std::pow(q.y1 / q.y0, v);
                centers.emplace_back(x, y);
            }
        }
    } else {
        const auto& f = std::get<FunnelRegion>(region);
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                std::uint64_t id = static_cast<std::uint64_t>(i) * ny + j;
                double u = (i + rng.uniform(2 * id)) / nx;
                double v = (j + rng.uniform(2 * id + 1)) / ny;
                centers.push_back(region_sample(Region(f), u, v));
            }
        }
    }

    // Adversarial centers at primitive boundaries, clipped to the sampled window.
    {
        double wy0 = 1e-3, wy1 = 1e6, wx0 = -1e6, wx1 = 1e6;
        if (const auto* c = std::get_if<CuspRegion>(&region)) {
            wy0 = c->end.cusp_floor() * std::exp(R) * 1.0001;
            wy1 = rep.y_max;
            wx0 = -0.5;
            wx1 = 0.5;
        } else if (const auto* ar = std::get_if<AmbientRect>(&region)) {
            wy0 = ar->rect.y0;
            wy1 = ar->rect.y1;
            wx0 = ar->rect.x0;
            wx1 = ar->rect.x1;
        }
        for (auto [bx, by] : omega.boundary_probes(Rect{wx0, wx1, wy0, wy1}))
            centers.emplace_back(bx, by);
    }

    rep.rows.resize(centers.size());
    for_each_index(opts.measure.exec, centers.size(), [&](std::size_t i) {
        MeasureOptions m = opts.measure;
        m.exec = Exec::serial;
        BallSpec ball = end != nullptr ? BallSpec(centers[i], R, *end)
                                       : BallSpec(centers[i], R);
        double vb = ball_measure(ball, m);
        double vc = measure_intersection(omega, ball, m);
        rep.rows[i] = CenterRow{centers[i].x, centers[i].y, vb, vc,
                                vb > 0.0 ? vc / vb : 0.0};
    });

    rep.delta_min = 1.0;
    rep.abs_min = rep.rows.empty() ? 0.0 : rep.rows.front().vol_cap;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].ratio < rep.delta_min) {
            rep.delta_min = rep.rows[i].ratio;
            rep.argmin = i;
        }
        rep.abs_min = std::min(rep.abs_min, rep.rows[i].vol_cap);
    }
    if (rep.rows.empty()) rep.delta_min = 0.0;
    return rep;
}

void write_thickness_csv(const ThicknessReport& report, const std::string& path,
                         std::uint64_t config_hash) {
    CsvWriter w(path, {"center_x", "center_y", "vol_ball", "vol_cap", "ratio"}, config_hash);
    for (const CenterRow& r : report.rows) w.row({r.x, r.y, r.vol_ball, r.vol_cap, r.ratio});
}

std::string thickness_json(const ThicknessReport& report) {
    nlohmann::json j;
    j["R"] = report.R;
    j["delta_min"] = report.delta_min;
    j["absolute_mass_min"] = report.abs_min;
    j["centers"] = report.rows.size();
    if (!report.rows.empty()) {
        j["argmin"] = {{"x", report.rows[report.argmin].x},
                       {"y", report.rows[report.argmin].y},
                       {"ratio", report.rows[report.argmin].ratio}};
    }
    j["certified_on_samples"] = true;
    if (report.y_max > 0.0) {
        j["y_max"] = report.y_max;
        j["unverified_above_y_max"] = report.unverified_above_ymax;
    }
    return j.dump(2);
}

} // namespace hyplab
