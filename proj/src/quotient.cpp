#include "hyplab/quotient.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

bool EndModel::in_domain(const HPoint& p) const {
    if (kind_ == Kind::cusp) return p.x >= -0.5 && p.x < 0.5 && p.y > cusp_floor();
    double r2 = p.x * p.x + p.y * p.y;
    double r = std::sqrt(r2);
    return p.x < 0.0 && r >= 1.0 && r < std::exp(l_);
}

std::pair<QuotientPoint, long> reduce(const HPoint& p, const EndModel& end) {
    if (end.kind() == EndModel::Kind::cusp) {
        if (!(p.y > end.cusp_floor()))
            throw OutOfRegion("reduce: point below the cusp horocycle");
        double k = std::floor(p.x + 0.5);
        return {QuotientPoint{HPoint(p.x - k, p.y)}, static_cast<long>(k)};
    }
    if (!(p.x < 0.0)) throw OutOfRegion("reduce: funnel lift requires x < 0");
    double r = std::hypot(p.x, p.y);
    double k = std::floor(std::log(r) / end.length());
    double s = std::exp(-end.length() * k);
    HPoint rep(p.x * s, p.y * s);
    // Guard against boundary roundoff: |rep| must land in [1, e^l).
    double rr = std::hypot(rep.x, rep.y);
    if (rr < 1.0) {
        k -= 1.0;
        double e = std::exp(end.length());
        rep = HPoint(rep.x * e, rep.y * e);
    } else if (rr >= std::exp(end.length())) {
        k += 1.0;
        double e = std::exp(-end.length());
        rep = HPoint(rep.x * e, rep.y * e);
    }
    return {QuotientPoint{rep}, static_cast<long>(k)};
}

double quotient_distance(const QuotientPoint& p, const QuotientPoint& q, const EndModel& end) {
    double best = dist(p.rep, q.rep); // k = 0 is always admissible
    if (end.kind() == EndModel::Kind::cusp) {
        // Omitted-translate bound: dist(p, q + k) >= acosh(1 + (|k| - |dx|)^2 / (2 y_p y_q)).
        double dx = q.rep.x - p.rep.x;
        double two_yy = 2.0 * p.rep.y * q.rep.y;
        for (long k = 1;; ++k) {
            double d1 = dist(p.rep, end.translate(q.rep, k));
            double d2 = dist(p.rep, end.translate(q.rep, -k));
            best = std::min({best, d1, d2});
            double gap = static_cast<double>(k + 1) - std::abs(dx);
            if (gap > 0.0 && std::acosh(1.0 + gap * gap / two_yy) > best) break;
            if (k > 1000000) break; // unreachable for sane inputs
        }
        return best;
    }
    // Funnel: dist(p, e^{kl} q) >= |k l + log(y_q / y_p)| (height comparison).
    double logratio = std::log(q.rep.y / p.rep.y);
    for (long k = 1;; ++k) {
        double d1 = dist(p.rep, end.translate(q.rep, k));
        double d2 = dist(p.rep, end.translate(q.rep, -k));
        best = std::min({best, d1, d2});
        double lb = end.length() * static_cast<double>(k + 1) - std::abs(logratio);
        if (lb > best) break;
        if (k > 1000000) break;
    }
    return best;
}

long copies_intersected(const QuotientPoint& z, double R, const EndModel& end) {
    if (end.kind() != EndModel::Kind::cusp)
        throw ValidationError("copies_intersected is defined for cusp ends");
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(z.rep, R));
    if (!(d.cy - d.r > end.cusp_floor()))
        throw OutOfRegion("copies_intersected: ball crosses the cusp horocycle");
    // Strips [n - 1/2, n + 1/2) meeting the open x-shadow (cx - r, cx + r):
    // n + 1/2 > lo and n - 1/2 < hi.
    double lo = d.cx - d.r, hi = d.cx + d.r;
    long n_min = static_cast<long>(std::floor(lo - 0.5)) + 1;
    long n_max = static_cast<long>(std::ceil(hi + 0.5)) - 1;
    return n_max - n_min + 1;
}

double cusp_inclusion_margin(double R) {
    if (!(R > 0.0)) throw ValidationError("cusp_inclusion_margin requires R > 0");
    return std::sqrt(std::cosh(0.5 * R) - 1.0) / (std::sqrt(2.0) * std::sinh(R));
}

GridFunction::GridFunction(EndModel end, int nx, std::vector<double> second_axis,
                           std::vector<double> values, bool cusp_chart)
    : end_(end), nx_(nx), axis2_(std::move(second_axis)), values_(std::move(values)),
      cusp_chart_(cusp_chart) {
    if (nx_ < 2 || axis2_.size() < 2)
        throw ValidationError("GridFunction requires at least a 2x2 grid");
    if (values_.size() != axis2_.size() * static_cast<std::size_t>(nx_))
        throw ValidationError("GridFunction: sample count does not match grid");
}

GridFunction GridFunction::cusp_samples(const EndModel& end, int nx, std::vector<double> ygrid,
                                        std::vector<double> values) {
    if (end.kind() != EndModel::Kind::cusp)
        throw ValidationError("cusp_samples requires a cusp end");
    return GridFunction(end, nx, std::move(ygrid), std::move(values), true);
}

GridFunction GridFunction::funnel_samples(const EndModel& end, int nu, std::vector<double> phigrid,
                                          std::vector<double> values) {
    if (end.kind() != EndModel::Kind::funnel)
        throw ValidationError("funnel_samples requires a funnel end");
    return GridFunction(end, nu, std::move(phigrid), std::move(values), false);
}

namespace {

// Piecewise-linear index lookup: returns i with grid[i] <= v < grid[i+1],
// clamped to the valid range.
int bracket(const std::vector<double>& grid, double v) {
    auto it = std::upper_bound(grid.begin(), grid.end(), v);
    int i = static_cast<int>(it - grid.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(grid.size()) - 2);
}

} // namespace

double GridFunction::value(double x, double s) const {
    // Wrap the periodic coordinate.
    double period = cusp_chart_ ? 1.0 : end_.length();
    double x0 = cusp_chart_ ? -0.5 : 0.0;
    double u = x - x0;
    u -= period * std::floor(u / period);
    double fx = u / period * nx_;
    int ix = std::min(static_cast<int>(fx), nx_ - 1);
    double tx = fx - ix;
    int ixn = (ix + 1) % nx_;

    int iy = bracket(axis2_, s);
    double ty = (s - axis2_[iy]) / (axis2_[iy + 1] - axis2_[iy]);
    ty = std::clamp(ty, 0.0, 1.0);

    double v00 = cell_value(ix, iy), v10 = cell_value(ixn, iy);
    double v01 = cell_value(ix, iy + 1), v11 = cell_value(ixn, iy + 1);
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
}

double GridFunction::lift_value(const HPoint& p) const {
    if (cusp_chart_) return value(p.x, p.y);
    double r = std::hypot(p.x, p.y);
    double u = std::log(r);
    double phi = std::atan2(p.y, p.x);
    return value(u, phi);
}

namespace {

// At fixed y the interpolant is piecewise linear in x with breakpoints at
// the grid lines; v^2 is piecewise quadratic, integrated exactly by Simpson
// on each piece. Interval width must be at most one period.
template <class ValueAt>
double simpson_cells(double lo, double hi, int nx, const ValueAt& value_at) {
    double h = 1.0 / nx;
    double total = 0.0;
    double a = lo;
    while (a < hi - 1e-15) {
        double cell = std::floor((a + 0.5) / h);
        double b = std::min(hi, -0.5 + (cell + 1.0) * h);
        if (b <= a) b = std::min(hi, a + h); // safety for roundoff
        double m = 0.5 * (a + b);
        double fa = value_at(a), fm = value_at(m), fb = value_at(b);
        total += (b - a) / 6.0 * (fa * fa + 4.0 * fm * fm + fb * fb);
        a = b;
    }
    return total;
}

} // namespace

double GridFunction::integral_sq_x(double y, double lo, double hi) const {
    if (!cusp_chart_)
        throw ValidationError("integral_sq_x is implemented for the cusp chart");
    if (hi <= lo) return 0.0;
    auto value_at = [&](double x) { return value(x, y); };
    // Wide intervals: integrate whole periods once (the interpolant is
    // 1-periodic in x) and keep only a sub-period remainder.
    double width = hi - lo;
    if (width > 1.0) {
        double nfull = std::floor(width);
        double period = simpson_cells(-0.5, 0.5, nx_, value_at);
        return nfull * period + simpson_cells(lo + nfull, hi, nx_, value_at);
    }
    return simpson_cells(lo, hi, nx_, value_at);
}

std::pair<double, double> ball_y_range(const HPoint& center, double R) {
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(center, R));
    return {d.cy - d.r, d.cy + d.r};
}

IntervalSet cusp_ball_cross_section(const QuotientPoint& z, double R, const EndModel& end,
                                    double y) {
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(z.rep, R));
    IntervalSet s;
    double dy = y - d.cy;
    double w2 = d.r * d.r - dy * dy;
    if (w2 <= 0.0) return s;
    double w = std::sqrt(w2);
    long kmax = static_cast<long>(std::ceil(d.cx + w + 1.0));
    long kmin = static_cast<long>(std::floor(d.cx - w - 1.0));
    for (long k = kmin; k <= kmax; ++k) {
        double lo = std::max(-0.5, d.cx - static_cast<double>(k) - w);
        double hi = std::min(0.5, d.cx - static_cast<double>(k) + w);
        if (hi > lo) s.add(lo, hi);
    }
    (void)end;
    s.normalize();
    return s;
}

LiftNormReport lift_norm_bounds(const GridFunction& v, const QuotientPoint& z, double R,
                                const QuadratureOptions& opts) {
    const EndModel& end = v.end();
    LiftNormReport rep;
    if (end.kind() == EndModel::Kind::cusp) {
        rep.copies = copies_intersected(z, R, end);
        rep.margin = cusp_inclusion_margin(R);

        EuclideanDisk d = ball_to_euclidean(GeodesicBall(z.rep, R));
        // || v_tilde ||^2 over the lifted ball: phi-substituted slices with
        // exact x-integration of the squared interpolant.
        auto lift_slice = [&](double phi) {
            double y = d.cy + d.r * std::sin(phi);
            double w = d.r * std::cos(phi);
            double inner = v.integral_sq_x(y, d.cx - w, d.cx + w);
            return inner * d.r * std::cos(phi) / (y * y);
        };
        rep.lift_sq = integrate_1d(-M_PI / 2, M_PI / 2, lift_slice, opts).value;

        auto quot_sq = [&](double radius) {
            EuclideanDisk dr = ball_to_euclidean(GeodesicBall(z.rep, radius));
            if (!(dr.cy - dr.r > end.cusp_floor()))
                throw OutOfRegion("lift_norm_bounds: ball crosses the cusp horocycle");
            auto slice = [&](double phi) {
                double y = dr.cy + dr.r * std::sin(phi);
                IntervalSet xs = cusp_ball_cross_section(z, radius, end, y);
                double inner = 0.0;
                for (const auto& iv : xs.parts()) inner += v.integral_sq_x(y, iv.lo, iv.hi);
                return inner * dr.r * std::cos(phi) / (y * y);
            };
            return integrate_1d(-M_PI / 2, M_PI / 2, slice, opts).value;
        };
        rep.quot_R_sq = quot_sq(R);
        rep.quot_halfR_sq = quot_sq(0.5 * R);

        double tol = 1e-6 * std::max({rep.lift_sq, rep.quot_R_sq, 1e-30});
        rep.upper_ok = rep.lift_sq <= static_cast<double>(rep.copies) * rep.quot_R_sq + tol;
        rep.ratio_hi = static_cast<double>(rep.copies) * rep.quot_R_sq /
                       std::max(rep.lift_sq, 1e-300);
        if (rep.copies >= 3) {
            double lhs = 2.0 * static_cast<double>(rep.copies - 2) * rep.margin * rep.quot_halfR_sq;
            rep.lower_ok = lhs <= rep.lift_sq + tol;
            rep.ratio_lo = rep.lift_sq / std::max(lhs, 1e-300);
        } else {
            rep.lower_ok = true;
            rep.ratio_lo = 1.0;
        }
        return rep;
    }

    // Funnel: verify the two-sided lift comparison around the representative.
    // Inner slices use fixed-order panels over sub-period pieces (test-grade
    // tolerances; the cusp carries the certified path).
    EuclideanDisk d = ball_to_euclidean(GeodesicBall(z.rep, R));
    auto sq_on_piece = [&](double y, double lo, double hi) {
        auto fx = [&](double x) {
            double vv = v.lift_value(HPoint(x, y));
            return vv * vv;
        };
        int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) * 8.0)));
        double acc = 0.0;
        for (int p = 0; p < pieces; ++p) {
            double a = lo + (hi - lo) * p / pieces;
            double b = lo + (hi - lo) * (p + 1) / pieces;
            acc += gauss_legendre_1d(a, b, fx);
        }
        return acc;
    };
    auto lift_slice = [&](double phi) {
        double y = d.cy + d.r * std::sin(phi);
        double w = d.r * std::cos(phi);
        return sq_on_piece(y, d.cx - w, d.cx + w) * d.r * std::cos(phi) / (y * y);
    };
    QuadratureOptions outer_opts = opts;
    outer_opts.rel_tol = std::max(opts.rel_tol, 1e-6);
    rep.lift_sq = integrate_1d(-M_PI / 2, M_PI / 2, lift_slice, outer_opts).value;

    // Quotient ball: union over k of dilated disks, clipped to D_F.
    double el = std::exp(end.length());
    auto region_slice = [&](const EuclideanDisk& dk, double y) {
        IntervalSet xs;
        for (long k = -3; k <= 3; ++k) {
            double s = std::exp(-end.length() * static_cast<double>(k));
            double cy = dk.cy * s, r = dk.r * s, cx = dk.cx * s;
            double dy = y - cy;
            double w2 = r * r - dy * dy;
            if (w2 <= 0.0) continue;
            double w = std::sqrt(w2);
            xs.add(cx - w, cx + w);
        }
        xs.normalize();
        // Clip to the fundamental annulus {x < 0, 1 <= |z| < e^l}.
        double out_lim = el * el - y * y;
        if (out_lim <= 0.0) return IntervalSet::empty();
        double xlo = -std::sqrt(out_lim);
        double xhi = (y * y >= 1.0) ? 0.0 : -std::sqrt(1.0 - y * y);
        return IntervalSet::intersect(xs, IntervalSet::single(xlo, xhi));
    };
    auto quot_slice_sq = [&](double radius) {
        EuclideanDisk dr = ball_to_euclidean(GeodesicBall(z.rep, radius));
        double ylo = std::max(1e-9, dr.cy - dr.r * std::cosh(3 * end.length()));
        double yhi = (dr.cy + dr.r) * std::exp(3 * end.length());
        auto slice = [&](double y) {
            IntervalSet xs = region_slice(dr, y);
            double inner = 0.0;
            for (const auto& iv : xs.parts()) inner += sq_on_piece(y, iv.lo, iv.hi);
            return inner / (y * y);
        };
        QuadratureOptions outer = opts;
        outer.rel_tol = std::max(opts.rel_tol, 1e-5);
        outer.max_depth = 18;
        return integrate_1d(ylo, yhi, slice, outer).value;
    };
    rep.quot_R_sq = quot_slice_sq(R);
    rep.quot_halfR_sq = quot_slice_sq(0.5 * R);
    rep.copies = 1;
    rep.margin = 0.0;
    double tol = 1e-5 * std::max(rep.lift_sq, rep.quot_R_sq);
    rep.upper_ok = rep.quot_R_sq <= rep.lift_sq + tol; // left half of the comparison
    rep.lower_ok = true;
    rep.ratio_hi = rep.lift_sq / std::max(rep.quot_R_sq, 1e-300);
    rep.ratio_lo = 1.0;
    return rep;
}

} // namespace hyplab
