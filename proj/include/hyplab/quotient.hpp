#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hyplab/geom.hpp"
#include "hyplab/interval.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

// Elementary hyperbolic end: either a funnel (half of H / <z -> e^l z>) or a
// cusp (upper end of H / <z -> z + 1>).
//
// Fundamental domains:
//   funnel: D_F = { x + iy : x < 0 < y, 1 <= |z| < e^l }, generator z -> e^l z
//   cusp:   D_C = [-1/2, 1/2) x (1/l, +inf),              generator z -> z + 1
class EndModel {
public:
    enum class Kind { funnel, cusp };

    static EndModel funnel(double l) { return EndModel(Kind::funnel, l); }
    static EndModel cusp(double l) { return EndModel(Kind::cusp, l); }

    Kind kind() const { return kind_; }
    double length() const { return l_; }

    // Lower height of the cusp fundamental domain, a = 1/l.
    double cusp_floor() const { return 1.0 / l_; }

    Mobius generator() const {
        return kind_ == Kind::cusp ? Mobius::translation(1.0)
                                   : Mobius::dilation(std::exp(l_));
    }

    // generator^k applied to p, in closed form.
    HPoint translate(const HPoint& p, long k) const {
        if (kind_ == Kind::cusp) return HPoint(p.x + static_cast<double>(k), p.y);
        double s = std::exp(l_ * static_cast<double>(k));
        return HPoint(p.x * s, p.y * s);
    }

    bool in_domain(const HPoint& p) const;

private:
    EndModel(Kind k, double l) : kind_(k), l_(l) {
        if (!(l > 0.0)) throw ValidationError("EndModel requires l > 0");
    }

    Kind kind_;
    double l_;
};

struct QuotientPoint {
    HPoint rep; // representative inside the fundamental domain
};

// Reduce a point of the lifted region to its fundamental-domain
// representative; generator^k applied to the representative recovers p.
std::pair<QuotientPoint, long> reduce(const HPoint& p, const EndModel& end);

// Distance on the quotient: min over translates, with the search window
// grown until omitted translates provably exceed the current minimum.
double quotient_distance(const QuotientPoint& p, const QuotientPoint& q, const EndModel& end);

// Number of integer translates of the cusp fundamental domain meeting the
// Euclidean realization of B_H(z_tilde, R). Satisfies N - 2 <= 2 Im sinh R.
long copies_intersected(const QuotientPoint& z, double R, const EndModel& end);

// c(R) = sqrt(cosh(R/2) - 1) / (sqrt(2) sinh R): for |k| < (N-2) c(R) the
// translated half-ball B(z+k, R/2) stays inside B(z, R).
double cusp_inclusion_margin(double R);

// Periodic function on a fundamental domain, sampled on a tensor grid with
// bilinear interpolation. For a cusp the chart is (x, y) with period 1 in x;
// for a funnel it is (u, phi) = (log |z| mod l, arg z).
class GridFunction {
public:
    // Cusp chart: values[iy * nx + ix] at x = -1/2 + ix/nx, y = ygrid[iy].
    static GridFunction cusp_samples(const EndModel& end, int nx, std::vector<double> ygrid,
                                     std::vector<double> values);
    // Funnel chart: u uniform on [0, l), phi on given grid in (pi/2, pi).
    static GridFunction funnel_samples(const EndModel& end, int nu, std::vector<double> phigrid,
                                       std::vector<double> values);

    // Lifted evaluation at an arbitrary point of the lifted region.
    double lift_value(const HPoint& p) const;

    // Value in fundamental-domain coordinates.
    double value(double x_or_u, double y_or_phi) const;

    // Exact integral of value^2 dx over [lo, hi] at fixed y (cusp chart only;
    // the slice of a bilinear interpolant is piecewise quadratic).
    double integral_sq_x(double y, double lo, double hi) const;

    const EndModel& end() const { return end_; }

private:
    GridFunction(EndModel end, int nx, std::vector<double> second_axis,
                 std::vector<double> values, bool cusp_chart);

    double cell_value(int ix, int iy) const { return values_[iy * nx_ + ix]; }

    EndModel end_;
    int nx_;
    std::vector<double> axis2_; // y grid (cusp) or phi grid (funnel)
    std::vector<double> values_;
    bool cusp_chart_;
};

// Both sides of the periodic-lift L2 comparison for a ball around z.
struct LiftNormReport {
    long copies = 0;          // N
    double margin = 0.0;      // c(R)
    double lift_sq = 0.0;     // ||v_tilde||^2 over B_H(z_tilde, R)
    double quot_R_sq = 0.0;   // ||v||^2 over the quotient ball of radius R
    double quot_halfR_sq = 0; // ||v||^2 over the quotient ball of radius R/2
    bool upper_ok = false;    // lift_sq <= N * quot_R_sq
    bool lower_ok = false;    // 2 (N-2) c(R) quot_halfR_sq <= lift_sq (N >= 3)
    double ratio_lo = 0.0;    // lift_sq / (2 (N-2) c(R) quot_halfR_sq)
    double ratio_hi = 0.0;    // N * quot_R_sq / lift_sq
};

LiftNormReport lift_norm_bounds(const GridFunction& v, const QuotientPoint& z, double R,
                                const QuadratureOptions& opts = {});

// Cross-section in x of the quotient ball region {q in D : d_quot(z, q) < R}
// at height y (cusp chart), as a union of intervals inside [-1/2, 1/2].
IntervalSet cusp_ball_cross_section(const QuotientPoint& z, double R, const EndModel& end,
                                    double y);

// Euclidean y-range of the quotient ball region (before clipping at the
// cusp floor).
std::pair<double, double> ball_y_range(const HPoint& center, double R);

} // namespace hyplab
