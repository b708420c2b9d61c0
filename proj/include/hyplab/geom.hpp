#pragma once

#include <cmath>

#include "hyplab/errors.hpp"

namespace hyplab {

// Point of the upper half-plane model, z = x + iy with y > 0.
struct HPoint {
    double x = 0.0;
    double y = 1.0;

    HPoint() = default;
    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(std::isfinite(x) && std::isfinite(y)))
            throw ValidationError("HPoint coordinates must be finite");
        if (!(y > 0.0)) throw ValidationError("HPoint requires y > 0");
    }
};

// Orientation-preserving isometry z -> (az+b)/(cz+d). The constructor
// normalizes any positive-determinant matrix to det = 1 and rejects the rest.
class Mobius {
public:
    Mobius(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        double det = a_ * d_ - b_ * c_;
        if (!(det > 0.0) || !std::isfinite(det))
            throw ValidationError("Mobius requires positive finite determinant");
        double s = 1.0 / std::sqrt(det);
        a_ *= s;
        b_ *= s;
        c_ *= s;
        d_ *= s;
    }

    static Mobius identity() { return Mobius(1.0, 0.0, 0.0, 1.0); }

    // Horizontal translation z -> z + t.
    static Mobius translation(double t) { return Mobius(1.0, t, 0.0, 1.0); }

    // Dilation z -> s z, s > 0.
    static Mobius dilation(double s) {
        if (!(s > 0.0)) throw ValidationError("dilation factor must be positive");
        return Mobius(std::sqrt(s), 0.0, 0.0, 1.0 / std::sqrt(s));
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    HPoint apply(const HPoint& p) const {
        // (az+b)(conj(cz+d)) / |cz+d|^2, with Im > 0 guaranteed by det = 1.
        double cx = c_ * p.x + d_;
        double cy = c_ * p.y;
        double denom = cx * cx + cy * cy;
        double nx = (a_ * p.x + b_) * cx + a_ * p.y * cy;
        double ny = p.y; // (ad - bc) * y with det = 1
        return HPoint(nx / denom, ny / denom);
    }

    Mobius operator*(const Mobius& o) const {
        return Mobius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                      c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
    }

    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

private:
    double a_, b_, c_, d_;
};

// Hyperbolic distance via cosh d = 1 + |p-q|^2_euc / (2 y_p y_q). The acosh
// argument is clamped at 1 to absorb roundoff near p = q.
inline double dist(const HPoint& p, const HPoint& q) {
    double dx = p.x - q.x;
    double dy = p.y - q.y;
    double c = 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    return std::acosh(c < 1.0 ? 1.0 : c);
}

struct GeodesicBall {
    HPoint center;
    double radius;

    GeodesicBall(HPoint c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw ValidationError("GeodesicBall requires radius > 0");
    }
};

struct EuclideanDisk {
    double cx;
    double cy;
    double r;
};

// Geodesic balls are Euclidean disks with the center shifted upwards:
// B_(x+iy)(R) = B^euc(x + iy cosh R, y sinh R).
inline EuclideanDisk ball_to_euclidean(const GeodesicBall& b) {
    return EuclideanDisk{b.center.x, b.center.y * std::cosh(b.radius),
                         b.center.y * std::sinh(b.radius)};
}

inline GeodesicBall ball_from_euclidean(const EuclideanDisk& d) {
    if (!(d.r > 0.0 && d.cy > d.r))
        throw ValidationError("Euclidean disk must lie in the open upper half-plane");
    double y = std::sqrt((d.cy - d.r) * (d.cy + d.r));
    double radius = std::asinh(d.r / y);
    return GeodesicBall(HPoint(d.cx, y), radius);
}

// Volume of a hyperbolic ball of radius R: 4 pi sinh^2(R/2).
inline double ball_volume(double R) {
    if (!(R >= 0.0)) throw ValidationError("ball_volume requires R >= 0");
    double s = std::sinh(0.5 * R);
    return 4.0 * M_PI * s * s;
}

// Isometry sending p to i, as the matrix (1/sqrt(y)) [[1, -x], [0, y]].
inline Mobius isometry_to_origin(const HPoint& p) {
    return Mobius(1.0, -p.x, 0.0, p.y);
}

} // namespace hyplab
