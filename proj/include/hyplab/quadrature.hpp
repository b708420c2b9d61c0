#pragma once

#include <functional>

#include "hyplab/exec.hpp"

namespace hyplab {

// Axis-aligned chart rectangle [x0,x1] x [y0,y1], y0 > 0 when used against
// the hyperbolic measure dvol = dx dy / y^2.
struct Rect {
    double x0, x1, y0, y1;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    // Hyperbolic measure of the rectangle (closed form).
    double hyp_measure() const { return (x1 - x0) * (1.0 / y0 - 1.0 / y1); }
};

using Weight = std::function<double(double, double)>;

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    long max_panels = 1 << 20;
    int max_depth = 40;
    Exec exec = Exec::serial;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    long panels = 0;    // panels evaluated
};

// Integral of a smooth weight f(x, y) against dvol over a chart rectangle,
// by 16-point tensor Gauss-Legendre panels with dyadic refinement.
QuadratureResult integrate_weight(const Rect& domain, const Weight& f,
                                  const QuadratureOptions& opts = {});

// Adaptive 1-D Gauss-Legendre on [a, b].
QuadratureResult integrate_1d(double a, double b, const std::function<double(double)>& f,
                              const QuadratureOptions& opts = {});

// Plain 16-point Gauss-Legendre of f on [a, b], no refinement.
double gauss_legendre_1d(double a, double b, const std::function<double(double)>& f);

} // namespace hyplab
