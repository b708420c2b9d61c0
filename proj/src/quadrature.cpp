#include "hyplab/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "hyplab/errors.hpp"

namespace hyplab {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLNode[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// Tensor GL16 of f(x,y)/y^2 on a rectangle.
double gl_panel(const Rect& r, const Weight& f) {
    double hx = 0.5 * (r.x1 - r.x0), cx = 0.5 * (r.x0 + r.x1);
    double hy = 0.5 * (r.y1 - r.y0), cy = 0.5 * (r.y0 + r.y1);
    double sum = 0.0;
    for (int i = 0; i < kGL; ++i) {
        double x = cx + hx * kGLNode[i];
        double row = 0.0;
        for (int j = 0; j < kGL; ++j) {
            double y = cy + hy * kGLNode[j];
            row += kGLWeight[j] * f(x, y) / (y * y);
        }
        sum += kGLWeight[i] * row;
    }
    return sum * hx * hy;
}

void split4(const Rect& r, Rect out[4]) {
    double xm = 0.5 * (r.x0 + r.x1);
    double ym = 0.5 * (r.y0 + r.y1);
    out[0] = Rect{r.x0, xm, r.y0, ym};
    out[1] = Rect{xm, r.x1, r.y0, ym};
    out[2] = Rect{r.x0, xm, ym, r.y1};
    out[3] = Rect{xm, r.x1, ym, r.y1};
}

} // namespace

double gauss_legendre_1d(double a, double b, const std::function<double(double)>& f) {
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) s += kGLWeight[i] * f(c + h * kGLNode[i]);
    return s * h;
}

QuadratureResult integrate_weight(const Rect& domain, const Weight& f,
                                  const QuadratureOptions& opts) {
    if (!(domain.y0 > 0.0)) throw ValidationError("integrate_weight: domain requires y0 > 0");
    if (domain.x1 <= domain.x0 || domain.y1 <= domain.y0) return {0.0, 0.0, 0};

    struct Item {
        Rect r;
        double est;
    };
    std::vector<Item> gen{{domain, gl_panel(domain, f)}};
    double value = 0.0, error = 0.0;
    long panels = 1;
    int depth = 0;
    double domain_measure = domain.hyp_measure();
    while (!gen.empty()) {
        double total_est = value;
        for (const Item& it : gen) total_est += it.est;
        double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total_est));

        std::vector<std::array<Item, 4>> kids(gen.size());
        std::vector<double> child_sum(gen.size());
        for_each_index(opts.exec, gen.size(), [&](std::size_t i) {
            Rect sub[4];
            split4(gen[i].r, sub);
            double s = 0.0;
            for (int k = 0; k < 4; ++k) {
                kids[i][k] = Item{sub[k], gl_panel(sub[k], f)};
                s += kids[i][k].est;
            }
            child_sum[i] = s;
        });
        panels += 4 * static_cast<long>(gen.size());

        std::vector<Item> next;
        bool at_cap = depth >= opts.max_depth || panels > opts.max_panels;
        for (std::size_t i = 0; i < gen.size(); ++i) {
            double disc = std::abs(child_sum[i] - gen[i].est);
            double share = std::max(1e-6, gen[i].r.hyp_measure() / domain_measure);
            if (disc <= tol * share || at_cap) {
                value += child_sum[i];
                error += disc;
            } else {
                next.insert(next.end(), kids[i].begin(), kids[i].end());
            }
        }
        if (next.empty()) {
            double final_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
            if (at_cap && error > final_tol && error > 1e-300)
                throw NonConvergent("integrate_weight: discrepancy above tolerance at panel cap");
            return {value, error, panels};
        }
        gen = std::move(next);
        ++depth;
    }
    return {value, error, panels};
}

QuadratureResult integrate_1d(double a, double b, const std::function<double(double)>& f,
                              const QuadratureOptions& opts) {
    if (!(b >= a)) throw ValidationError("integrate_1d: requires b >= a");
    if (a == b) return {0.0, 0.0, 0};

    struct Seg {
        double lo, hi, est;
    };
    std::vector<Seg> gen{{a, b, gauss_legendre_1d(a, b, f)}};
    double value = 0.0, error = 0.0;
    long panels = 1;
    int depth = 0;
    while (!gen.empty()) {
        double total_est = value;
        for (const Seg& s : gen) total_est += s.est;
        double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(total_est));
        std::vector<Seg> next;
        bool at_cap = depth >= opts.max_depth || panels > opts.max_panels;
        for (const Seg& s : gen) {
            double mid = 0.5 * (s.lo + s.hi);
            Seg l{s.lo, mid, gauss_legendre_1d(s.lo, mid, f)};
            Seg r{mid, s.hi, gauss_legendre_1d(mid, s.hi, f)};
            panels += 2;
            double disc = std::abs(l.est + r.est - s.est);
            double share = std::max(1e-9, (s.hi - s.lo) / (b - a));
            if (disc <= tol * share || at_cap) {
                value += l.est + r.est;
                error += disc;
            } else {
                next.push_back(l);
                next.push_back(r);
            }
        }
        if (next.empty()) {
            double final_tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
            if (at_cap && error > final_tol && error > 1e-300)
                throw NonConvergent("integrate_1d: discrepancy above tolerance at panel cap");
            return {value, error, panels};
        }
        gen = std::move(next);
        ++depth;
    }
    return {value, error, panels};
}

} // namespace hyplab
