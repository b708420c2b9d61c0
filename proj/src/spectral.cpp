#include "hyplab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hyplab {

SpectralWindow project(const ModeBasis& basis, const std::vector<double>& coeffs,
                       double lambda) {
    if (coeffs.size() != basis.modes.size())
        throw ValidationError("project: coefficient vector does not match the basis");
    SpectralWindow w;
    w.basis = &basis;
    w.lambda = lambda;
    for (std::size_t j = 0; j < basis.modes.size(); ++j) {
        if (basis.modes[j].lambda <= lambda) {
            w.mode_index.push_back(static_cast<int>(j));
            w.coeff.push_back(coeffs[j]);
        }
    }
    return w;
}

MultiplierCheck multiplier_bound_check(const std::function<double(double)>& phi,
                                       const SpectralWindow& window, int sup_grid) {
    MultiplierCheck out;
    double lhs2 = 0.0;
    for (std::size_t j = 0; j < window.coeff.size(); ++j) {
        double lam = window.basis->modes[window.mode_index[j]].lambda;
        double p = phi(lam);
        lhs2 += p * p * window.coeff[j] * window.coeff[j];
    }
    out.lhs = std::sqrt(lhs2);
    double sup = 0.0;
    for (int i = 0; i <= sup_grid; ++i) {
        double lam = window.lambda * static_cast<double>(i) / sup_grid;
        sup = std::max(sup, std::abs(phi(lam)));
    }
    for (int j : window.mode_index)
        sup = std::max(sup, std::abs(phi(window.basis->modes[j].lambda)));
    out.sup = sup;
    out.rhs = sup * std::sqrt(window.norm_sq());
    out.ok = out.lhs <= out.rhs + 1e-12 * std::max(1.0, out.rhs);
    return out;
}

namespace {

// Integral over [u0, u1] of the product of the two orthonormal angular
// factors (1, sqrt(2) cos(2 pi k .), sqrt(2) sin(2 pi k .)).
double angular_product_integral(const EigenMode& a, const EigenMode& b, double u0, double u1) {
    auto int_cos = [&](int p) { // integral of cos(2 pi p u)
        if (p == 0) return u1 - u0;
        double w = 2.0 * M_PI * p;
        return (std::sin(w * u1) - std::sin(w * u0)) / w;
    };
    auto int_sin = [&](int p) { // integral of sin(2 pi p u)
        if (p == 0) return 0.0;
        double w = 2.0 * M_PI * p;
        return (std::cos(w * u0) - std::cos(w * u1)) / w;
    };

    bool a0 = a.k == 0, b0 = b.k == 0;
    if (a0 && b0) return u1 - u0;
    if (a0 || b0) {
        const EigenMode& m = a0 ? b : a;
        double amp = std::sqrt(2.0);
        return m.trig == Trig::cosine ? amp * int_cos(m.k) : amp * int_sin(m.k);
    }
    int j = a.k, k = b.k;
    if (a.trig == Trig::cosine && b.trig == Trig::cosine)
        return int_cos(j - k) + int_cos(j + k); // 2 cos cos
    if (a.trig == Trig::sine && b.trig == Trig::sine)
        return int_cos(j - k) - int_cos(j + k); // 2 sin sin
    // One cosine and one sine: 2 cos(j) sin(k) = sin(j+k) - sin(j-k).
    if (a.trig == Trig::cosine) return int_sin(j + k) - int_sin(j - k);
    // a sine, b cosine: 2 sin(j) cos(k) = sin(j+k) + sin(j-k).
    return int_sin(j + k) + int_sin(j - k);
}

} // namespace

Eigen::MatrixXd gram_matrix(const SensorSet& omega, const std::vector<int>& mode_index,
                            const ModeBasis& basis, Exec exec) {
    int m = static_cast<int>(mode_index.size());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    int n = static_cast<int>(basis.y.size());
    double h = basis.h;

    // Cross-sections of omega at grid heights, shared by all entries.
    std::vector<IntervalSet> sections(n);
    for_each_index(exec, static_cast<std::size_t>(n), [&](std::size_t i) {
        sections[i] = omega.cross_section(basis.y[i], 0.0, 1.0);
    });

    std::vector<std::pair<int, int>> entries;
    entries.reserve(static_cast<std::size_t>(m) * (m + 1) / 2);
    for (int p = 0; p < m; ++p)
        for (int q = p; q < m; ++q) entries.emplace_back(p, q);

    std::vector<double> vals(entries.size());
    for_each_index(exec, entries.size(), [&](std::size_t e) {
        auto [p, q] = entries[e];
        const EigenMode& mp = basis.modes[mode_index[p]];
        const EigenMode& mq = basis.modes[mode_index[q]];
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (sections[i].is_empty()) continue;
            double radial = mp.radial[i] * mq.radial[i] / (basis.y[i] * basis.y[i]);
            if (radial == 0.0) continue;
            double ang = 0.0;
            for (const auto& iv : sections[i].parts())
                ang += angular_product_integral(mp, mq, iv.lo, iv.hi);
            acc += radial * ang;
        }
        vals[e] = acc * h;
    });
    for (std::size_t e = 0; e < entries.size(); ++e) {
        auto [p, q] = entries[e];
        G(p, q) = vals[e];
        G(q, p) = vals[e];
    }
    return G;
}

SpectralConstant spectral_constant(const SensorSet& omega, double lambda,
                                   const ModeBasis& basis, Exec exec, double singular_tol) {
    SpectralConstant out;
    std::vector<int> idx;
    for (std::size_t j = 0; j < basis.modes.size(); ++j)
        if (basis.modes[j].lambda <= lambda) idx.push_back(static_cast<int>(j));
    out.modes = static_cast<int>(idx.size());
    if (idx.empty()) {
        out.value = 0.0; // empty window: estimate vacuous
        out.gram_min = 0.0;
        return out;
    }
    Eigen::MatrixXd G = gram_matrix(omega, idx, basis, exec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    double mn = es.eigenvalues().minCoeff();
    out.gram_min = mn;
    if (mn <= singular_tol) {
        out.singular = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = 1.0 / std::sqrt(mn);
    return out;
}

ExpFit fit_exponential(const std::vector<double>& lambdas, const std::vector<double>& values) {
    if (lambdas.size() != values.size() || lambdas.size() < 3)
        throw ValidationError("fit_exponential requires >= 3 aligned points");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw NonFinite("fit_exponential requires finite positive values");
    double n = static_cast<double>(lambdas.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        double x = lambdas[i], y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw NonFinite("fit_exponential: degenerate abscissae");
    ExpFit fit;
    fit.rate = (n * sxy - sx * sy) / denom;
    double logc0 = (sy - fit.rate * sx) / n;
    fit.C0 = std::exp(logc0);
    double ss = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        double r = std::log(values[i]) - (logc0 + fit.rate * lambdas[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace hyplab
