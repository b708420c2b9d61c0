#include "hyplab/extension.hpp"

#include <algorithm>
#include <cmath>

#include "hyplab/rng.hpp"

namespace hyplab {

namespace {

double time_factor(double lambda, double t) {
    return std::sinh(lambda * t) / lambda;
}

} // namespace

HarmonicExtension harmonic_extension(const SpectralWindow& window, double T, int t_points,
                                     int n_theta, Exec exec) {
    if (!(T > 0.0)) throw ValidationError("harmonic_extension requires T > 0");
    if (window.lambda_max() * T > 700.0)
        throw OverflowGuard("harmonic_extension: lambda * T beyond the sinh overflow guard");
    if (t_points < 3) t_points = 3;
    if (t_points % 2 == 0) ++t_points; // keep t = 0 on the grid
    if (n_theta < 4) n_theta = 4;

    HarmonicExtension ext;
    ext.basis = window.basis;
    ext.window = window;
    ext.T = T;
    ext.n_theta = n_theta;
    ext.tgrid.resize(t_points);
    for (int i = 0; i < t_points; ++i)
        ext.tgrid[i] = -T + 2.0 * T * i / (t_points - 1);
    // Snap the middle node to exactly zero.
    ext.tgrid[(t_points - 1) / 2] = 0.0;

    const ModeBasis& basis = *window.basis;
    int ny = static_cast<int>(basis.y.size());
    ext.field.assign(static_cast<std::size_t>(t_points) * n_theta * ny, 0.0);

    // Angular factors cached per mode and angle.
    int nm = static_cast<int>(window.mode_index.size());
    std::vector<double> ang(static_cast<std::size_t>(nm) * n_theta);
    for (int j = 0; j < nm; ++j) {
        const EigenMode& mode = basis.modes[window.mode_index[j]];
        for (int q = 0; q < n_theta; ++q)
            ang[static_cast<std::size_t>(j) * n_theta + q] =
                ModeBasis::angular(mode, static_cast<double>(q) / n_theta);
    }

    for_each_index(exec, static_cast<std::size_t>(t_points), [&](std::size_t it) {
        double t = ext.tgrid[it];
        for (int j = 0; j < nm; ++j) {
            const EigenMode& mode = basis.modes[window.mode_index[j]];
            double amp = window.coeff[j] * time_factor(mode.lambda, t);
            if (amp == 0.0) continue;
            for (int q = 0; q < n_theta; ++q) {
                double a = amp * ang[static_cast<std::size_t>(j) * n_theta + q];
                double* slab =
                    &ext.field[(it * static_cast<std::size_t>(n_theta) + q) * ny];
                const double* radial = mode.radial.data();
                for (int i = 0; i < ny; ++i) slab[i] += a * radial[i];
            }
        }
    });
    return ext;
}

std::vector<double> extension_dt_at_zero(const HarmonicExtension& ext) {
    const ModeBasis& basis = *ext.basis;
    int ny = static_cast<int>(basis.y.size());
    int nm = static_cast<int>(ext.window.mode_index.size());
    std::vector<double> out(static_cast<std::size_t>(ext.n_theta) * ny, 0.0);
    for (int j = 0; j < nm; ++j) {
        const EigenMode& mode = basis.modes[ext.window.mode_index[j]];
        for (int q = 0; q < ext.n_theta; ++q) {
            double a = ext.window.coeff[j] *
                       ModeBasis::angular(mode, static_cast<double>(q) / ext.n_theta);
            for (int i = 0; i < ny; ++i)
                out[static_cast<std::size_t>(q) * ny + i] += a * mode.radial[i];
        }
    }
    return out;
}

double extension_residual(const HarmonicExtension& ext) {
    const ModeBasis& basis = *ext.basis;
    int nt = static_cast<int>(ext.tgrid.size());
    int nq = ext.n_theta;
    int ny = static_cast<int>(basis.y.size());
    if (nt < 3) return 0.0;
    double ht = ext.tgrid[1] - ext.tgrid[0];
    double hq = 1.0 / nq;
    double hy = basis.h;

    double max_res = 0.0, max_val = 0.0;
    for (int it = 1; it + 1 < nt; ++it) {
        for (int q = 0; q < nq; ++q) {
            int qm = (q + nq - 1) % nq, qp = (q + 1) % nq;
            for (int i = 0; i < ny; ++i) {
                double v = ext.at(it, q, i);
                max_val = std::max(max_val, std::abs(v));
                double dtt = (ext.at(it + 1, q, i) - 2.0 * v + ext.at(it - 1, q, i)) / (ht * ht);
                double dqq = (ext.at(it, qp, i) - 2.0 * v + ext.at(it, qm, i)) / (hq * hq);
                double ym = (i > 0) ? ext.at(it, q, i - 1) : 0.0;      // Dirichlet floor
                double yp = (i + 1 < ny) ? ext.at(it, q, i + 1) : 0.0; // Dirichlet top
                double dyy = (yp - 2.0 * v + ym) / (hy * hy);
                double res = dtt + basis.y[i] * basis.y[i] * (dqq + dyy);
                max_res = std::max(max_res, std::abs(res));
            }
        }
    }
    return max_val > 0.0 ? max_res / max_val : 0.0;
}

double h3_energy_sq(const SpectralWindow& window, double T) {
    if (window.lambda_max() * T > 700.0)
        throw OverflowGuard("h3_energy_sq: lambda * T beyond the sinh overflow guard");
    double total = 0.0;
    for (std::size_t j = 0; j < window.coeff.size(); ++j) {
        double lam = window.basis->modes[window.mode_index[j]].lambda;
        double c2 = window.coeff[j] * window.coeff[j];
        // d_t^j of sinh(lam t)/lam: lam^{j-1} sinh (j even) or lam^{j-1} cosh (j odd).
        double s2 = std::sinh(2.0 * lam * T) / (2.0 * lam);
        double int_sinh2 = s2 - T; // integral over (-T, T) of sinh^2
        double int_cosh2 = s2 + T; // integral over (-T, T) of cosh^2
        for (int d = 0; d <= 3; ++d) {
            double sob = std::pow(1.0 + lam * lam, 3 - d);
            double lampow = std::pow(lam, 2 * (d - 1));
            double tint = (d % 2 == 0) ? int_sinh2 : int_cosh2;
            total += c2 * sob * lampow * tint;
        }
    }
    return total;
}

double energy_bound_ratio(const SpectralWindow& window, double T) {
    double u = std::sqrt(window.norm_sq());
    if (u == 0.0) return 0.0;
    double lam = window.lambda;
    double envelope = lam * lam * lam * T * std::exp(lam * T) * u;
    return std::sqrt(h3_energy_sq(window, T)) / envelope;
}

namespace {

bool in_box_t(const Box3& b, double t) { return t >= b.t0 && t <= b.t1; }
bool in_box_xy(const Box3& b, double x, double y) {
    return x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1;
}

// Max |grad_(t,theta,y) W| over grid nodes inside the box (central
// differences; one-sided in t at the ends, periodic in theta, Dirichlet in y).
double sup_gradient(const HarmonicExtension& ext, const Box3& box) {
    const ModeBasis& basis = *ext.basis;
    int nt = static_cast<int>(ext.tgrid.size());
    int nq = ext.n_theta;
    int ny = static_cast<int>(basis.y.size());
    double ht = ext.tgrid[1] - ext.tgrid[0];
    double hq = 1.0 / nq;
    double hy = basis.h;
    double best = 0.0;
    for (int it = 0; it < nt; ++it) {
        if (!in_box_t(box, ext.tgrid[it])) continue;
        for (int q = 0; q < nq; ++q) {
            double x = static_cast<double>(q) / nq;
            if (!(x >= box.x0 && x <= box.x1)) continue;
            int qm = (q + nq - 1) % nq, qp = (q + 1) % nq;
            for (int i = 0; i < ny; ++i) {
                double y = basis.y[i];
                if (!(y >= box.y0 && y <= box.y1)) continue;
                double dt;
                if (it == 0)
                    dt = (ext.at(1, q, i) - ext.at(0, q, i)) / ht;
                else if (it + 1 == nt)
                    dt = (ext.at(nt - 1, q, i) - ext.at(nt - 2, q, i)) / ht;
                else
                    dt = (ext.at(it + 1, q, i) - ext.at(it - 1, q, i)) / (2.0 * ht);
                double dx = (ext.at(it, qp, i) - ext.at(it, qm, i)) / (2.0 * hq);
                double ym = (i > 0) ? ext.at(it, q, i - 1) : 0.0;
                double yp = (i + 1 < ny) ? ext.at(it, q, i + 1) : 0.0;
                double dy = (yp - ym) / (2.0 * hy);
                best = std::max(best, std::sqrt(dt * dt + dx * dx + dy * dy));
            }
        }
    }
    return best;
}

} // namespace

SmallnessFit smallness_experiment(const ModeBasis& basis, const SmallnessConfig& cfg,
                                  std::uint64_t seed) {
    SmallnessFit fit;
    std::vector<SmallnessTrial> trials(cfg.n_trials);
    std::vector<char> usable(cfg.n_trials, 0);

    for_each_index(cfg.exec, static_cast<std::size_t>(cfg.n_trials), [&](std::size_t trial) {
        CounterRng rng(seed, "smallness-trial-" + std::to_string(trial));
        double lam = rng.uniform(0, cfg.lambda_lo, cfg.lambda_hi);
        std::vector<double> coeffs(basis.modes.size(), 0.0);
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            coeffs[j] = rng.uniform(j + 1) * 2.0 - 1.0;
        SpectralWindow w = project(basis, coeffs, lam);
        if (w.mode_index.empty()) return;
        HarmonicExtension ext =
            harmonic_extension(w, cfg.T, cfg.t_points, cfg.n_theta, Exec::serial);

        SmallnessTrial t;
        t.sup_K = sup_gradient(ext, cfg.K);
        t.sup_Omega = sup_gradient(ext, cfg.Omega);
        // On the t = 0 slice the gradient reduces to |d_t W| = |Pi_Lambda u|.
        std::vector<double> u0 = extension_dt_at_zero(ext);
        int ny = static_cast<int>(basis.y.size());
        for (int q = 0; q < cfg.n_theta; ++q) {
            double x = static_cast<double>(q) / cfg.n_theta;
            for (int i = 0; i < ny; ++i) {
                if (in_box_xy(cfg.E, x, basis.y[i]))
                    t.sup_E = std::max(t.sup_E,
                                       std::abs(u0[static_cast<std::size_t>(q) * ny + i]));
            }
        }
        trials[trial] = t;
        usable[trial] = (t.sup_Omega > 0.0 && t.sup_E > 0.0) ? 1 : 0;
    });

    // Log-linear regression of log sup_K - log sup_Omega against
    // log sup_E - log sup_Omega, then raise C to cover every trial.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < cfg.n_trials; ++i) {
        if (!usable[i]) {
            ++fit.trials_skipped;
            continue;
        }
        fit.trials.push_back(trials[i]);
        double x = std::log(trials[i].sup_E) - std::log(trials[i].sup_Omega);
        double y = std::log(trials[i].sup_K) - std::log(trials[i].sup_Omega);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    fit.trials_used = n;
    if (n == 0) throw DegenerateField("smallness_experiment: all trials degenerate");

    double denom = n * sxx - sx * sx;
    double alpha = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.5;
    alpha = std::clamp(alpha, 0.02, 0.98);
    fit.alpha = alpha;
    double logc = -1e300;
    for (const SmallnessTrial& t : fit.trials) {
        double need = std::log(t.sup_K) - alpha * std::log(t.sup_E) -
                      (1.0 - alpha) * std::log(t.sup_Omega);
        logc = std::max(logc, need);
    }
    fit.C = std::exp(logc);
    return fit;
}

} // namespace hyplab
