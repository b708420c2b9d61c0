#include "hyplab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include <nlohmann/json.hpp>

#include "hyplab/geom.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

std::vector<DoublingCheck> doubling_check(const std::vector<double>& r_grid, double C_D) {
    std::vector<DoublingCheck> out;
    out.reserve(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0)) throw ValidationError("doubling_check requires positive radii");
        DoublingCheck c;
        c.r = r;
        double ch = std::cosh(0.5 * r);
        c.ratio = 4.0 * ch * ch;
        c.envelope = C_D * std::exp(C_D * r);
        c.ok = c.ratio <= c.envelope * (1.0 + 1e-12);
        out.push_back(c);
    }
    return out;
}

bool dilation_iterate_check(double r, int n, double C_D) {
    double lhs = ball_volume(std::ldexp(r, n)); // 2^n r
    double rhs = std::pow(C_D, n) * std::exp(C_D * (std::ldexp(1.0, n) - 1.0) * r) *
                 ball_volume(r);
    return lhs <= rhs * (1.0 + 1e-12);
}

double gaussian_quotient_bound(double alpha, double beta, double C_D) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw ValidationError("gaussian_quotient_bound requires alpha, beta > 0");
    // Terms exp(2^{n+1} C_D - 4^n beta) C_D^{n+1} decay doubly exponentially
    // but the early ones can be enormous; sum in log space to stay positive.
    std::vector<double> log_terms;
    for (int n = 0;; ++n) {
        double log_term = std::ldexp(1.0, n + 1) * C_D - std::ldexp(1.0, 2 * n) * beta +
                          (n + 1) * std::log(C_D);
        log_terms.push_back(log_term);
        if (log_term < -700.0 && n >= 4) break;
        if (n > 4000) break; // unreachable
    }
    double mx = *std::max_element(log_terms.begin(), log_terms.end());
    double acc = 0.0;
    for (double lt : log_terms) acc += std::exp(lt - mx);
    double log_sum = mx + std::log(acc);
    // log(1 + S) without overflow in either regime.
    double log1p_sum = log_sum > 0.0 ? log_sum + std::log1p(std::exp(-log_sum))
                                     : std::log1p(std::exp(log_sum));
    return std::exp(-alpha - log1p_sum);
}

double gaussian_radial_integral(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("gaussian_radial_integral requires alpha > 0");
    // Truncation: e^{-alpha s^2} sinh s < e^{-alpha s^2 + s}; negligible past
    // the point where alpha s^2 - s > 700-ish relative to the peak.
    double s_max = (1.0 + std::sqrt(1.0 + 4.0 * alpha * 60.0)) / (2.0 * alpha) + 10.0;
    QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    auto f = [&](double s) { return std::exp(-alpha * s * s) * std::sinh(s); };
    return 2.0 * M_PI * integrate_1d(0.0, s_max, f, opts).value;
}

double gaussian_radial_closed_form(double alpha) {
    return std::pow(M_PI, 1.5) / std::sqrt(alpha) * std::exp(1.0 / (4.0 * alpha)) *
           std::erf(1.0 / (2.0 * std::sqrt(alpha)));
}

double gaussian_quotient_numeric(double alpha, double beta) {
    return gaussian_radial_integral(alpha) / gaussian_radial_integral(beta);
}

double h2_heat_kernel(double d, double t) {
    if (!(t > 0.0) || !(d >= 0.0))
        throw ValidationError("h2_heat_kernel requires t > 0 and d >= 0");
    // McKean integral with the substitution s = d + u^2 removing the
    // inverse-square-root endpoint singularity.
    double prefac = std::sqrt(2.0) * std::exp(-0.25 * t) /
                    std::pow(4.0 * M_PI * t, 1.5);
    double reach = std::sqrt(4.0 * t * 46.0) + 6.0 * std::sqrt(t); // e^{-46} tail
    double U = std::sqrt(reach);
    double cosh_d = std::cosh(d);
    auto g = [&](double u) {
        double s = d + u * u;
        double delta = std::cosh(s) - cosh_d;
        if (delta <= 0.0) {
            // Series limit at u -> 0: delta / u^2 -> sinh d (or u^2/2 at d = 0).
            return 0.0;
        }
        return s * std::exp(-s * s / (4.0 * t)) * 2.0 * u / std::sqrt(delta);
    };
    QuadratureOptions opts;
    opts.rel_tol = 1e-9;
    double integral = integrate_1d(0.0, U, g, opts).value;
    return prefac * integral;
}

EnvelopeFit envelope_fit(const std::vector<double>& d_grid, const std::vector<double>& t_grid,
                         Exec exec) {
    struct Sample {
        double d, t, p, vol;
    };
    std::vector<Sample> samples(d_grid.size() * t_grid.size());
    for_each_index(exec, samples.size(), [&](std::size_t i) {
        double d = d_grid[i / t_grid.size()];
        double t = t_grid[i % t_grid.size()];
        samples[i] = Sample{d, t, h2_heat_kernel(d, t), ball_volume(std::sqrt(t))};
    });

    auto feasible_c1 = [&](double C2) {
        // Upper: p <= C1/vol * exp(-d^2/(5t) + C2 (t + d^2))
        // Lower: p >= 1/(C1 vol) * exp(-d^2/(3t) - C2 (t + d^2))
        double need = 1.0;
        for (const Sample& s : samples) {
            double e_up = std::exp(-s.d * s.d / (5.0 * s.t) + C2 * (s.t + s.d * s.d));
            double e_lo = std::exp(-s.d * s.d / (3.0 * s.t) - C2 * (s.t + s.d * s.d));
            need = std::max(need, s.p * s.vol / e_up);
            if (s.p > 0.0) need = std::max(need, e_lo / (s.p * s.vol));
        }
        return need;
    };

    auto search = [&](double c1_hi, double c2_hi) -> EnvelopeFit {
        EnvelopeFit best;
        double best_score = std::numeric_limits<double>::infinity();
        for (double C2 = 0.05; C2 <= c2_hi; C2 += 0.05) {
            double C1 = feasible_c1(C2);
            if (C1 > c1_hi) continue;
            double score = std::max(C1, C2);
            if (score < best_score) {
                best_score = score;
                best = EnvelopeFit{C1, C2, true};
            }
        }
        return best;
    };

    EnvelopeFit fit = search(1e4, 10.0);
    if (!fit.feasible) fit = search(1e8, 40.0); // enlarge once and retry
    if (!fit.feasible)
        throw NoFeasiblePoint("envelope_fit: no (C1, C2) on the enlarged search grid");
    return fit;
}

ObservabilityConstant observability_constant(const SensorSet& omega, double T,
                                             const ModeBasis& basis, double lambda_cap,
                                             Exec exec) {
    if (!(T > 0.0)) throw ValidationError("observability_constant requires T > 0");
    ObservabilityConstant out;
    std::vector<int> idx;
    for (std::size_t j = 0; j < basis.modes.size(); ++j)
        if (basis.modes[j].lambda <= lambda_cap) idx.push_back(static_cast<int>(j));
    out.modes = static_cast<int>(idx.size());
    if (idx.empty()) return out; // empty problem: defined as 0

    Eigen::MatrixXd G = gram_matrix(omega, idx, basis, exec);
    int m = static_cast<int>(idx.size());
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd Q(m, m);
    for (int p = 0; p < m; ++p) {
        double lp = basis.modes[idx[p]].lambda;
        D(p, p) = std::exp(-2.0 * lp * lp * T);
        for (int q = 0; q < m; ++q) {
            double lq = basis.modes[idx[q]].lambda;
            double s = lp * lp + lq * lq;
            Q(p, q) = G(p, q) * (1.0 - std::exp(-s * T)) / s;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(Q);
    if (llt.info() != Eigen::Success) {
        out.singular = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(D, Q,
                                                                  Eigen::EigenvaluesOnly);
    if (ges.info() != Eigen::Success) {
        out.singular = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.value = ges.eigenvalues().maxCoeff();
    return out;
}

NecessityParams necessity_pipeline(const CurvatureParams& cp) {
    if (!(cp.C1 > 0.0 && cp.C2 > 0.0 && cp.C_D > 0.0))
        throw ValidationError("necessity_pipeline requires positive C1, C2, C_D");
    NecessityParams np;
    np.t_K = 1.0 / (10.0 * (cp.C2 + 2.0 * cp.C_D));
    np.beta_K = 2.0 / (5.0 * np.t_K) - 2.0 * cp.C2;
    if (!(np.beta_K > 4.0 * cp.C_D))
        throw InfeasibleCurvature("necessity_pipeline: beta_K <= 4 C_D");
    np.alpha_K = 2.0 * (cp.C2 + 1.0 / (3.0 * np.t_K));
    np.m_K = std::exp(-2.0 * cp.C2 * np.t_K) / (cp.C1 * cp.C1);
    np.M_K = 0.5 * np.t_K * cp.C1 * cp.C1 * std::exp(2.0 * cp.C2 * np.t_K);
    double doubling = cp.C_D * std::exp(cp.C_D * std::sqrt(0.5 * np.t_K));
    np.Mp_K = np.M_K / np.m_K * doubling * doubling;

    double bound = gaussian_quotient_bound(np.alpha_K, 0.5 * np.beta_K, cp.C_D);
    for (int j = 0;; ++j) {
        double R = 0.1 * std::pow(1.1, j);
        if (std::exp(-0.5 * np.beta_K * R * R) < 0.5 * bound) {
            np.R = R;
            break;
        }
        if (j > 400)
            throw NonConvergent("necessity_pipeline: R search exhausted the grid");
    }
    np.delta = std::exp(-np.alpha_K * np.R * np.R) / (2.0 * np.Mp_K);
    if (!(np.delta > 0.0 && np.delta < 1.0))
        throw NonConvergent("necessity_pipeline: delta left (0, 1)");
    return np;
}

std::string necessity_json(const NecessityParams& np, const CurvatureParams& cp) {
    nlohmann::json j;
    j["inputs"] = {{"n", cp.n}, {"K", cp.K}, {"C_D", cp.C_D}, {"C1", cp.C1}, {"C2", cp.C2}};
    j["t_K"] = np.t_K;
    j["alpha_K"] = np.alpha_K;
    j["beta_K"] = np.beta_K;
    j["m_K"] = np.m_K;
    j["M_K"] = np.M_K;
    j["M_prime_K"] = np.Mp_K;
    j["R"] = np.R;
    j["delta"] = np.delta;
    return j.dump(2);
}

} // namespace hyplab
