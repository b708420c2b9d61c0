#pragma once

#include <cstdint>
#include <vector>

#include "hyplab/spectral.hpp"

namespace hyplab {

// Harmonic extension v(t) = sum_j sinh(lambda_j t)/lambda_j c_j phi_j of a
// spectral window, sampled on a (t, theta, y) tensor grid. It satisfies
// v(0) = 0, d_t v(0) = Pi_Lambda u and (d_t^2 + Delta_g) v = 0.
struct HarmonicExtension {
    const ModeBasis* basis = nullptr;
    SpectralWindow window;
    double T = 0.0;
    std::vector<double> tgrid;  // uniform on [-T, T], odd count (contains 0)
    int n_theta = 0;            // uniform angles theta_q = q / n_theta
    std::vector<double> field;  // [it][iq][iy]

    double at(int it, int iq, int iy) const {
        return field[(static_cast<std::size_t>(it) * n_theta + iq) * basis->y.size() + iy];
    }
};

// Overflow guard: lambda_max * T <= 700 (sinh overflows past that).
HarmonicExtension harmonic_extension(const SpectralWindow& window, double T, int t_points,
                                     int n_theta, Exec exec = Exec::serial);

// Time-zero slice of d_t v, which equals Pi_Lambda u (spectral identity).
std::vector<double> extension_dt_at_zero(const HarmonicExtension& ext);

// Max over the interior grid of the discrete (d_t^2 + y^2 (D_theta + D_y)) v,
// normalized by max |v|. Second order in the t and theta spacings.
double extension_residual(const HarmonicExtension& ext);

// Spectrally defined mixed Sobolev energy over (-T, T):
// sum_{j=0..3} int ||d_t^j w||_{H^{3-j}}^2 dt with ||.||_{H^s}^2 = sum (1+lambda^2)^s c^2.
double h3_energy_sq(const SpectralWindow& window, double T);

// h3 energy divided by the spectral-decomposition envelope
// Lambda^3 T e^{Lambda T} ||u||.
double energy_bound_ratio(const SpectralWindow& window, double T);

// Axis-aligned box in (t, theta, y); E-type sets have t0 = t1 = 0.
struct Box3 {
    double t0, t1;
    double x0, x1;
    double y0, y1;
};

struct SmallnessTrial {
    double sup_K = 0.0;
    double sup_E = 0.0;
    double sup_Omega = 0.0;
};

struct SmallnessFit {
    double C = 0.0;
    double alpha = 0.0;
    int trials_used = 0;
    int trials_skipped = 0;
    std::vector<SmallnessTrial> trials;
};

struct SmallnessConfig {
    Box3 K;
    Box3 E;
    Box3 Omega;
    double T = 1.0;
    int t_points = 33;
    int n_theta = 48;
    int n_trials = 20;
    double lambda_lo = 2.0;
    double lambda_hi = 8.0;
    Exec exec = Exec::serial;
};

// Gradient three-quantity experiment: over seeded random windows, measures
// sup |grad_(t,x,y) W| on K, E (t = 0 slice, where the gradient reduces to
// |Pi_Lambda u|) and Omega, then fits sup_K <= C sup_E^alpha sup_Omega^(1-alpha)
// by log-linear regression with C raised until every trial satisfies it.
SmallnessFit smallness_experiment(const ModeBasis& basis, const SmallnessConfig& cfg,
                                  std::uint64_t seed);

} // namespace hyplab
