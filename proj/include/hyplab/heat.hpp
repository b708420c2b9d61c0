#pragma once

#include <string>
#include <vector>

#include "hyplab/sensor.hpp"
#include "hyplab/spectral.hpp"

namespace hyplab {

// Geometric constants of a Ricci-bounded manifold: the doubling constant
// C_D and the Gaussian heat-kernel envelope constants C1, C2. Defaults are
// certified for the hyperbolic plane (C_D = 4 from the exact doubling ratio;
// C1, C2 from envelope_fit against the exact kernel).
struct CurvatureParams {
    int n = 2;
    double K = 1.0;
    double C_D = 4.0;
    double C1 = 0.0;
    double C2 = 0.0;
};

struct DoublingCheck {
    double r = 0.0;
    double ratio = 0.0;    // vol(B(2r)) / vol(B(r)) = 4 cosh^2(r/2) on H^2
    double envelope = 0.0; // C_D e^{C_D r}
    bool ok = false;
};

// Exact-volume verification of the doubling inequality with C_D = 4, plus
// the n-fold dilation iterate.
std::vector<DoublingCheck> doubling_check(const std::vector<double>& r_grid, double C_D = 4.0);

// vol(B(2^n r)) <= C_D^n exp(C_D (2^n - 1) r) vol(B(r)) checked exactly.
bool dilation_iterate_check(double r, int n, double C_D = 4.0);

// Proof-side lower bound for the quotient of Gaussian integrals:
// e^{-alpha} / (1 + sum_{n>=0} exp(2^{n+1} C_D - 4^n beta) C_D^{n+1}).
double gaussian_quotient_bound(double alpha, double beta, double C_D);

// Radial integral 2 pi int_0^inf e^{-a s^2} sinh s ds over H^2.
double gaussian_radial_integral(double alpha);

// Error-function closed form of the same integral.
double gaussian_radial_closed_form(double alpha);

// Quotient of the two radial integrals (center independent by homogeneity).
double gaussian_quotient_numeric(double alpha, double beta);

// Exact heat kernel of H^2 (McKean integral) at geodesic distance d, time t.
double h2_heat_kernel(double d, double t);

struct EnvelopeFit {
    double C1 = 0.0;
    double C2 = 0.0;
    bool feasible = false;
};

// Smallest grid pair (C1, C2), in the max(C1, C2) order, such that the
// Gaussian upper and lower kernel envelopes hold at every (d, t) sample.
EnvelopeFit envelope_fit(const std::vector<double>& d_grid, const std::vector<double>& t_grid,
                         Exec exec = Exec::serial);

struct ObservabilityConstant {
    double value = 0.0;
    bool singular = false; // Q not positive definite: reported +inf
    int modes = 0;
};

// Final-time observability constant for the heat flow on the truncated cusp:
// largest mu with D c = mu Q c, D = diag(e^{-2 lambda^2 T}),
// Q_jk = G^omega_jk (1 - e^{-(l_j^2+l_k^2) T}) / (l_j^2 + l_k^2).
ObservabilityConstant observability_constant(const SensorSet& omega, double T,
                                             const ModeBasis& basis, double lambda_cap,
                                             Exec exec = Exec::serial);

// The full constant pipeline of the necessity argument.
struct NecessityParams {
    double t_K = 0.0;
    double alpha_K = 0.0;
    double beta_K = 0.0;
    double m_K = 0.0;
    double M_K = 0.0;
    double Mp_K = 0.0; // M'_K
    double R = 0.0;
    double delta = 0.0;
};

NecessityParams necessity_pipeline(const CurvatureParams& cp);

std::string necessity_json(const NecessityParams& np, const CurvatureParams& cp);

} // namespace hyplab
