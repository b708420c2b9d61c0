#pragma once

#include <functional>
#include <vector>

#include "hyplab/exec.hpp"
#include "hyplab/modes.hpp"
#include "hyplab/sensor.hpp"

namespace hyplab {

// Frequency-window content of a function expressed in a ModeBasis: the
// coefficients of the modes with lambda <= Lambda.
struct SpectralWindow {
    const ModeBasis* basis = nullptr;
    double lambda = 0.0;            // window threshold
    std::vector<int> mode_index;    // indices into basis->modes, lambda sorted
    std::vector<double> coeff;

    double norm_sq() const {
        double s = 0.0;
        for (double c : coeff) s += c * c;
        return s;
    }
    double lambda_max() const {
        return mode_index.empty() ? 0.0
                                  : basis->modes[mode_index.back()].lambda;
    }
};

// Truncation of a full coefficient vector (aligned with basis.modes) to the
// frequency window [0, Lambda]. Idempotent and norm nonincreasing.
SpectralWindow project(const ModeBasis& basis, const std::vector<double>& coeffs,
                       double lambda);

struct MultiplierCheck {
    double lhs = 0.0; // ||phi(sqrt(-Delta)) Pi_Lambda u||
    double sup = 0.0; // sup of |phi| over [0, Lambda]
    double rhs = 0.0; // sup * ||Pi_Lambda u||
    bool ok = false;
};

// Functional-calculus contraction: diagonal multipliers are bounded by the
// sup of the symbol on the window.
MultiplierCheck multiplier_bound_check(const std::function<double(double)>& phi,
                                       const SpectralWindow& window, int sup_grid = 4096);

struct SpectralConstant {
    double value = 0.0;     // C(Lambda) = lambda_min(G)^{-1/2}
    double gram_min = 0.0;  // smallest Gram eigenvalue
    bool singular = false;  // lambda_min at or below tolerance: C reported +inf
    int modes = 0;
};

// Optimal spectral-estimate constant over the window: the Gram matrix of the
// modes in L^2(omega) is assembled with exact theta-integrals on the omega
// cross-sections, and C = lambda_min(G)^{-1/2}.
SpectralConstant spectral_constant(const SensorSet& omega, double lambda,
                                   const ModeBasis& basis, Exec exec = Exec::serial,
                                   double singular_tol = 1e-12);

// The Gram matrix itself (shared with the observability module).
Eigen::MatrixXd gram_matrix(const SensorSet& omega, const std::vector<int>& mode_index,
                            const ModeBasis& basis, Exec exec = Exec::serial);

struct ExpFit {
    double C0 = 0.0;      // prefactor
    double rate = 0.0;    // exponent slope
    double residual = 0.0; // rms residual of the log fit
};

// Least squares on log C = log C0 + rate * Lambda.
ExpFit fit_exponential(const std::vector<double>& lambdas, const std::vector<double>& values);

} // namespace hyplab
