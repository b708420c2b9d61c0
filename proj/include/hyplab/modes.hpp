#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyplab/errors.hpp"

namespace hyplab {

// Truncated cusp S^1_theta x (a, Y) with metric (dtheta^2 + dy^2)/y^2 and
// Dirichlet conditions at both heights. The truncation at y = Y models the
// infinite cusp; Y is a parameter so its influence can be studied.
struct TruncatedCusp {
    double a = 1.0;
    double Y = 20.0;
    int n = 800;      // interior radial grid points
    int k_max = 8;    // angular Fourier cutoff

    void validate() const {
        if (!(a > 0.0) || !(Y > a)) throw ValidationError("TruncatedCusp requires 0 < a < Y");
        if (n < 16) throw ValidationError("TruncatedCusp requires n >= 16");
        if (k_max < 0) throw ValidationError("TruncatedCusp requires k_max >= 0");
    }
};

enum class Trig { cosine, sine };

// One Laplace-Beltrami eigenpair: angular factor cos(2 pi k theta) or
// sin(2 pi k theta) and a radial profile with -f'' + 4 pi^2 k^2 f = lambda^2 f / y^2.
// The full mode has unit L^2(dtheta dy / y^2) norm.
struct EigenMode {
    int k = 0;
    Trig trig = Trig::cosine;
    int m = 0;          // radial index within the (k, trig) family, from 1
    double lambda = 0.0; // frequency; lambda^2 is the -Delta eigenvalue
    Eigen::VectorXd radial;
};

struct ModeBasis {
    TruncatedCusp domain;
    std::vector<double> y;   // interior grid
    double h = 0.0;          // grid spacing
    std::vector<EigenMode> modes; // sorted by lambda, ties by (k, trig)

    // Angular factor of mode j at angle theta (orthonormal on S^1).
    static double angular(const EigenMode& mode, double theta);

    // Mode value at (theta, y_i).
    double value(std::size_t j, double theta, int yi) const {
        return modes[j].radial[yi] * angular(modes[j], theta);
    }
};

// Solve the per-k Sturm-Liouville problems with second-order central
// differences, symmetrized to M^{-1/2} A M^{-1/2} (a symmetric tridiagonal
// eigenproblem). Retains modes with lambda <= lambda_cap, at most
// max_modes_per_k per (k, trig) family.
ModeBasis solve_modes(const TruncatedCusp& domain, double lambda_cap,
                      int max_modes_per_k = 1 << 20);

// Portable cache: a CSV whose first comment line is a JSON header.
void save_basis(const ModeBasis& basis, const std::string& path);
ModeBasis load_basis(const std::string& path);

} // namespace hyplab
