#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyplab/region.hpp"
#include "hyplab/sensor.hpp"

namespace hyplab {

// A geodesic ball, either in the ambient half-plane or around a point of a
// quotient end (in the latter case the metric ball wraps around the end).
struct BallSpec {
    HPoint center;
    double radius;
    const EndModel* end = nullptr; // nullptr: ambient ball

    BallSpec(HPoint c, double r) : center(c), radius(r) {}
    BallSpec(HPoint c, double r, const EndModel& e) : center(c), radius(r), end(&e) {}
};

struct MeasureOptions {
    double rel_tol = 1e-6;
    long mc_samples = 100000; // Monte Carlo cross-check path
    Exec exec = Exec::serial;
};

// vol(ball ∩ omega) by exact x-cross-sections and adaptive quadrature in y.
double measure_intersection(const SensorSet& omega, const BallSpec& ball,
                            const MeasureOptions& opts = {});

// Same quantity by seeded Monte Carlo; independent of the quadrature path.
double measure_intersection_mc(const SensorSet& omega, const BallSpec& ball,
                               std::uint64_t seed, long samples);

// vol(ball) through the same machinery (wrapping shrinks quotient balls).
double ball_measure(const BallSpec& ball, const MeasureOptions& opts = {});

struct CenterRow {
    double x, y;
    double vol_ball;
    double vol_cap;
    double ratio;
};

struct ThicknessReport {
    double R = 0.0;
    double delta_min = 1.0;         // min of the ratio column
    double abs_min = 0.0;           // min of vol(B ∩ omega): the absolute-mass variant
    std::size_t argmin = 0;         // row index of the ratio minimizer
    std::vector<CenterRow> rows;
    double y_max = 0.0;             // cusp sampling cap, 0 if not applicable
    bool unverified_above_ymax = false;
};

struct ProfileOptions {
    int strata_x = 64;
    int strata_y = 64;
    double y_max = 1e3;    // cusp center heights sampled geometrically up to here
    MeasureOptions measure;
};

// Evaluate the thickness ratio at stratified centers (plus adversarial
// centers on primitive boundaries) and report the minimum. The inf over all
// centers is approximated; the argmin is exposed for local refinement.
ThicknessReport thickness_profile(const SensorSet& omega, const Region& region, double R,
                                  long center_samples, std::uint64_t seed,
                                  const ProfileOptions& opts = {});

inline bool is_thick(const ThicknessReport& report, double delta) {
    return report.delta_min >= delta;
}

void write_thickness_csv(const ThicknessReport& report, const std::string& path,
                         std::uint64_t config_hash);
std::string thickness_json(const ThicknessReport& report);

} // namespace hyplab
