#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyplab/exec.hpp"
#include "hyplab/region.hpp"

namespace hyplab {

// Saturated R-separated family of centers in a region: pairwise distances
// are >= R, and every point of the sample stream lies within R of a center.
struct SeparatedSet {
    Region region;
    double R = 0.0;
    std::vector<HPoint> centers;
};

// Greedy insertion over a seeded low-discrepancy stream. Deterministic for a
// fixed (region, R, sample_count, seed).
SeparatedSet build_maximal_separated(const Region& region, double R, long sample_count,
                                     std::uint64_t seed);

struct CoverReport {
    long probes = 0;
    long covered = 0;
    double coverage = 0.0;
    std::vector<HPoint> violators; // capped at 32 entries
};

// Fraction of fresh probe points within R of some center.
CoverReport verify_covering(const SeparatedSet& s, long probe_count, std::uint64_t seed,
                            Exec exec = Exec::serial);

// max over centers i of #{ j : dist(x_i, x_j) < r }. For r = 2R this is the
// overlap count of the covering balls, bounded by 25 e^{2R}.
long intersection_number(const SeparatedSet& s, double r, Exec exec = Exec::serial);

void write_covering_csv(const SeparatedSet& s, const std::string& path,
                        std::uint64_t config_hash);

} // namespace hyplab
