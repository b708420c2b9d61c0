#pragma once

#include <cstdint>
#include <string_view>

namespace hyplab {

// Counter-based generator: value i of a stream is a pure function of
// (seed, stream, i), so draws are reproducible independently of evaluation
// order and of the number of worker threads. Core mixer is SplitMix64.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : base_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ull))) {}

    // Named streams: hash the label into a stream id.
    CounterRng(std::uint64_t seed, std::string_view stream_name) noexcept
        : CounterRng(seed, fnv1a(stream_name)) {}

    std::uint64_t bits(std::uint64_t i) const noexcept {
        return mix(base_ + (i + 1) * 0x9e3779b97f4a7c15ull);
    }

    // Uniform in [0, 1).
    double uniform(std::uint64_t i) const noexcept {
        return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(std::uint64_t i, double lo, double hi) const noexcept {
        return lo + (hi - lo) * uniform(i);
    }

    static std::uint64_t fnv1a(std::string_view s) noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
};

// Additive low-discrepancy sequence on the unit square (generalized golden
// ratio), with a seed-dependent offset so different seeds explore different
// rotations of the same net.
class R2Sequence {
public:
    explicit R2Sequence(std::uint64_t seed) noexcept {
        CounterRng r(seed, "r2-offset");
        ox_ = r.uniform(0);
        oy_ = r.uniform(1);
    }

    void point(std::uint64_t i, double& u, double& v) const noexcept {
        // 1/phi_2 and 1/phi_2^2 where phi_2 is the plastic constant.
        constexpr double a1 = 0.7548776662466927;
        constexpr double a2 = 0.5698402909980532;
        double x = ox_ + a1 * static_cast<double>(i + 1);
        double y = oy_ + a2 * static_cast<double>(i + 1);
        u = x - static_cast<std::uint64_t>(x);
        v = y - static_cast<std::uint64_t>(y);
    }

private:
    double ox_, oy_;
};

} // namespace hyplab
