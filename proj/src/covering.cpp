#include "hyplab/covering.hpp"

#include <algorithm>
#include <cmath>

#include "hyplab/csvio.hpp"

namespace hyplab {

HPoint region_sample(const Region& region, double u, double v) {
    if (const auto* r = std::get_if<AmbientRect>(&region)) {
        const Rect& q = r->rect;
        double x = q.x0 + u * (q.x1 - q.x0);
        // Inverse CDF of the 1/y^2 marginal.
        double y = 1.0 / (1.0 / q.y0 - v * (1.0 / q.y0 - 1.0 / q.y1));
        return HPoint(x, y);
    }
    if (const auto* c = std::get_if<CuspRegion>(&region)) {
        double a = c->end.cusp_floor();
        double x = -0.5 + u;
        double y = 1.0 / (1.0 / a - v * (1.0 / a - 1.0 / c->y_max));
        return HPoint(x, y);
    }
    const auto& f = std::get<FunnelRegion>(region);
    double r = std::exp(f.end.length() * u); // 1/r density -> log-uniform
    double S = -1.0 / std::tan(f.phi_max()); // integral of 1/sin^2 from pi/2
    double t = v * S;
    double phi = (t <= 0.0) ? M_PI / 2 : M_PI - std::atan(1.0 / t);
    return HPoint(r * std::cos(phi), r * std::sin(phi));
}

double region_distance(const Region& region, const HPoint& p, const HPoint& q) {
    if (std::holds_alternative<AmbientRect>(region)) return dist(p, q);
    const EndModel* end = region_end(region);
    return quotient_distance(QuotientPoint{p}, QuotientPoint{q}, *end);
}

double region_area(const Region& region) {
    if (const auto* r = std::get_if<AmbientRect>(&region)) return r->rect.hyp_measure();
    if (const auto* c = std::get_if<CuspRegion>(&region))
        return 1.0 * (1.0 / c->end.cusp_floor() - 1.0 / c->y_max);
    const auto& f = std::get<FunnelRegion>(region);
    return f.end.length() * (-1.0 / std::tan(f.phi_max()));
}

const EndModel* region_end(const Region& region) {
    if (const auto* c = std::get_if<CuspRegion>(&region)) return &c->end;
    if (const auto* f = std::get_if<FunnelRegion>(&region)) return &f->end;
    return nullptr;
}

SeparatedSet build_maximal_separated(const Region& region, double R, long sample_count,
                                     std::uint64_t seed) {
    if (!(R > 0.0)) throw ValidationError("build_maximal_separated requires R > 0");
    if (sample_count <= 0 || !(region_area(region) > 0.0))
        throw EmptyRegion("build_maximal_separated: empty region or sample stream");

    SeparatedSet s{region, R, {}};
    R2Sequence stream(seed);
    for (long i = 0; i < sample_count; ++i) {
        double u, v;
        stream.point(static_cast<std::uint64_t>(i), u, v);
        HPoint p = region_sample(region, u, v);
        bool separated = true;
        for (const HPoint& c : s.centers) {
            if (region_distance(region, p, c) < R) {
                separated = false;
                break;
            }
        }
        if (separated) s.centers.push_back(p);
    }
    if (s.centers.empty()) throw EmptyRegion("build_maximal_separated produced no centers");
    return s;
}

CoverReport verify_covering(const SeparatedSet& s, long probe_count, std::uint64_t seed,
                            Exec exec) {
    CoverReport rep;
    rep.probes = probe_count;
    R2Sequence stream(seed ^ 0x5bf0371337ull);
    std::vector<char> hit(static_cast<std::size_t>(probe_count), 0);
    std::vector<HPoint> probes;
    probes.reserve(static_cast<std::size_t>(probe_count));
    for (long i = 0; i < probe_count; ++i) {
        double u, v;
        stream.point(static_cast<std::uint64_t>(i), u, v);
        probes.push_back(region_sample(s.region, u, v));
    }
    for_each_index(exec, probes.size(), [&](std::size_t i) {
        for (const HPoint& c : s.centers) {
            if (region_distance(s.region, probes[i], c) < s.R) {
                hit[i] = 1;
                return;
            }
        }
    });
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (hit[i])
            ++rep.covered;
        else if (rep.violators.size() < 32)
            rep.violators.push_back(probes[i]);
    }
    rep.coverage = probe_count > 0 ? static_cast<double>(rep.covered) / probe_count : 1.0;
    return rep;
}

long intersection_number(const SeparatedSet& s, double r, Exec exec) {
    std::vector<long> counts(s.centers.size(), 0);
    for_each_index(exec, s.centers.size(), [&](std::size_t i) {
        long n = 0;
        for (std::size_t j = 0; j < s.centers.size(); ++j)
            if (region_distance(s.region, s.centers[i], s.centers[j]) < r) ++n;
        counts[i] = n;
    });
    long best = 0;
    for (long c : counts) best = std::max(best, c);
    return best;
}

void write_covering_csv(const SeparatedSet& s, const std::string& path,
                        std::uint64_t config_hash) {
    CsvWriter w(path, {"x", "y", "R"}, config_hash);
    for (const HPoint& c : s.centers) w.row({c.x, c.y, s.R});
}

} // namespace hyplab
