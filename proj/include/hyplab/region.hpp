#pragma once

#include <cmath>
#include <optional>
#include <variant>

#include "hyplab/geom.hpp"
#include "hyplab/quotient.hpp"
#include "hyplab/rng.hpp"

namespace hyplab {

// Sampling domains for coverings and thickness profiles. Distances within a
// quotient region are quotient distances (coverings wrap around the ends).

struct AmbientRect {
    Rect rect;
};

struct CuspRegion {
    EndModel end;
    double y_max; // sampling cap; the domain itself is unbounded

    CuspRegion(EndModel e, double ymax) : end(e), y_max(ymax) {
        if (e.kind() != EndModel::Kind::cusp)
            throw ValidationError("CuspRegion requires a cusp end");
        if (!(y_max > e.cusp_floor())) throw ValidationError("CuspRegion: y_max too small");
    }
};

struct FunnelRegion {
    EndModel end;
    double depth; // max hyperbolic distance from the core geodesic

    FunnelRegion(EndModel e, double d) : end(e), depth(d) {
        if (e.kind() != EndModel::Kind::funnel)
            throw ValidationError("FunnelRegion requires a funnel end");
        if (!(depth > 0.0)) throw ValidationError("FunnelRegion: depth must be positive");
    }

    // Angular bound: points at distance <= depth from the axis satisfy
    // phi in [pi/2, 2 atan(e^depth)].
    double phi_max() const { return 2.0 * std::atan(std::exp(depth)); }
};

using Region = std::variant<AmbientRect, CuspRegion, FunnelRegion>;

// Map (u, v) in the unit square to a dvol-uniform sample of the region.
HPoint region_sample(const Region& region, double u, double v);

// Distance appropriate for the region (ambient or quotient).
double region_distance(const Region& region, const HPoint& p, const HPoint& q);

double region_area(const Region& region);

const EndModel* region_end(const Region& region);

} // namespace hyplab
