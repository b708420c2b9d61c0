#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyplab/interval.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

// Measurable sensor set omega, as a boolean expression tree over chart
// primitives. Membership is evaluated in chart coordinates (x, y); on a cusp
// chart x plays the role of theta. When the periodic flag is set, x is
// reduced to its representative in [-1/2, 1/2) before primitive tests
// (theta-strips are periodic regardless).
class SensorSet {
public:
    enum class Kind {
        all,
        none,
        rect,
        disk,
        halfplane, // a x + b y <= c
        strip,     // frac(x) in [lo, hi), 0 <= lo < hi <= 1
        union_,
        intersection,
        complement
    };

    static SensorSet all();
    static SensorSet none();
    static SensorSet chart_rect(double x0, double x1, double y0, double y1);
    static SensorSet euclidean_disk(double cx, double cy, double r);
    static SensorSet half_plane(double a, double b, double c);
    static SensorSet theta_strip(double lo, double hi);
    static SensorSet unite(std::vector<SensorSet> parts);
    static SensorSet intersect(std::vector<SensorSet> parts);
    static SensorSet complement(SensorSet inner);

    Kind kind() const { return kind_; }
    bool periodic() const { return periodic_; }
    SensorSet with_periodic(bool flag) const;

    bool contains(double x, double y) const;

    // x cross-section at height y, clipped to the span [lo, hi]; complements
    // are taken within that span.
    IntervalSet cross_section(double y, double lo, double hi) const;

    // Characteristic points on primitive boundaries (adversarial centers for
    // thickness profiling), clipped to the window.
    std::vector<std::pair<double, double>> boundary_probes(const Rect& window) const;

    int depth() const;

    std::string serialize() const;
    static SensorSet parse(const std::string& text);

private:
    SensorSet() = default;

    Kind kind_ = Kind::none;
    bool periodic_ = false;
    double p0_ = 0, p1_ = 0, p2_ = 0, p3_ = 0; // primitive parameters
    std::vector<SensorSet> children_;

    bool contains_raw(double x, double y) const;
    IntervalSet cross_section_raw(double y, double lo, double hi) const;
    void serialize_node(std::string& out, int indent) const;
    void collect_probes(const Rect& window,
                        std::vector<std::pair<double, double>>& out) const;
};

} // namespace hyplab
