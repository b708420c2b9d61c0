#pragma once

#include <algorithm>
#include <vector>

namespace hyplab {

// Finite union of disjoint closed intervals on the line, kept sorted.
// Measure-theoretic operations; endpoint overlaps are merged.
class IntervalSet {
public:
    struct Interval {
        double lo, hi;
    };

    IntervalSet() = default;

    static IntervalSet empty() { return IntervalSet(); }

    static IntervalSet single(double lo, double hi) {
        IntervalSet s;
        if (hi > lo) s.iv_.push_back({lo, hi});
        return s;
    }

    void add(double lo, double hi) {
        if (hi > lo) iv_.push_back({lo, hi});
    }

    void normalize() {
        if (iv_.empty()) return;
        std::sort(iv_.begin(), iv_.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Interval> out;
        out.push_back(iv_.front());
        for (std::size_t i = 1; i < iv_.size(); ++i) {
            if (iv_[i].lo <= out.back().hi)
                out.back().hi = std::max(out.back().hi, iv_[i].hi);
            else
                out.push_back(iv_[i]);
        }
        iv_ = std::move(out);
    }

    const std::vector<Interval>& parts() const { return iv_; }
    bool is_empty() const { return iv_.empty(); }

    double measure() const {
        double m = 0.0;
        for (const Interval& i : iv_) m += i.hi - i.lo;
        return m;
    }

    static IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
        IntervalSet s;
        s.iv_ = a.iv_;
        s.iv_.insert(s.iv_.end(), b.iv_.begin(), b.iv_.end());
        s.normalize();
        return s;
    }

    static IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
        IntervalSet s;
        std::size_t i = 0, j = 0;
        while (i < a.iv_.size() && j < b.iv_.size()) {
            double lo = std::max(a.iv_[i].lo, b.iv_[j].lo);
            double hi = std::min(a.iv_[i].hi, b.iv_[j].hi);
            if (hi > lo) s.iv_.push_back({lo, hi});
            if (a.iv_[i].hi < b.iv_[j].hi)
                ++i;
            else
                ++j;
        }
        return s;
    }

    // Complement within the span [lo, hi].
    static IntervalSet complement(const IntervalSet& a, double lo, double hi) {
        IntervalSet s;
        double cursor = lo;
        for (const Interval& i : a.iv_) {
            double l = std::max(i.lo, lo), h = std::min(i.hi, hi);
            if (h <= l) continue;
            if (l > cursor) s.iv_.push_back({cursor, l});
            cursor = std::max(cursor, h);
        }
        if (cursor < hi) s.iv_.push_back({cursor, hi});
        return s;
    }

private:
    std::vector<Interval> iv_;
};

} // namespace hyplab
