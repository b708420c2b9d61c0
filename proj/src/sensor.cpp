#include "hyplab/sensor.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "hyplab/errors.hpp"

namespace hyplab {

namespace {
constexpr int kMaxDepth = 32;

double wrap_half(double x) { return x - std::floor(x + 0.5); } // into [-1/2, 1/2)
double frac(double x) { return x - std::floor(x); }            // into [0, 1)
} // namespace

SensorSet SensorSet::all() {
    SensorSet s;
    s.kind_ = Kind::all;
    return s;
}

SensorSet SensorSet::none() {
    SensorSet s;
    s.kind_ = Kind::none;
    return s;
}

SensorSet SensorSet::chart_rect(double x0, double x1, double y0, double y1) {
    if (!(x1 >= x0 && y1 >= y0)) throw ValidationError("sensor rect: degenerate bounds");
    SensorSet s;
    s.kind_ = Kind::rect;
    s.p0_ = x0;
    s.p1_ = x1;
    s.p2_ = y0;
    s.p3_ = y1;
    return s;
}

SensorSet SensorSet::euclidean_disk(double cx, double cy, double r) {
    if (!(r > 0.0)) throw ValidationError("sensor disk: radius must be positive");
    SensorSet s;
    s.kind_ = Kind::disk;
    s.p0_ = cx;
    s.p1_ = cy;
    s.p2_ = r;
    return s;
}

SensorSet SensorSet::half_plane(double a, double b, double c) {
    if (a == 0.0 && b == 0.0) throw ValidationError("sensor halfplane: zero normal");
    SensorSet s;
    s.kind_ = Kind::halfplane;
    s.p0_ = a;
    s.p1_ = b;
    s.p2_ = c;
    return s;
}

SensorSet SensorSet::theta_strip(double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
        throw ValidationError("sensor strip: requires 0 <= lo < hi <= 1");
    SensorSet s;
    s.kind_ = Kind::strip;
    s.p0_ = lo;
    s.p1_ = hi;
    return s;
}

SensorSet SensorSet::unite(std::vector<SensorSet> parts) {
    SensorSet s;
    s.kind_ = Kind::union_;
    s.children_ = std::move(parts);
    if (s.depth() > kMaxDepth) throw ValidationError("sensor expression exceeds depth 32");
    return s;
}

SensorSet SensorSet::intersect(std::vector<SensorSet> parts) {
    SensorSet s;
    s.kind_ = Kind::intersection;
    s.children_ = std::move(parts);
    if (s.depth() > kMaxDepth) throw ValidationError("sensor expression exceeds depth 32");
    return s;
}

SensorSet SensorSet::complement(SensorSet inner) {
    SensorSet s;
    s.kind_ = Kind::complement;
    s.children_.push_back(std::move(inner));
    if (s.depth() > kMaxDepth) throw ValidationError("sensor expression exceeds depth 32");
    return s;
}

SensorSet SensorSet::with_periodic(bool flag) const {
    SensorSet s = *this;
    s.periodic_ = flag;
    return s;
}

int SensorSet::depth() const {
    int d = 0;
    for (const SensorSet& c : children_) d = std::max(d, c.depth());
    return d + 1;
}

bool SensorSet::contains(double x, double y) const {
    return contains_raw(periodic_ ? wrap_half(x) : x, y);
}

bool SensorSet::contains_raw(double x, double y) const {
    switch (kind_) {
        case Kind::all:
            return true;
        case Kind::none:
            return false;
        case Kind::rect:
            return x >= p0_ && x <= p1_ && y >= p2_ && y <= p3_;
        case Kind::disk: {
            double dx = x - p0_, dy = y - p1_;
            return dx * dx + dy * dy < p2_ * p2_;
        }
        case Kind::halfplane:
            return p0_ * x + p1_ * y <= p2_;
        case Kind::strip: {
            double t = frac(x);
            return t >= p0_ && t < p1_;
        }
        case Kind::union_:
            for (const SensorSet& c : children_)
                if (c.contains_raw(x, y)) return true;
            return false;
        case Kind::intersection:
            for (const SensorSet& c : children_)
                if (!c.contains_raw(x, y)) return false;
            return !children_.empty();
        case Kind::complement:
            return !children_.front().contains_raw(x, y);
    }
    return false;
}

IntervalSet SensorSet::cross_section(double y, double lo, double hi) const {
    if (hi <= lo) return IntervalSet::empty();
    if (!periodic_) return cross_section_raw(y, lo, hi);
    // Split the span at period boundaries; each piece is shifted into the
    // base period [-1/2, 1/2) and shifted back.
    IntervalSet out;
    double a = lo;
    while (a < hi - 1e-15) {
        double k = std::floor(a + 0.5);
        double b = std::min(hi, k + 0.5);
        if (b <= a) b = std::min(hi, a + 1.0);
        IntervalSet piece = cross_section_raw(y, a - k, b - k);
        for (const auto& iv : piece.parts()) out.add(iv.lo + k, iv.hi + k);
        a = b;
    }
    out.normalize();
    return out;
}

IntervalSet SensorSet::cross_section_raw(double y, double lo, double hi) const {
    switch (kind_) {
        case Kind::all:
            return IntervalSet::single(lo, hi);
        case Kind::none:
            return IntervalSet::empty();
        case Kind::rect:
            if (y < p2_ || y > p3_) return IntervalSet::empty();
            return IntervalSet::single(std::max(lo, p0_), std::min(hi, p1_));
        case Kind::disk: {
            double dy = y - p1_;
            double w2 = p2_ * p2_ - dy * dy;
            if (w2 <= 0.0) return IntervalSet::empty();
            double w = std::sqrt(w2);
            return IntervalSet::single(std::max(lo, p0_ - w), std::min(hi, p0_ + w));
        }
        case Kind::halfplane: {
            if (p0_ == 0.0)
                return (p1_ * y <= p2_) ? IntervalSet::single(lo, hi) : IntervalSet::empty();
            double t = (p2_ - p1_ * y) / p0_;
            if (p0_ > 0.0) return IntervalSet::single(lo, std::min(hi, t));
            return IntervalSet::single(std::max(lo, t), hi);
        }
        case Kind::strip: {
            IntervalSet s;
            for (double k = std::floor(lo) - 1.0; k <= std::ceil(hi) + 1.0; k += 1.0) {
                double l = std::max(lo, k + p0_), h = std::min(hi, k + p1_);
                if (h > l) s.add(l, h);
            }
            s.normalize();
            return s;
        }
        case Kind::union_: {
            IntervalSet s;
            for (const SensorSet& c : children_)
                s = IntervalSet::unite(s, c.cross_section_raw(y, lo, hi));
            return s;
        }
        case Kind::intersection: {
            if (children_.empty()) return IntervalSet::empty();
            IntervalSet s = children_.front().cross_section_raw(y, lo, hi);
            for (std::size_t i = 1; i < children_.size(); ++i)
                s = IntervalSet::intersect(s, children_[i].cross_section_raw(y, lo, hi));
            return s;
        }
        case Kind::complement:
            return IntervalSet::complement(children_.front().cross_section_raw(y, lo, hi), lo,
                                           hi);
    }
    return IntervalSet::empty();
}

void SensorSet::collect_probes(const Rect& window,
                               std::vector<std::pair<double, double>>& out) const {
    auto push = [&](double x, double y) {
        if (x >= window.x0 && x <= window.x1 && y >= window.y0 && y <= window.y1)
            out.emplace_back(x, y);
    };
    switch (kind_) {
        case Kind::rect:
            for (double x : {p0_, 0.5 * (p0_ + p1_), p1_})
                for (double y : {p2_, 0.5 * (p2_ + p3_), p3_}) push(x, y);
            break;
        case Kind::disk:
            for (int j = 0; j < 8; ++j) {
                double th = 2.0 * M_PI * j / 8.0;
                push(p0_ + p2_ * std::cos(th), p1_ + p2_ * std::sin(th));
            }
            push(p0_, p1_);
            break;
        case Kind::halfplane: {
            // Points on the boundary line inside the window.
            for (int j = 0; j <= 4; ++j) {
                double t = static_cast<double>(j) / 4.0;
                if (p1_ != 0.0) {
                    double x = window.x0 + t * (window.x1 - window.x0);
                    push(x, (p2_ - p0_ * x) / p1_);
                }
                if (p0_ != 0.0) {
                    double y = window.y0 + t * (window.y1 - window.y0);
                    push((p2_ - p1_ * y) / p0_, y);
                }
            }
            break;
        }
        case Kind::strip: {
            for (int j = 0; j <= 4; ++j) {
                double y = window.y0 * std::pow(window.y1 / std::max(window.y0, 1e-12),
                                                static_cast<double>(j) / 4.0);
                push(p0_, y);
                push(p1_, y);
            }
            break;
        }
        default:
            break;
    }
    for (const SensorSet& c : children_) c.collect_probes(window, out);
}

std::vector<std::pair<double, double>> SensorSet::boundary_probes(const Rect& window) const {
    std::vector<std::pair<double, double>> out;
    collect_probes(window, out);
    return out;
}

// ---------------------------------------------------------------------------
// Text format: nested nodes "name { key = value ... children... }".

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) != 0))
            ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= s.size();
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) != 0 || s[pos] == '_'))
            ++pos;
        if (start == pos) throw ValidationError("sensor parse: expected identifier");
        return s.substr(start, pos - start);
    }

    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ValidationError(std::string("sensor parse: expected '") + c + "'");
        ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) != 0 ||
                                  s[pos] == '+' || s[pos] == '-' || s[pos] == '.' ||
                                  s[pos] == 'e' || s[pos] == 'E'))
            ++pos;
        if (start == pos) throw ValidationError("sensor parse: expected number");
        return std::stod(s.substr(start, pos - start));
    }
};

SensorSet parse_node(Parser& p, int depth);

SensorSet parse_body(Parser& p, const std::string& name, int depth) {
    if (depth > kMaxDepth) throw ValidationError("sensor expression exceeds depth 32");
    p.expect('{');
    std::map<std::string, double> kv;
    std::vector<SensorSet> children;
    while (!p.peek('}')) {
        std::string id = p.ident();
        if (p.peek('=')) {
            p.expect('=');
            kv[id] = p.number();
        } else {
            children.push_back(parse_body(p, id, depth + 1));
        }
    }
    p.expect('}');

    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ValidationError(std::string("sensor parse: missing parameter ") + key +
                                  " in " + name);
        return it->second;
    };
    auto no_children = [&]() {
        if (!children.empty())
            throw ValidationError("sensor parse: primitive " + name + " cannot have children");
    };

    if (name == "all") {
        no_children();
        return SensorSet::all();
    }
    if (name == "none") {
        no_children();
        return SensorSet::none();
    }
    if (name == "rect") {
        no_children();
        return SensorSet::chart_rect(need("x0"), need("x1"), need("y0"), need("y1"));
    }
    if (name == "disk") {
        no_children();
        return SensorSet::euclidean_disk(need("cx"), need("cy"), need("r"));
    }
    if (name == "halfplane") {
        no_children();
        return SensorSet::half_plane(need("a"), need("b"), need("c"));
    }
    if (name == "strip") {
        no_children();
        return SensorSet::theta_strip(need("lo"), need("hi"));
    }
    if (name == "union") return SensorSet::unite(std::move(children));
    if (name == "intersection") return SensorSet::intersect(std::move(children));
    if (name == "complement") {
        if (children.size() != 1)
            throw ValidationError("sensor parse: complement takes exactly one child");
        return SensorSet::complement(std::move(children.front()));
    }
    if (name == "periodic") {
        if (children.size() != 1)
            throw ValidationError("sensor parse: periodic takes exactly one child");
        return children.front().with_periodic(true);
    }
    throw ValidationError("sensor parse: unknown node '" + name + "'");
}

SensorSet parse_node(Parser& p, int depth) {
    std::string name = p.ident();
    return parse_body(p, name, depth);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

SensorSet SensorSet::parse(const std::string& text) {
    Parser p(text);
    SensorSet s = parse_node(p, 1);
    if (!p.eof()) throw ValidationError("sensor parse: trailing content");
    return s;
}

void SensorSet::serialize_node(std::string& out, int indent) const {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    switch (kind_) {
        case Kind::all:
            out += pad + "all { }\n";
            break;
        case Kind::none:
            out += pad + "none { }\n";
            break;
        case Kind::rect:
            out += pad + "rect { x0 = " + fmt(p0_) + "  x1 = " + fmt(p1_) +
                   "  y0 = " + fmt(p2_) + "  y1 = " + fmt(p3_) + " }\n";
            break;
        case Kind::disk:
            out += pad + "disk { cx = " + fmt(p0_) + "  cy = " + fmt(p1_) +
                   "  r = " + fmt(p2_) + " }\n";
            break;
        case Kind::halfplane:
            out += pad + "halfplane { a = " + fmt(p0_) + "  b = " + fmt(p1_) +
                   "  c = " + fmt(p2_) + " }\n";
            break;
        case Kind::strip:
            out += pad + "strip { lo = " + fmt(p0_) + "  hi = " + fmt(p1_) + " }\n";
            break;
        case Kind::union_:
        case Kind::intersection:
        case Kind::complement: {
            const char* name = kind_ == Kind::union_
                                   ? "union"
                                   : (kind_ == Kind::intersection ? "intersection"
                                                                  : "complement");
            out += pad + name + " {\n";
            for (const SensorSet& c : children_) c.serialize_node(out, indent + 1);
            out += pad + "}\n";
            break;
        }
    }
}

std::string SensorSet::serialize() const {
    std::string out;
    if (periodic_) {
        out += "periodic {\n";
        SensorSet inner = *this;
        inner.periodic_ = false;
        inner.serialize_node(out, 1);
        out += "}\n";
    } else {
        serialize_node(out, 0);
    }
    return out;
}

} // namespace hyplab
