#include "cellshape/contour.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numbers>
#include <string>

namespace cellshape {

namespace {

constexpr double kAxisGapTolerance = 1e-12;
// Below this relative third moment the shape is treated as symmetric along
// its major axis and the direction is left as found.
constexpr double kSkewTolerance = 1e-8;

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
}

struct Moments {
    Point2 center;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
};

/// Second moments of the boundary taken as a uniform wire; independent of
/// where the vertex list starts.
Moments wire_moments(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    double total = 0.0;
    Point2 first;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = pts[i], q = pts[(i + 1) % n];
        const double len = distance(p, q);
        total += len;
        first += (0.5 * len) * (p + q);
    }
    Moments m;
    m.center = (1.0 / total) * first;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = pts[i] - m.center, q = pts[(i + 1) % n] - m.center;
        const double len = distance(p, q);
        m.sxx += len * (p.x * p.x + p.x * q.x + q.x * q.x) / 3.0;
        m.syy += len * (p.y * p.y + p.y * q.y + q.y * q.y) / 3.0;
        m.sxy += len * (2.0 * p.x * p.y + p.x * q.y + q.x * p.y + 2.0 * q.x * q.y) / 6.0;
    }
    m.sxx /= total;
    m.syy /= total;
    m.sxy /= total;
    return m;
}

AxisEstimate axis_from_covariance(double sxx, double sxy, double syy) {
    const double trace = sxx + syy;
    const double gap = std::hypot(sxx - syy, 2.0 * sxy);
    if (!(trace > 0.0) || gap < kAxisGapTolerance * trace) {
        return {0.0, true};
    }
    double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    if (angle < 0.0) {
        angle += std::numbers::pi;
    }
    if (angle >= std::numbers::pi) {
        angle -= std::numbers::pi;
    }
    return {angle, false};
}

/// Third central moment of x along the boundary wire, relative to sigma_x^3.
double wire_skew_x(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    const Moments m = wire_moments(pts);
    double total = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pts[i].x - m.center.x, q = pts[(i + 1) % n].x - m.center.x;
        const double len = distance(pts[i], pts[(i + 1) % n]);
        total += len;
        m3 += len * (p * p * p + p * p * q + p * q * q + q * q * q) / 4.0;
    }
    m3 /= total;
    const double sigma = std::sqrt(m.sxx);
    return sigma > 0.0 ? m3 / (sigma * sigma * sigma) : 0.0;
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

std::size_t argmax_x(std::span<const Point2> pts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].x > pts[best].x) {
            best = i;
        }
    }
    return best;
}

/// Walks the closed polygon with fixed chord length, one step per sample.
class ChordWalker {
public:
    explicit ChordWalker(std::span<const Point2> poly) : poly_(poly) {
        edge_len_.resize(poly.size());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            edge_len_[i] = distance(poly[i], poly[(i + 1) % poly.size()]);
            total_ += edge_len_[i];
        }
    }

    double total_length() const { return total_; }

    /// Arc position reached after `steps` chords of length h, optionally
    /// recording the visited points (the start included).
    double walk(double h, std::size_t steps, Polyline* out) const {
        const std::size_t m = poly_.size();
        std::size_t edge = 0;
        double u = 0.0;
        double arc_before_edge = 0.0;  // unwrapped arc length at the start of `edge`
        std::size_t laps_edges = 0;
        Point2 current = poly_[0];
        if (out) {
            out->clear();
            out->push_back(current);
        }
        for (std::size_t step = 0; step < steps; ++step) {
            for (;;) {
                const Point2 a = poly_[edge % m];
                const Point2 d = poly_[(edge + 1) % m] - a;
                const double dd = dot(d, d);
                const Point2 w = a - current;
                const double b = dot(d, w);
                const double c = dot(w, w) - h * h;
                const double disc = b * b - dd * c;
                double hit = 2.0;
                if (dd > 0.0 && disc >= 0.0) {
                    // Larger root: where the chord leaves the disc around `current`.
                    hit = (-b + std::sqrt(disc)) / dd;
                }
                if (hit >= u && hit <= 1.0) {
                    u = hit;
                    current = a + u * d;
                    break;
                }
                arc_before_edge += edge_len_[edge % m];
                ++edge;
                ++laps_edges;
                u = 0.0;
                if (laps_edges > 4 * m + 8) {
                    // Chord longer than any reachable point: report the overshoot.
                    return 4.0 * total_;
                }
            }
            if (out && step + 1 < steps) {
                out->push_back(current);
            }
        }
        return arc_before_edge + u * edge_len_[edge % m];
    }

private:
    std::span<const Point2> poly_;
    std::vector<double> edge_len_;
    double total_ = 0.0;
};

}  // namespace

std::string_view to_string(CellClass c) {
    switch (c) {
        case CellClass::Normal: return "Normal";
        case CellClass::Sickle: return "Sickle";
        case CellClass::OtherDeformation: return "Other";
        case CellClass::Unlabeled: return "Unlabeled";
    }
    return "Unlabeled";
}

Label Label::parse(std::string_view text) {
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    const std::string key = lowercase(trimmed);
    if (key == "normal" || key == "n") return {CellClass::Normal, "Normal"};
    if (key == "sickle" || key == "s") return {CellClass::Sickle, "Sickle"};
    if (key == "other" || key == "od" || key == "otherdeformation" || key == "other_deformation") {
        return {CellClass::OtherDeformation, "Other"};
    }
    return {CellClass::Unlabeled, std::string(trimmed)};
}

RawContour validated(RawContour c) {
    Polyline pts;
    pts.reserve(c.points.size());
    for (const auto& p : c.points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error("contour '" + c.id + "': non-finite coordinate");
        }
        if (pts.empty() || !(pts.back() == p)) {
            pts.push_back(p);
        }
    }
    while (pts.size() > 1 && pts.back() == pts.front()) {
        pts.pop_back();
    }
    if (pts.size() < 3) {
        throw Error("degenerate contour '" + c.id + "': fewer than 3 distinct points");
    }
    if (!is_simple_polygon(pts)) {
        throw Error("contour '" + c.id + "' is self-intersecting");
    }
    c.points = std::move(pts);
    return c;
}

RawContour orient_ccw(RawContour c) {
    const double area = signed_area(c.points);
    const double len = perimeter(c.points);
    if (!(std::abs(area) > 1e-14 * len * len)) {
        throw Error("degenerate (collinear) contour '" + c.id + "'");
    }
    if (area < 0.0) {
        std::reverse(c.points.begin() + 1, c.points.end());
    }
    return c;
}

RawContour resample_equidistant(const RawContour& c, std::size_t n) {
    if (n < 3) {
        throw Error("resample: need at least 3 samples, got " + std::to_string(n));
    }
    if (c.points.size() < 3) {
        throw Error("resample: degenerate contour '" + c.id + "'");
    }
    const ChordWalker walker(c.points);
    const double total = walker.total_length();
    // Arc covered by n chords grows with the chord length; h = total/n covers
    // at least the full loop because chords never exceed the arcs they span.
    double lo = 0.0, hi = total / static_cast<double>(n);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (walker.walk(mid, n, nullptr) < total) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RawContour out{c.id, {}, c.label};
    walker.walk(0.5 * (lo + hi), n, &out.points);
    return out;
}

AxisEstimate principal_axis(std::span<const Point2> points) {
    if (points.size() < 3) {
        throw Error("principal_axis: need at least 3 points");
    }
    const Point2 c = vertex_centroid(points);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const Point2 d = p - c;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    const double inv = 1.0 / static_cast<double>(points.size());
    return axis_from_covariance(sxx * inv, sxy * inv, syy * inv);
}

NormalizedCurve align_and_fix_start(const Polyline& curve, CurveMeta meta) {
    Polyline pts = curve;
    const AxisEstimate axis = principal_axis(pts);
    meta.degenerate_axis = axis.degenerate;
    if (!axis.degenerate) {
        // Smallest rotation that lays the axis on x.
        double angle = axis.angle > std::numbers::pi / 2 ? axis.angle - std::numbers::pi : axis.angle;
        pts = transformed(pts, Mat2::rotation(-angle));
        if (wire_skew_x(pts) < -kSkewTolerance) {
            pts = transformed(pts, Mat2::rotation(std::numbers::pi));
            angle += std::numbers::pi;
        }
        meta.rotation = wrap_angle(meta.rotation + angle);
    }
    NormalizedCurve out;
    out.points = cyclic_shift(pts, argmax_x(pts));
    out.meta = std::move(meta);
    return out;
}

NormalizedCurve normalize(const RawContour& c, std::size_t n) {
    if (n < 3) {
        throw Error("normalize: need at least 3 samples");
    }
    RawContour ccw = orient_ccw(validated(c));

    // Coarse alignment from the polygon itself so that the anchor vertex does
    // not depend on where the input list starts.
    const Moments m = wire_moments(ccw.points);
    const AxisEstimate axis = axis_from_covariance(m.sxx, m.sxy, m.syy);
    double rotation = axis.degenerate ? 0.0 : axis.angle;
    Polyline local = transformed(ccw.points, Mat2::rotation(-rotation), {});
    if (!axis.degenerate && wire_skew_x(local) < -kSkewTolerance) {
        rotation += std::numbers::pi;
        local = transformed(ccw.points, Mat2::rotation(-rotation), {});
    }

    std::size_t anchor = 0;
    const Point2 center = Mat2::rotation(-rotation) * m.center;
    for (std::size_t i = 1; i < local.size(); ++i) {
        const double dx = local[i].x - local[anchor].x;
        if (dx > 0.0 || (dx == 0.0 && std::abs(local[i].y - center.y) < std::abs(local[anchor].y - center.y))) {
            anchor = i;
        }
    }
    ccw.points = cyclic_shift(local, anchor);

    RawContour sampled = resample_equidistant(ccw, n);
    const Point2 centroid = vertex_centroid(sampled.points);
    for (auto& p : sampled.points) {
        p -= centroid;
    }
    const double scale = 1.0 / perimeter(sampled.points);
    for (auto& p : sampled.points) {
        p = scale * p;
    }

    CurveMeta meta{c.id, c.label, wrap_angle(rotation), axis.degenerate};
    NormalizedCurve out = align_and_fix_start(sampled.points, meta);
    out.meta.degenerate_axis = out.meta.degenerate_axis || axis.degenerate;
    return out;
}

RawContour as_raw(const NormalizedCurve& c) { return RawContour{c.meta.source_id, c.points, c.meta.label}; }

NormalizedCurve shifted(const NormalizedCurve& c, std::size_t s) {
    return NormalizedCurve{cyclic_shift(c.points, s % c.size()), c.meta};
}

}  // namespace cellshape
