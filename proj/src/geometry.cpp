#include "cellshape/geometry.hpp"

#include <algorithm>
#include <limits>

namespace cellshape {

Svd2 svd2(const Mat2& a) {
    const double e = 0.5 * (a.a11 + a.a22);
    const double f = 0.5 * (a.a11 - a.a22);
    const double g = 0.5 * (a.a21 + a.a12);
    const double h = 0.5 * (a.a21 - a.a12);
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    const double a1 = std::atan2(g, f);
    const double a2 = std::atan2(h, e);
    const double theta = 0.5 * (a2 - a1);
    const double phi = 0.5 * (a2 + a1);
    return {Mat2::rotation(phi), Mat2::rotation(-theta), q + r, q - r};
}

double signed_area(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    if (n < 3) {
        return 0.0;
    }
    // Shoelace relative to the first vertex to limit cancellation.
    const Point2 o = pts[0];
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        acc += cross(pts[i] - o, pts[i + 1] - o);
    }
    return 0.5 * acc;
}

double perimeter(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        len += distance(pts[i], pts[(i + 1) % n]);
    }
    return len;
}

Point2 vertex_centroid(std::span<const Point2> pts) {
    Point2 c;
    for (const auto& p : pts) {
        c += p;
    }
    return (1.0 / static_cast<double>(pts.size())) * c;
}

Polyline cyclic_shift(std::span<const Point2> pts, std::size_t shift) {
    const std::size_t n = pts.size();
    Polyline out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = pts[(i + shift) % n];
    }
    return out;
}

Polyline transformed(std::span<const Point2> pts, const Mat2& m, Point2 offset) {
    Polyline out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        out.push_back(m * p + offset);
    }
    return out;
}

namespace {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double directed_hausdorff(std::span<const Point2> from, std::span<const Point2> to) {
    double worst = 0.0;
    const std::size_t m = to.size();
    for (const auto& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % m]));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

int orientation_sign(Point2 a, Point2 b, Point2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    if (std::max(p1.x, p2.x) < std::min(q1.x, q2.x) || std::max(q1.x, q2.x) < std::min(p1.x, p2.x) ||
        std::max(p1.y, p2.y) < std::min(q1.y, q2.y) || std::max(q1.y, q2.y) < std::min(p1.y, p2.y)) {
        return false;
    }
    const int o1 = orientation_sign(p1, p2, q1);
    const int o2 = orientation_sign(p1, p2, q2);
    const int o3 = orientation_sign(q1, q2, p1);
    const int o4 = orientation_sign(q1, q2, p2);
    if (o1 != o2 && o3 != o4) {
        return true;
    }
    return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
           (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

}  // namespace

double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

bool is_simple_polygon(std::span<const Point2> pts) {
    const std::size_t n = pts.size();
    if (n < 3) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = pts[i];
        const Point2 b = pts[(i + 1) % n];
        // Adjacent edge folding back onto this one.
        const Point2 c = pts[(i + 2) % n];
        if (cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0.0) {
            return false;
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            if (segments_intersect(a, b, pts[j], pts[(j + 1) % n])) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace cellshape
