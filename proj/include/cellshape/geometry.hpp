#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cellshape {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;

    Point2& operator+=(Point2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Point2& operator-=(Point2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Ordered vertices of a closed polygon; the edge last -> first is implicit.
using Polyline = std::vector<Point2>;

/// 2x2 matrix stored row-major.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    static Mat2 rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
    Point2 operator*(Point2 p) const { return {a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2 transposed() const { return {a11, a21, a12, a22}; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Singular value decomposition A = U diag(s1, s2) V^T of a 2x2 matrix with
/// U, V proper rotations. s1 >= |s2|; s2 carries the sign of det(A).
struct Svd2 {
    Mat2 u;
    Mat2 v;
    double s1 = 0.0;
    double s2 = 0.0;
};
Svd2 svd2(const Mat2& a);

double signed_area(std::span<const Point2> pts);
double perimeter(std::span<const Point2> pts);
Point2 vertex_centroid(std::span<const Point2> pts);

Polyline cyclic_shift(std::span<const Point2> pts, std::size_t shift);
Polyline transformed(std::span<const Point2> pts, const Mat2& m, Point2 offset = {});

/// Symmetric Hausdorff distance between two closed polygons, measured from
/// vertices to edges in both directions.
double hausdorff_distance(std::span<const Point2> a, std::span<const Point2> b);

/// True when no two non-adjacent edges of the closed polygon intersect.
bool is_simple_polygon(std::span<const Point2> pts);

}  // namespace cellshape
