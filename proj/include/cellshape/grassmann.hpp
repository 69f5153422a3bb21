#pragma once

#include "cellshape/contour.hpp"

#include <vector>

namespace cellshape::grassmann {

/// Orthonormal pair (e, f) sampled on the uniform grid t_i = 2*pi*i/n. The
/// inner product is the rectangle rule <u, v> = sum u_i v_i * (2*pi/n).
struct GrassmannPoint {
    std::vector<double> e;
    std::vector<double> f;
    double projection_displacement = 0.0;  // L2 size of the orthonormalization correction

    std::size_t size() const { return e.size(); }
    double dt() const;
};

struct JordanAngles {
    double psi1 = 0.0;
    double psi2 = 0.0;
};

struct Distance {
    double d = 0.0;
    JordanAngles angles;
};

struct ShiftDistance {
    double d = 0.0;
    std::size_t best_shift = 0;
};

struct BasicMapResult {
    Polyline points;  // centered at the vertex centroid
    Point2 closure_residual;
    double length = 0.0;
};

/// Largest possible distance, reached when both Jordan angles are pi/2.
inline const double kMaxDistance = 2.2214414690791831;  // pi / sqrt(2)

/// Continuous lift of the tangent direction at each sample (central
/// differences), theta[0] in [0, 2*pi).
std::vector<double> tangent_angle(const NormalizedCurve& curve);

/// Sum of all n wrapped increments of theta, closing edge included.
double total_turning(const std::vector<double>& theta);

GrassmannPoint to_grassmann(const NormalizedCurve& curve);

/// alpha(t) = 1/2 * integral of (e + i f)^2, cumulative trapezoid.
BasicMapResult basic_map(const GrassmannPoint& p);

double inner(const std::vector<double>& u, const std::vector<double>& v, double dt);

/// Gram matrix [[<e1,e2>, <e1,f2>], [<f1,e2>, <f1,f2>]].
Mat2 cross_gram(const GrassmannPoint& a, const GrassmannPoint& b);

Distance distance(const GrassmannPoint& a, const GrassmannPoint& b);

/// The pair of `p` re-read from sample s on: the representative of the
/// curve started s samples later. Samples that wrap past the end flip sign
/// because the half-angle advances by pi over one loop.
GrassmannPoint shifted(const GrassmannPoint& p, std::size_t s);

/// distance(a, shifted(b, s)) without materializing the shifted pair.
double shifted_distance(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t s);

/// Minimum over s in {0, step, 2*step, ...} of distance(a, shifted(b, s)).
ShiftDistance distance_minshift(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t step);
ShiftDistance distance_minshift(const NormalizedCurve& a, const NormalizedCurve& b, std::size_t step);

/// Frames along the geodesic from a to b: `steps` intermediate shapes plus
/// both endpoints, each mapped back to a curve. The first frame is exactly
/// basic_map(a); the last one is b up to rotation.
std::vector<Polyline> geodesic(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t steps);
std::vector<Polyline> geodesic(const NormalizedCurve& a, const NormalizedCurve& b, std::size_t steps);

}  // namespace cellshape::grassmann
