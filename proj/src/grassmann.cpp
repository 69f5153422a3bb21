#include "cellshape/grassmann.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <numbers>

namespace cellshape::grassmann {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_grid(const GrassmannPoint& a, const GrassmannPoint& b) {
    if (a.size() != b.size() || a.size() == 0) {
        throw Error("grassmann: grid mismatch (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                    " samples)");
    }
}

JordanAngles angles_from(const Mat2& gram) {
    const Svd2 s = svd2(gram);
    const double l1 = std::clamp(std::abs(s.s1), 0.0, 1.0);
    const double l2 = std::clamp(std::abs(s.s2), 0.0, 1.0);
    return {std::acos(l1), std::acos(l2)};
}

/// Inverse square root of a symmetric positive definite 2x2 matrix.
Mat2 inverse_sqrt_spd(const Mat2& g) {
    const double det = g.det();
    if (!(det > 0.0)) {
        throw Error("grassmann: (e, f) are linearly dependent");
    }
    const double sd = std::sqrt(det);
    const double t = std::sqrt(g.a11 + g.a22 + 2.0 * sd);
    // sqrt(G) = (G + sqrt(det) I) / t
    const Mat2 root{(g.a11 + sd) / t, g.a12 / t, g.a21 / t, (g.a22 + sd) / t};
    const double rd = root.det();
    return {root.a22 / rd, -root.a12 / rd, -root.a21 / rd, root.a11 / rd};
}

}  // namespace

double GrassmannPoint::dt() const { return kTwoPi / static_cast<double>(size()); }

double inner(const std::vector<double>& u, const std::vector<double>& v, double dt) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += u[i] * v[i];
    }
    return acc * dt;
}

std::vector<double> tangent_angle(const NormalizedCurve& curve) {
    const auto& p = curve.points;
    const std::size_t n = p.size();
    std::vector<double> theta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 d = p[(i + 1) % n] - p[(i + n - 1) % n];
        double a = std::atan2(d.y, d.x);
        if (i == 0) {
            if (a < 0.0) {
                a += kTwoPi;
            }
        } else {
            a = theta[i - 1] + std::remainder(a - theta[i - 1], kTwoPi);
        }
        theta[i] = a;
    }
    return theta;
}

double total_turning(const std::vector<double>& theta) {
    if (theta.size() < 2) {
        return 0.0;
    }
    return theta.back() - theta.front() + std::remainder(theta.front() - theta.back(), kTwoPi);
}

GrassmannPoint to_grassmann(const NormalizedCurve& curve) {
    const auto& p = curve.points;
    const std::size_t n = p.size();
    if (n < 3) {
        throw Error("to_grassmann: need at least 3 samples");
    }
    const double dt = kTwoPi / static_cast<double>(n);
    const double len = perimeter(p);
    const std::vector<double> theta = tangent_angle(curve);

    GrassmannPoint g;
    g.e.resize(n);
    g.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = 0.5 * distance(p[(i + 1) % n], p[(i + n - 1) % n]) / dt;
        const double amp = std::sqrt(2.0 * speed / len);
        g.e[i] = amp * std::cos(0.5 * theta[i]);
        g.f[i] = amp * std::sin(0.5 * theta[i]);
    }

    // Polar projection [e f] -> [e f] G^{-1/2} onto orthonormal pairs.
    const double gee = inner(g.e, g.e, dt), gff = inner(g.f, g.f, dt), gef = inner(g.e, g.f, dt);
    const Mat2 w = inverse_sqrt_spd({gee, gef, gef, gff});
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = g.e[i] * w.a11 + g.f[i] * w.a21;
        const double f = g.e[i] * w.a12 + g.f[i] * w.a22;
        moved += (e - g.e[i]) * (e - g.e[i]) + (f - g.f[i]) * (f - g.f[i]);
        g.e[i] = e;
        g.f[i] = f;
    }
    g.projection_displacement = std::sqrt(moved * dt);
    return g;
}

BasicMapResult basic_map(const GrassmannPoint& p) {
    const std::size_t n = p.size();
    const double dt = p.dt();
    // (e + i f)^2 = (e^2 - f^2) + i (2 e f)
    auto square = [&](std::size_t i) {
        return Point2{p.e[i] * p.e[i] - p.f[i] * p.f[i], 2.0 * p.e[i] * p.f[i]};
    };
    BasicMapResult out;
    out.points.resize(n);
    Point2 acc;
    for (std::size_t i = 0; i < n; ++i) {
        out.points[i] = acc;
        acc += (0.25 * dt) * (square(i) + square((i + 1) % n));
    }
    out.closure_residual = acc;
    const Point2 c = vertex_centroid(out.points);
    for (auto& q : out.points) {
        q -= c;
    }
    out.length = perimeter(out.points);
    return out;
}

Mat2 cross_gram(const GrassmannPoint& a, const GrassmannPoint& b) {
    require_same_grid(a, b);
    const double dt = a.dt();
    return {inner(a.e, b.e, dt), inner(a.e, b.f, dt), inner(a.f, b.e, dt), inner(a.f, b.f, dt)};
}

Distance distance(const GrassmannPoint& a, const GrassmannPoint& b) {
    const JordanAngles ang = angles_from(cross_gram(a, b));
    return {std::hypot(ang.psi1, ang.psi2), ang};
}

GrassmannPoint shifted(const GrassmannPoint& p, std::size_t s) {
    const std::size_t n = p.size();
    s %= n;
    GrassmannPoint out;
    out.e.resize(n);
    out.f.resize(n);
    out.projection_displacement = p.projection_displacement;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + s;
        const double sign = j < n ? 1.0 : -1.0;
        out.e[i] = sign * p.e[j % n];
        out.f[i] = sign * p.f[j % n];
    }
    return out;
}

double shifted_distance(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t s) {
    require_same_grid(a, b);
    const std::size_t n = a.size();
    s %= n;
    double ee = 0.0, ef = 0.0, fe = 0.0, ff = 0.0;
    for (std::size_t i = 0; i + s < n; ++i) {
        const std::size_t j = i + s;
        ee += a.e[i] * b.e[j];
        ef += a.e[i] * b.f[j];
        fe += a.f[i] * b.e[j];
        ff += a.f[i] * b.f[j];
    }
    for (std::size_t i = n - s; i < n; ++i) {
        const std::size_t j = i + s - n;
        ee -= a.e[i] * b.e[j];
        ef -= a.e[i] * b.f[j];
        fe -= a.f[i] * b.e[j];
        ff -= a.f[i] * b.f[j];
    }
    const double dt = a.dt();
    const JordanAngles ang = angles_from({ee * dt, ef * dt, fe * dt, ff * dt});
    return std::hypot(ang.psi1, ang.psi2);
}

ShiftDistance distance_minshift(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t step) {
    require_same_grid(a, b);
    if (step == 0) {
        throw Error("distance_minshift: step must be >= 1");
    }
    ShiftDistance best{shifted_distance(a, b, 0), 0};
    for (std::size_t s = step; s < a.size(); s += step) {
        const double d = shifted_distance(a, b, s);
        if (d < best.d) {
            best = {d, s};
        }
    }
    return best;
}

ShiftDistance distance_minshift(const NormalizedCurve& a, const NormalizedCurve& b, std::size_t step) {
    return distance_minshift(to_grassmann(a), to_grassmann(b), step);
}

std::vector<Polyline> geodesic(const GrassmannPoint& a, const GrassmannPoint& b, std::size_t steps) {
    require_same_grid(a, b);
    const std::size_t n = a.size();
    const Svd2 svd = svd2(cross_gram(a, b));
    Mat2 v = svd.v;
    double sigma[2] = {svd.s1, svd.s2};
    if (sigma[1] < 0.0) {
        // Unoriented subspaces: take the reflected basis on b's side.
        v = v * Mat2{1.0, 0.0, 0.0, -1.0};
        sigma[1] = -sigma[1];
    }
    double psi[2];
    for (int j = 0; j < 2; ++j) {
        psi[j] = std::acos(std::clamp(sigma[j], 0.0, 1.0));
        if (psi[j] >= std::numbers::pi / 2 - 1e-12) {
            throw Error("conjugate-point geodesic: a Jordan angle equals pi/2");
        }
    }
    const Mat2& u = svd.u;
    // Principal vectors y1 = [e1 f1] U, y2 = [e2 f2] V and unit directions w
    // from y1 towards y2 within each principal plane.
    std::vector<double> y1[2], w[2];
    for (int j = 0; j < 2; ++j) {
        y1[j].resize(n);
        w[j].assign(n, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double y1c[2] = {a.e[i] * u.a11 + a.f[i] * u.a21, a.e[i] * u.a12 + a.f[i] * u.a22};
        const double y2c[2] = {b.e[i] * v.a11 + b.f[i] * v.a21, b.e[i] * v.a12 + b.f[i] * v.a22};
        for (int j = 0; j < 2; ++j) {
            y1[j][i] = y1c[j];
            if (std::sin(psi[j]) > 1e-12) {
                w[j][i] = (y2c[j] - sigma[j] * y1c[j]) / std::sin(psi[j]);
            }
        }
    }

    std::vector<Polyline> frames;
    const std::size_t count = steps + 2;
    frames.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double tau = static_cast<double>(k) / static_cast<double>(count - 1);
        GrassmannPoint frame;
        frame.e.resize(n);
        frame.f.resize(n);
        const double c0 = std::cos(tau * psi[0]), s0 = std::sin(tau * psi[0]);
        const double c1 = std::cos(tau * psi[1]), s1 = std::sin(tau * psi[1]);
        for (std::size_t i = 0; i < n; ++i) {
            const double p0 = c0 * y1[0][i] + s0 * w[0][i];
            const double p1 = c1 * y1[1][i] + s1 * w[1][i];
            // Undo U so that tau = 0 reproduces [e1 f1] exactly.
            frame.e[i] = p0 * u.a11 + p1 * u.a12;
            frame.f[i] = p0 * u.a21 + p1 * u.a22;
        }
        frames.push_back(basic_map(frame).points);
    }
    return frames;
}

std::vector<Polyline> geodesic(const NormalizedCurve& a, const NormalizedCurve& b, std::size_t steps) {
    return geodesic(to_grassmann(a), to_grassmann(b), steps);
}

}  // namespace cellshape::grassmann
