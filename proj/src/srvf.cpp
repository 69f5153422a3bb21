#include "cellshape/srvf.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace cellshape::srvf {

namespace {

void require_same_grid(const SrvfCurve& a, const SrvfCurve& b) {
    if (a.size() != b.size() || a.size() == 0) {
        throw Error("srvf: grid mismatch (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                    " samples)");
    }
}

void normalize_unit(std::vector<Point2>& q) {
    const double s = std::sqrt(l2_norm_squared(q));
    if (!(s > 0.0)) {
        throw Error("srvf: zero function cannot be normalized");
    }
    for (auto& v : q) {
        v = (1.0 / s) * v;
    }
}

/// M = integral of shift(b, s) a^T, so that <a, O shift(b, s)> = tr(O M).
Mat2 cross_moments(const SrvfCurve& a, const SrvfCurve& b, std::size_t s) {
    const std::size_t n = a.size();
    double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;
    auto accumulate = [&](std::size_t i, std::size_t j) {
        const Point2 av = a.q[i], bv = b.q[j];
        m11 += bv.x * av.x;
        m12 += bv.x * av.y;
        m21 += bv.y * av.x;
        m22 += bv.y * av.y;
    };
    for (std::size_t i = 0; i + s < n; ++i) accumulate(i, i + s);
    for (std::size_t i = n - s; i < n; ++i) accumulate(i, i + s - n);
    const double dt = a.dt();
    return {m11 * dt, m12 * dt, m21 * dt, m22 * dt};
}

double shifted_dot(const SrvfCurve& a, const SrvfCurve& b, std::size_t s) {
    const std::size_t n = a.size();
    double acc = 0.0;
    for (std::size_t i = 0; i + s < n; ++i) acc += dot(a.q[i], b.q[i + s]);
    for (std::size_t i = n - s; i < n; ++i) acc += dot(a.q[i], b.q[i + s - n]);
    return acc * a.dt();
}

double to_distance(double similarity) { return std::acos(std::clamp(similarity, -1.0, 1.0)); }

SrvfCurve rotated_shifted(const SrvfCurve& b, const Mat2& o, std::size_t s) {
    const std::size_t n = b.size();
    SrvfCurve out;
    out.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.q[i] = o * b.q[(i + s) % n];
    }
    out.closure_residual = closure_residual(out.q);
    return out;
}

}  // namespace

double l2_norm_squared(std::span<const Point2> q) {
    double acc = 0.0;
    for (const auto& v : q) acc += dot(v, v);
    return acc / static_cast<double>(q.size());
}

Point2 closure_residual(std::span<const Point2> q) {
    Point2 acc;
    for (const auto& v : q) acc += norm(v) * v;
    return (1.0 / static_cast<double>(q.size())) * acc;
}

SrvfCurve to_srvf(std::span<const Point2> p) {
    const std::size_t n = p.size();
    if (n < 3) {
        throw Error("to_srvf: need at least 3 samples");
    }
    const double inv_2dt = 0.5 * static_cast<double>(n);
    SrvfCurve s;
    s.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 vel = inv_2dt * (p[(i + 1) % n] - p[(i + n - 1) % n]);
        const double speed = norm(vel);
        if (speed < 1e-12) {
            throw Error("stationary point on curve at sample " + std::to_string(i));
        }
        s.q[i] = (1.0 / std::sqrt(speed)) * vel;
    }
    normalize_unit(s.q);
    s.closure_residual = closure_residual(s.q);
    return s;
}

SrvfCurve to_srvf(const NormalizedCurve& curve) { return to_srvf(curve.points); }

Polyline from_srvf(const SrvfCurve& s) {
    const std::size_t n = s.size();
    const double dt = s.dt();
    Polyline pts(n);
    Point2 acc;
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = acc;
        const Point2 v0 = norm(s.q[i]) * s.q[i];
        const Point2 v1 = norm(s.q[(i + 1) % n]) * s.q[(i + 1) % n];
        acc += (0.5 * dt) * (v0 + v1);
    }
    const Point2 c = vertex_centroid(pts);
    for (auto& p : pts) p -= c;
    return pts;
}

SrvfCurve project_closed(SrvfCurve s, const ProjectionOptions& opts) {
    const std::size_t n = s.size();
    const double dt = s.dt();
    normalize_unit(s.q);
    std::vector<Point2> basis[2] = {std::vector<Point2>(n), std::vector<Point2>(n)};
    std::vector<Point2> trial(n);

    Point2 g = closure_residual(s.q);
    for (int it = 0;; ++it) {
        if (norm(g) < opts.tolerance) {
            s.closure_residual = g;
            return s;
        }
        if (it >= opts.max_iterations) {
            std::ostringstream msg;
            msg << "project_closed: no convergence after " << opts.max_iterations << " iterations, residual "
                << norm(g);
            throw Error(msg.str());
        }
        // Gradients of the two residual components, N_j = |q| e_j + q_j q / |q|,
        // restricted to the tangent space of the unit sphere.
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 v = s.q[i];
            const double len = norm(v);
            const double inv = len > 1e-300 ? 1.0 / len : 0.0;
            basis[0][i] = Point2{len, 0.0} + (v.x * inv) * v;
            basis[1][i] = Point2{0.0, len} + (v.y * inv) * v;
        }
        for (auto& b : basis) {
            double proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += dot(b[i], s.q[i]);
            proj *= dt;
            for (std::size_t i = 0; i < n; ++i) b[i] -= proj * s.q[i];
        }
        // Jacobian of the residual along the projected basis. <N_j, P N_k>
        // equals <P N_j, P N_k> because P N_k is orthogonal to q.
        double j11 = 0.0, j12 = 0.0, j22 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            j11 += dot(basis[0][i], basis[0][i]);
            j12 += dot(basis[0][i], basis[1][i]);
            j22 += dot(basis[1][i], basis[1][i]);
        }
        j11 *= dt;
        j12 *= dt;
        j22 *= dt;
        const double det = j11 * j22 - j12 * j12;
        if (!(std::abs(det) > 1e-300)) {
            throw Error("project_closed: singular closure Jacobian");
        }
        const double x0 = -(j22 * g.x - j12 * g.y) / det;
        const double x1 = -(-j12 * g.x + j11 * g.y) / det;

        // Backtracking keeps the residual from growing on hard starts.
        double step = 1.0;
        Point2 g_new;
        for (int tries = 0; tries < 30; ++tries) {
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = s.q[i] + (step * x0) * basis[0][i] + (step * x1) * basis[1][i];
            }
            normalize_unit(trial);
            g_new = closure_residual(trial);
            if (norm(g_new) < norm(g)) {
                break;
            }
            step *= 0.5;
        }
        s.q.swap(trial);
        g = g_new;
    }
}

double inner(const SrvfCurve& a, const SrvfCurve& b) {
    require_same_grid(a, b);
    return shifted_dot(a, b, 0);
}

double sphere_distance(const SrvfCurve& a, const SrvfCurve& b) { return to_distance(inner(a, b)); }

ShiftScore shifted_alignment(const SrvfCurve& a, const SrvfCurve& b, std::size_t s, RotationMode mode) {
    require_same_grid(a, b);
    s %= a.size();
    switch (mode) {
        case RotationMode::None:
            return {shifted_dot(a, b, s), Mat2{}};
        case RotationMode::FlipOnly: {
            const double v = shifted_dot(a, b, s);
            if (-v > v) {
                return {-v, Mat2{-1.0, 0.0, 0.0, -1.0}};
            }
            return {v, Mat2{}};
        }
        case RotationMode::Procrustes: {
            const Mat2 m = cross_moments(a, b, s);
            const double c = m.a11 + m.a22;
            const double sn = m.a12 - m.a21;
            const double value = std::hypot(c, sn);
            if (value == 0.0) {
                return {0.0, Mat2{}};
            }
            return {value, Mat2{c / value, -sn / value, sn / value, c / value}};
        }
    }
    return {shifted_dot(a, b, s), Mat2{}};
}

AlignmentResult align_rotation(const SrvfCurve& a, const SrvfCurve& b, RotationMode mode) {
    AlignmentResult r;
    r.rotation = shifted_alignment(a, b, 0, mode).rotation;
    return r;
}

SrvfCurve prepare(const NormalizedCurve& curve) { return project_closed(to_srvf(curve)); }

double distance_fixed(const SrvfCurve& a, const SrvfCurve& b, RotationMode mode) {
    return to_distance(shifted_alignment(a, b, 0, mode).similarity);
}

double distance_fixed(const NormalizedCurve& a, const NormalizedCurve& b, RotationMode mode) {
    return distance_fixed(prepare(a), prepare(b), mode);
}

ElasticResult distance_elastic(const SrvfCurve& a, const SrvfCurve& b, const ElasticOptions& opts) {
    require_same_grid(a, b);
    if (opts.shift_step == 0) {
        throw Error("distance_elastic: shift_step must be >= 1");
    }
    const std::size_t n = a.size();
    std::vector<std::size_t> shifts;
    std::vector<ShiftScore> scores;
    for (std::size_t s = 0; s < n; s += opts.shift_step) {
        shifts.push_back(s);
        scores.push_back(shifted_alignment(a, b, s, opts.rotation));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k].similarity > scores[best].similarity) best = k;
    }
    ElasticResult result;
    result.d = to_distance(scores[best].similarity);
    result.alignment.rotation = scores[best].rotation;
    result.alignment.shift = shifts[best];

    if (!opts.use_dp || opts.dp_starts == 0) {
        return result;
    }
    // The warp is pinned at its ends, so a rigid shift far from the true start
    // cannot be repaired; start the DP from the best few local maxima.
    std::vector<std::size_t> starts{best};
    const std::size_t m = scores.size();
    std::vector<std::size_t> peaks;
    for (std::size_t k = 0; k < m; ++k) {
        const double v = scores[k].similarity;
        if (k != best && v >= scores[(k + m - 1) % m].similarity && v > scores[(k + 1) % m].similarity) {
            peaks.push_back(k);
        }
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t x, std::size_t y) { return scores[x].similarity > scores[y].similarity; });
    for (std::size_t k = 0; k < peaks.size() && starts.size() < opts.dp_starts; ++k) starts.push_back(peaks[k]);

    const std::size_t band = opts.exact_dp ? 0 : std::max<std::size_t>(n / 10, 4);
    for (const std::size_t k : starts) {
        const SrvfCurve b0 = rotated_shifted(b, scores[k].rotation, shifts[k]);
        std::vector<double> gamma = dp_warp(a.q, b0.q, band);
        SrvfCurve bw;
        bw.q = warp(b0.q, gamma);
        try {
            bw = project_closed(std::move(bw));
        } catch (const Error&) {
            continue;
        }
        const ShiftScore refined = shifted_alignment(a, bw, 0, opts.rotation);
        const double d_dp = to_distance(refined.similarity);
        if (d_dp < result.d) {
            result.d = d_dp;
            result.alignment.rotation = refined.rotation * scores[k].rotation;
            result.alignment.shift = shifts[k];
            result.alignment.used_dp = true;
            result.alignment.gamma = std::move(gamma);
        }
    }
    return result;
}

ElasticResult distance_elastic(const NormalizedCurve& a, const NormalizedCurve& b, const ElasticOptions& opts) {
    return distance_elastic(prepare(a), prepare(b), opts);
}

SrvfCurve aligned(const SrvfCurve& b, const AlignmentResult& r) {
    if (!r.used_dp) {
        return rotated_shifted(b, r.rotation, r.shift);
    }
    SrvfCurve w;
    w.q = warp(rotated_shifted(b, Mat2{}, r.shift).q, r.gamma);
    w = project_closed(std::move(w));
    for (auto& v : w.q) v = r.rotation * v;
    w.closure_residual = closure_residual(w.q);
    return w;
}

std::vector<Polyline> geodesic(const SrvfCurve& a, const SrvfCurve& b, std::size_t steps) {
    require_same_grid(a, b);
    const double psi = sphere_distance(a, b);
    if (psi >= std::numbers::pi - 1e-6) {
        throw Error("non-unique geodesic: curves are antipodal");
    }
    const std::size_t count = steps + 2;
    std::vector<Polyline> frames;
    frames.reserve(count);
    if (psi < 1e-12) {
        const Polyline p = from_srvf(a);
        frames.assign(count, p);
        return frames;
    }
    const std::size_t n = a.size();
    const double sin_psi = std::sin(psi);
    for (std::size_t k = 0; k < count; ++k) {
        const double tau = static_cast<double>(k) / static_cast<double>(count - 1);
        const double wa = std::sin((1.0 - tau) * psi) / sin_psi;
        const double wb = std::sin(tau * psi) / sin_psi;
        SrvfCurve frame;
        frame.q.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            frame.q[i] = wa * a.q[i] + wb * b.q[i];
        }
        frames.push_back(from_srvf(project_closed(std::move(frame))));
    }
    return frames;
}

}  // namespace cellshape::srvf
