#pragma once

#include "cellshape/contour.hpp"

#include <optional>
#include <vector>

namespace cellshape::srvf {

/// Square-root velocity samples q_i on the grid t_i = i/n over [0, 1).
struct SrvfCurve {
    std::vector<Point2> q;
    Point2 closure_residual;  // integral of q|q|, zero for closed curves

    std::size_t size() const { return q.size(); }
    double dt() const { return 1.0 / static_cast<double>(q.size()); }
};

enum class RotationMode { None, FlipOnly, Procrustes };

struct AlignmentResult {
    Mat2 rotation;           // applied to the second curve, det +1
    std::size_t shift = 0;   // start-point shift applied to the second curve
    bool used_dp = false;
    std::vector<double> gamma;  // n + 1 samples of the warp on [0, 1] when used_dp
};

struct ElasticOptions {
    std::size_t shift_step = 5;
    RotationMode rotation = RotationMode::Procrustes;
    bool use_dp = false;
    bool exact_dp = false;  // full grid instead of the n/10 band
    std::size_t dp_starts = 3;  // DP runs from this many best local-maximum shifts
};

struct ElasticResult {
    double d = 0.0;
    AlignmentResult alignment;
};

struct ProjectionOptions {
    double tolerance = 1e-6;
    int max_iterations = 50;
};

SrvfCurve to_srvf(const NormalizedCurve& curve);
SrvfCurve to_srvf(std::span<const Point2> curve);

/// Integrates q|q| (cumulative trapezoid) and re-centers at the centroid.
Polyline from_srvf(const SrvfCurve& s);

Point2 closure_residual(std::span<const Point2> q);
double l2_norm_squared(std::span<const Point2> q);

/// Newton projection onto closed unit-length curves. Throws Error carrying
/// the final residual when it does not converge.
SrvfCurve project_closed(SrvfCurve s, const ProjectionOptions& opts = {});

double inner(const SrvfCurve& a, const SrvfCurve& b);
double sphere_distance(const SrvfCurve& a, const SrvfCurve& b);

AlignmentResult align_rotation(const SrvfCurve& a, const SrvfCurve& b, RotationMode mode);

/// Closed-curve representation used by every distance below.
SrvfCurve prepare(const NormalizedCurve& curve);

/// Distance with the canonical parameterization of both curves: no shift or
/// warp search, rotation according to `mode`.
double distance_fixed(const SrvfCurve& a, const SrvfCurve& b, RotationMode mode = RotationMode::FlipOnly);
double distance_fixed(const NormalizedCurve& a, const NormalizedCurve& b,
                      RotationMode mode = RotationMode::FlipOnly);

/// Best value of <a, O shift(b, s)> over O for the given mode, with the optimizer.
struct ShiftScore {
    double similarity = 0.0;
    Mat2 rotation;
};
ShiftScore shifted_alignment(const SrvfCurve& a, const SrvfCurve& b, std::size_t s, RotationMode mode);

/// Minimum over start-point shifts of b (stride shift_step) combined with
/// rotation alignment, optionally refined by dynamic-programming warping.
ElasticResult distance_elastic(const SrvfCurve& a, const SrvfCurve& b, const ElasticOptions& opts);
ElasticResult distance_elastic(const NormalizedCurve& a, const NormalizedCurve& b, const ElasticOptions& opts);

/// The second curve of a pair after the shift, warp and rotation in `r`.
SrvfCurve aligned(const SrvfCurve& b, const AlignmentResult& r);

/// Spherical interpolation between two aligned curves: `steps` intermediate
/// frames plus both endpoints, each closed and integrated back to a curve.
std::vector<Polyline> geodesic(const SrvfCurve& a, const SrvfCurve& b, std::size_t steps);

// -- warping -------------------------------------------------------------------

/// Optimal piecewise-linear warp of q2 onto q1 on the sample grid, returned
/// as n + 1 values gamma(i/n). band = 0 searches the whole grid.
std::vector<double> dp_warp(std::span<const Point2> q1, std::span<const Point2> q2, std::size_t band);

/// q2(gamma(t)) * sqrt(gamma'(t)) sampled on the grid.
std::vector<Point2> warp(std::span<const Point2> q2, const std::vector<double>& gamma);

}  // namespace cellshape::srvf
