#include "oracle.hpp"
#include "support.hpp"

#include "cellshape/error.hpp"
#include "cellshape/srvf.hpp"

#include <doctest.h>

#include <numbers>

using namespace cellshape;
using namespace testsupport;
namespace sv = cellshape::srvf;

namespace {

sv::SrvfCurve rotate(const sv::SrvfCurve& s, double angle) {
    sv::SrvfCurve out = s;
    const Mat2 r = Mat2::rotation(angle);
    for (auto& v : out.q) v = r * v;
    return out;
}

sv::SrvfCurve shift(const sv::SrvfCurve& s, std::size_t k) {
    sv::SrvfCurve out = s;
    for (std::size_t i = 0; i < s.size(); ++i) out.q[i] = s.q[(i + k) % s.size()];
    return out;
}

}  // namespace

TEST_CASE("to_srvf of a circle") {
    const auto q = sv::to_srvf(circle());
    for (const auto& v : q.q) CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(norm(q.closure_residual) < 1e-3);
    CHECK(sv::l2_norm_squared(q.q) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("to_srvf normalizes any input and rejects stationary points") {
    for (const auto& c : random_curves(5, 2)) CHECK(sv::l2_norm_squared(sv::to_srvf(c).q) == doctest::Approx(1.0).epsilon(1e-9));
    const Polyline stuck{{0, 0}, {1, 0}, {0, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(sv::to_srvf(stuck), doctest::Contains("stationary point on curve"), Error);
}

TEST_CASE("from_srvf round trips") {
    for (const auto& c : {circle(), ellipse()}) {
        const Polyline back = sv::from_srvf(sv::to_srvf(c));
        CHECK(max_point_error(back, c.points) < 1e-3);
    }
    for (const auto& p : sv::from_srvf(sv::to_srvf(circle()))) {
        CHECK(norm(p) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-3));
    }
    // Constant q integrates to a straight segment that is far from closed.
    sv::SrvfCurve line;
    line.q.assign(100, Point2{1.0, 0.0});
    const Polyline seg = sv::from_srvf(line);
    for (const auto& p : seg) CHECK(std::abs(p.y) < 1e-15);
    CHECK(seg.back().x > seg.front().x);
    CHECK(norm(sv::closure_residual(line.q)) == doctest::Approx(1.0));
}

TEST_CASE("project_closed") {
    SUBCASE("closed input is a fixed point") {
        const auto q = sv::to_srvf(ellipse());
        const auto p = sv::project_closed(q);
        double err = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) err = std::max(err, distance(p.q[i], q.q[i]));
        CHECK(err < 1e-6);
    }
    SUBCASE("noisy input is closed") {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> noise(0.0, 0.01);
        auto q = sv::to_srvf(random_curves(1, 8)[0]);
        for (auto& v : q.q) v += Point2{noise(rng), noise(rng)};
        const auto p = sv::project_closed(q);
        CHECK(norm(sv::closure_residual(p.q)) < 1e-6);
        CHECK(sv::l2_norm_squared(p.q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("straight segment: closed result or an error, never an open curve") {
        sv::SrvfCurve line;
        line.q.assign(100, Point2{1.0, 0.0});
        try {
            const auto p = sv::project_closed(line);
            CHECK(norm(sv::closure_residual(p.q)) < 1e-6);
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("project_closed") != std::string::npos);
        }
    }
}

TEST_CASE("sphere distance") {
    const auto a = sv::prepare(circle());
    CHECK(sv::sphere_distance(a, a) < 1e-6);
    auto neg = a;
    for (auto& v : neg.q) v = -1.0 * v;
    CHECK(sv::sphere_distance(a, neg) == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(sv::sphere_distance(a, sv::prepare(circle(100))), Error);
}

TEST_CASE("circle vs 4:1 ellipse against a high-resolution quadrature") {
    const std::size_t N = 4096;
    std::vector<double> th_circle(N);
    for (std::size_t i = 0; i < N; ++i) th_circle[i] = std::numbers::pi / 2 + 2.0 * std::numbers::pi * i / N;
    const double expect = oracle::srvf_flip_distance(th_circle, oracle::ellipse_tangent_by_arclength(4.0, 1.0, N));
    const double got = sv::distance_fixed(circle(), ellipse());
    CHECK(std::abs(got - expect) < 1e-3);
}

TEST_CASE("rotation alignment") {
    const auto a = sv::prepare(ellipse());
    const auto half = rotate(a, std::numbers::pi);
    const auto r = sv::align_rotation(a, half, sv::RotationMode::FlipOnly);
    CHECK(r.rotation.a11 == doctest::Approx(-1.0));
    CHECK(r.rotation.a22 == doctest::Approx(-1.0));
    CHECK(sv::distance_fixed(a, half, sv::RotationMode::FlipOnly) < 1e-6);
    for (auto mode : {sv::RotationMode::None, sv::RotationMode::FlipOnly, sv::RotationMode::Procrustes}) {
        const auto id = sv::align_rotation(a, a, mode).rotation;
        CHECK(id.a11 == doctest::Approx(1.0));
        CHECK(std::abs(id.a12) < 1e-12);
        CHECK(sv::distance_fixed(a, a, mode) < 1e-6);
    }
    const auto tilted = rotate(a, 0.7);
    CHECK(sv::distance_fixed(a, tilted, sv::RotationMode::Procrustes) < 1e-6);
    const auto pr = sv::align_rotation(a, tilted, sv::RotationMode::Procrustes).rotation;
    CHECK(pr.det() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pr.a11 * pr.a11 + pr.a21 * pr.a21 == doctest::Approx(1.0).epsilon(1e-10));

    const auto cs = random_curves(20, 23);
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        const auto x = sv::prepare(cs[i]), y = sv::prepare(cs[i + 1]);
        const double dn = sv::distance_fixed(x, y, sv::RotationMode::None);
        const double df = sv::distance_fixed(x, y, sv::RotationMode::FlipOnly);
        const double dp = sv::distance_fixed(x, y, sv::RotationMode::Procrustes);
        CHECK(dp <= df + 1e-12);
        CHECK(df <= dn + 1e-12);
        CHECK(std::abs(df - sv::distance_fixed(y, x, sv::RotationMode::FlipOnly)) < 1e-9);
        CHECK(std::abs(dp - sv::distance_fixed(y, x, sv::RotationMode::Procrustes)) < 1e-9);
    }
}

TEST_CASE("elastic distance") {
    const auto cs = random_curves(2, 31);
    const auto a = sv::prepare(cs[0]);
    sv::ElasticOptions eo;
    eo.shift_step = 5;
    const auto r = sv::distance_elastic(a, shift(a, 40), eo);
    CHECK(r.d < 1e-6);
    CHECK(r.alignment.shift == 255);
    CHECK_THROWS_AS(sv::distance_elastic(a, a, sv::ElasticOptions{0}), Error);

    const auto b = sv::prepare(cs[1]);
    const auto er = sv::distance_elastic(a, b, eo);
    CHECK(sv::sphere_distance(a, sv::aligned(b, er.alignment)) == doctest::Approx(er.d).epsilon(1e-12));
}

TEST_CASE("shift step 1 equals the exhaustive minimum") {
    const auto cs = random_curves(6, 37);
    sv::ElasticOptions eo;
    eo.shift_step = 1;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        const auto a = sv::prepare(cs[i]), b = sv::prepare(cs[i + 1]);
        double best_sim = -2.0;
        for (std::size_t s = 0; s < a.size(); ++s) {
            best_sim = std::max(best_sim, sv::shifted_alignment(a, b, s, eo.rotation).similarity);
        }
        CHECK(sv::distance_elastic(a, b, eo).d == std::acos(std::clamp(best_sim, -1.0, 1.0)));
        // Same minimum through explicit shifted copies; summation order differs.
        double best = 10.0;
        for (std::size_t s = 0; s < a.size(); ++s) {
            best = std::min(best, sv::distance_fixed(a, shift(b, s), eo.rotation));
        }
        CHECK(std::abs(sv::distance_elastic(a, b, eo).d - best) < 1e-12);
    }
}

TEST_CASE("dynamic programming warp") {
    const auto cs = random_curves(10, 41);
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        const auto a = sv::prepare(cs[i]), b = sv::prepare(cs[i + 1]);
        sv::ElasticOptions shift_only, dp;
        dp.use_dp = true;
        const auto rs = sv::distance_elastic(a, b, shift_only);
        const auto rd = sv::distance_elastic(a, b, dp);
        CHECK(rd.d <= rs.d);
        CHECK(rs.d <= sv::distance_fixed(a, b));
        if (rd.alignment.used_dp) {
            const auto& g = rd.alignment.gamma;
            REQUIRE(g.size() == a.size() + 1);
            CHECK(g.front() == 0.0);
            CHECK(g.back() == 1.0);
            for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
            CHECK(sv::sphere_distance(a, sv::aligned(b, rd.alignment)) == doctest::Approx(rd.d).epsilon(1e-9));
        }
    }
    // Warping a curve against itself keeps the identity.
    const auto a = sv::prepare(cs[0]);
    const auto gamma = sv::dp_warp(a.q, a.q, 0);
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        CHECK(gamma[k] == doctest::Approx(static_cast<double>(k) / a.size()).epsilon(1e-12));
    }
}

TEST_CASE("DP recovers a known reparameterization better than shifts alone") {
    // Same ellipse; the second copy is sampled through a piecewise-linear warp,
    // odd about the start so the rigid optimum stays at shift 0, with slopes
    // 3/4 and 4/3 on the DP step set and grid-aligned breaks (n = 252).
    const std::size_t n = 252;
    auto half = [](double t) { return t < 2.0 / 7.0 ? 0.75 * t : 1.5 / 7.0 + (t - 2.0 / 7.0) * 4.0 / 3.0; };
    auto g = [&](double t) { return t <= 0.5 ? half(t) : 1.0 - half(1.0 - t); };
    Polyline even(n), warped(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / n;
        even[i] = {3.0 * std::cos(2.0 * std::numbers::pi * t), std::sin(2.0 * std::numbers::pi * t)};
        warped[i] = {3.0 * std::cos(2.0 * std::numbers::pi * g(t)), std::sin(2.0 * std::numbers::pi * g(t))};
    }
    const auto a = sv::project_closed(sv::to_srvf(even)), b = sv::project_closed(sv::to_srvf(warped));
    sv::ElasticOptions shift_only, dp;
    shift_only.shift_step = 1;
    dp.shift_step = 1;
    dp.use_dp = true;
    dp.exact_dp = true;
    const double d_shift = sv::distance_elastic(a, b, shift_only).d;
    const double d_dp = sv::distance_elastic(a, b, dp).d;
    MESSAGE("d_shift " << d_shift << " d_dp " << d_dp);
    CHECK(d_dp < 0.1 * d_shift);

    // A smooth warp off the step set is still improved, though not removed.
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double h = t + 0.1 * std::sin(2.0 * std::numbers::pi * t) / (2.0 * std::numbers::pi);
        warped[i] = {3.0 * std::cos(2.0 * std::numbers::pi * h), std::sin(2.0 * std::numbers::pi * h)};
    }
    const auto c = sv::project_closed(sv::to_srvf(warped));
    CHECK(sv::distance_elastic(a, c, dp).d < sv::distance_elastic(a, c, shift_only).d);
}

TEST_CASE("geodesic") {
    const auto a = sv::prepare(circle()), b0 = sv::prepare(ellipse());
    const auto b = sv::aligned(b0, sv::align_rotation(a, b0, sv::RotationMode::FlipOnly));
    const auto frames = sv::geodesic(a, b, 5);
    REQUIRE(frames.size() == 7);
    CHECK(max_point_error(frames.front(), sv::from_srvf(a)) < 1e-3);
    CHECK(max_point_error(frames.back(), sv::from_srvf(b)) < 1e-3);
    // Distance to the first endpoint grows along the path.
    double prev = -1.0;
    for (const auto& f : frames) {
        const double d = sv::sphere_distance(a, sv::project_closed(sv::to_srvf(f)));
        CHECK(d >= prev - 1e-6);
        prev = d;
    }
    const auto same = sv::geodesic(a, a, 3);
    REQUIRE(same.size() == 5);
    for (const auto& f : same) CHECK(max_point_error(f, same[0]) < 1e-12);
    auto anti = a;
    for (auto& v : anti.q) v = -1.0 * v;
    CHECK_THROWS_WITH_AS(sv::geodesic(a, anti, 3), doctest::Contains("non-unique geodesic"), Error);
}

TEST_CASE("distances are invariant to similarity transforms of the raw input") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 10; ++k) {
        const Polyline r1 = synthetic::random_smooth_curve(rng), r2 = synthetic::random_smooth_curve(rng);
        const double d = sv::distance_fixed(canonical(r1), canonical(r2));
        const double dm = sv::distance_fixed(canonical(synthetic::random_similarity(r1, rng)),
                                             canonical(cyclic_shift(synthetic::random_similarity(r2, rng), 33)));
        CHECK(std::abs(d - dm) < 1e-4);
    }
}
