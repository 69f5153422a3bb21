#include "cellshape/error.hpp"
#include "cellshape/srvf.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>

namespace cellshape::srvf {

namespace {

// Admissible slopes of one warp segment: coprime steps up to 4 samples.
constexpr std::array<std::array<int, 2>, 11> kSteps{{{1, 1},
                                                     {1, 2},
                                                     {2, 1},
                                                     {1, 3},
                                                     {3, 1},
                                                     {2, 3},
                                                     {3, 2},
                                                     {1, 4},
                                                     {4, 1},
                                                     {3, 4},
                                                     {4, 3}}};

Point2 sample_periodic(std::span<const Point2> q, double x) {
    const std::size_t n = q.size();
    const double fl = std::floor(x);
    const double frac = x - fl;
    const auto i0 = static_cast<std::size_t>(static_cast<long long>(fl) % static_cast<long long>(n));
    const std::size_t i1 = (i0 + 1) % n;
    return (1.0 - frac) * q[i0] + frac * q[i1];
}

}  // namespace

std::vector<double> dp_warp(std::span<const Point2> q1, std::span<const Point2> q2, std::size_t band) {
    const std::size_t n = q1.size();
    if (n != q2.size() || n < 3) {
        throw Error("dp_warp: grid mismatch");
    }
    const long long w = band == 0 ? static_cast<long long>(n) : static_cast<long long>(band);
    const std::size_t side = n + 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(side * side, inf);
    std::vector<std::int8_t> from(side * side, -1);
    auto at = [side](std::size_t i, std::size_t j) { return i * side + j; };
    auto in_band = [w](long long i, long long j) { return std::llabs(i - j) <= w; };
    const double dt = 1.0 / static_cast<double>(n);

    cost[at(0, 0)] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (!in_band(static_cast<long long>(i), static_cast<long long>(j))) {
                continue;
            }
            double best = inf;
            std::int8_t best_k = -1;
            for (std::size_t s = 0; s < kSteps.size(); ++s) {
                const auto di = static_cast<std::size_t>(kSteps[s][0]);
                const auto dj = static_cast<std::size_t>(kSteps[s][1]);
                if (di > i || dj > j) {
                    continue;
                }
                const std::size_t k = i - di, l = j - dj;
                const double prev = cost[at(k, l)];
                if (prev == inf) {
                    continue;
                }
                const double slope = static_cast<double>(dj) / static_cast<double>(di);
                const double root = std::sqrt(slope);
                double edge = 0.0;
                for (std::size_t m = k; m < i; ++m) {
                    const Point2 v = q1[m % n] - root * sample_periodic(q2, static_cast<double>(l) +
                                                                                static_cast<double>(m - k) * slope);
                    edge += dot(v, v);
                }
                const double total = prev + edge * dt;
                if (total < best) {
                    best = total;
                    best_k = static_cast<std::int8_t>(s);
                }
            }
            cost[at(i, j)] = best;
            from[at(i, j)] = best_k;
        }
    }
    if (cost[at(n, n)] == inf) {
        throw Error("dp_warp: no admissible warp");
    }

    // Walk back from (n, n) and fill gamma on each segment.
    std::vector<double> gamma(side, 0.0);
    std::size_t i = n, j = n;
    gamma[n] = 1.0;
    while (i > 0) {
        const auto s = static_cast<std::size_t>(from[at(i, j)]);
        const auto di = static_cast<std::size_t>(kSteps[s][0]);
        const auto dj = static_cast<std::size_t>(kSteps[s][1]);
        const std::size_t k = i - di, l = j - dj;
        const double slope = static_cast<double>(dj) / static_cast<double>(di);
        for (std::size_t m = k; m < i; ++m) {
            gamma[m] = (static_cast<double>(l) + static_cast<double>(m - k) * slope) * dt;
        }
        i = k;
        j = l;
    }
    return gamma;
}

std::vector<Point2> warp(std::span<const Point2> q2, const std::vector<double>& gamma) {
    const std::size_t n = q2.size();
    if (gamma.size() != n + 1) {
        throw Error("warp: gamma must have n + 1 samples");
    }
    std::vector<Point2> out(n);
    const double scale = static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double slope = (gamma[m + 1] - gamma[m]) * scale;
        out[m] = std::sqrt(slope) * sample_periodic(q2, gamma[m] * scale);
    }
    return out;
}

}  // namespace cellshape::srvf
