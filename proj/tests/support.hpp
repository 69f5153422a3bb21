#pragma once

#include "cellshape/contour.hpp"
#include "cellshape/synthetic.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testsupport {

using namespace cellshape;

inline NormalizedCurve canonical(const Polyline& pts, std::size_t n = kDefaultResolution, std::string id = "c") {
    return normalize(RawContour{std::move(id), pts, {}}, n);
}

inline NormalizedCurve circle(std::size_t n = kDefaultResolution) {
    return canonical(synthetic::ellipse(1.0, 1.0, 2000), n, "circle");
}

inline NormalizedCurve ellipse(double aspect = 4.0, std::size_t n = kDefaultResolution) {
    return canonical(synthetic::ellipse(aspect, 1.0, 2000), n, "ellipse");
}

inline std::vector<NormalizedCurve> random_curves(std::size_t count, std::uint64_t seed,
                                                  std::size_t n = kDefaultResolution) {
    std::mt19937_64 rng(seed);
    std::vector<NormalizedCurve> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(canonical(synthetic::random_smooth_curve(rng), n, "r" + std::to_string(i)));
    }
    return out;
}

inline double max_point_error(const Polyline& a, const Polyline& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, distance(a[i], b[i]));
    return m;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("cellshape_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testsupport
