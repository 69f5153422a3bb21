#pragma once

#include "cellshape/contour.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

namespace cellshape::synthetic {

/// (a cos t, b sin t) at m parameter-uniform vertices, starting at t = phase.
Polyline ellipse(double a, double b, std::size_t m, double phase = 0.0);

/// Axis-aligned square of the given side with m vertices spread along the edges.
Polyline square(double side, std::size_t m);

/// Crescent bounded by two circular arcs, a stand-in for a sickled cell.
Polyline crescent(std::size_t m);

/// Radial jitter about the vertex centroid: r -> r (1 + amplitude * N(0, 1)).
Polyline with_radial_noise(const Polyline& pts, double amplitude, std::mt19937_64& rng);

/// Star-shaped random curve with a few low Fourier modes, stretched along a
/// random direction so its major axis is well defined.
Polyline random_smooth_curve(std::mt19937_64& rng, std::size_t m = 240);

/// Random similarity transform: rotation, uniform scale and translation.
Polyline random_similarity(const Polyline& pts, std::mt19937_64& rng);

/// Labeled corpus of circles (Normal), 3:1 ellipses (Sickle) and squares
/// (Other), each with radial noise and a random pose.
std::vector<RawContour> three_class_corpus(std::size_t per_class, double noise, std::uint64_t seed,
                                           std::size_t vertices = 200);

/// Writes one contour file per entry plus manifest.csv into `dir`.
std::filesystem::path write_corpus(const std::filesystem::path& dir, const std::vector<RawContour>& contours);

}  // namespace cellshape::synthetic
