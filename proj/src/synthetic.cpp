#include "cellshape/synthetic.hpp"

#include "cellshape/error.hpp"

#include <fstream>
#include <numbers>

namespace cellshape::synthetic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Polyline ellipse(double a, double b, std::size_t m, double phase) {
    Polyline pts(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = phase + kTwoPi * static_cast<double>(i) / static_cast<double>(m);
        pts[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return pts;
}

Polyline square(double side, std::size_t m) {
    const std::size_t per_edge = std::max<std::size_t>(1, m / 4);
    const double h = 0.5 * side;
    const Point2 corners[4] = {{h, -h}, {h, h}, {-h, h}, {-h, -h}};
    Polyline pts;
    pts.reserve(4 * per_edge);
    for (int e = 0; e < 4; ++e) {
        const Point2 a = corners[e], b = corners[(e + 1) % 4];
        for (std::size_t k = 0; k < per_edge; ++k) {
            pts.push_back(a + (static_cast<double>(k) / static_cast<double>(per_edge)) * (b - a));
        }
    }
    return pts;
}

Polyline crescent(std::size_t m) {
    // Outer unit circle arc and an inner arc of a shifted circle, both
    // spanning the same chord endpoints.
    const std::size_t half = std::max<std::size_t>(3, m / 2);
    const double span = 0.8 * std::numbers::pi;  // half opening of the outer arc
    Polyline pts;
    pts.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        const double t = -span + 2.0 * span * static_cast<double>(i) / static_cast<double>(half);
        pts.push_back({std::cos(t), std::sin(t)});
    }
    const Point2 tip_a{std::cos(span), std::sin(span)};
    // Inner circle through both tips with its center moved towards -x.
    const double cx = -0.55;
    const double r = distance(tip_a, {cx, 0.0});
    const double ta = std::atan2(tip_a.y, tip_a.x - cx);
    for (std::size_t i = 0; i < half; ++i) {
        const double t = ta - (2.0 * ta) * static_cast<double>(i) / static_cast<double>(half);
        pts.push_back({cx + r * std::cos(t), r * std::sin(t)});
    }
    return pts;
}

Polyline with_radial_noise(const Polyline& pts, double amplitude, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Point2 c = vertex_centroid(pts);
    Polyline out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        const double factor = std::max(0.2, 1.0 + amplitude * gauss(rng));
        out.push_back(c + factor * (p - c));
    }
    return out;
}

Polyline random_smooth_curve(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> coeff(-0.08, 0.08);
    std::uniform_real_distribution<double> stretch(1.3, 2.2);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    double a[5] = {}, b[5] = {};
    for (int k = 2; k < 5; ++k) {
        a[k] = coeff(rng);
        b[k] = coeff(rng);
    }
    const double sx = stretch(rng);
    const Mat2 rot = Mat2::rotation(angle(rng));
    Polyline pts(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
        double r = 1.0;
        for (int k = 2; k < 5; ++k) {
            r += a[k] * std::cos(k * phi) + b[k] * std::sin(k * phi);
        }
        pts[i] = rot * Point2{sx * r * std::cos(phi), r * std::sin(phi)};
    }
    return pts;
}

Polyline random_similarity(const Polyline& pts, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
    std::uniform_real_distribution<double> offset(-50.0, 50.0);
    const double s = std::exp(log_scale(rng));
    const Mat2 r = Mat2::rotation(angle(rng));
    const Mat2 m{s * r.a11, s * r.a12, s * r.a21, s * r.a22};
    return transformed(pts, m, {offset(rng), offset(rng)});
}

std::vector<RawContour> three_class_corpus(std::size_t per_class, double noise, std::uint64_t seed,
                                           std::size_t vertices) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::vector<RawContour> out;
    out.reserve(3 * per_class);
    const char* names[3] = {"circle", "ellipse", "square"};
    const Label labels[3] = {Label::parse("Normal"), Label::parse("Sickle"), Label::parse("Other")};
    for (int cls = 0; cls < 3; ++cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            Polyline base;
            switch (cls) {
                case 0: base = ellipse(1.0, 1.0, vertices, phase(rng)); break;
                case 1: base = ellipse(3.0, 1.0, vertices, phase(rng)); break;
                default: base = square(2.0, vertices); break;
            }
            Polyline pts = random_similarity(with_radial_noise(base, noise, rng), rng);
            out.push_back({std::string(names[cls]) + "_" + std::to_string(i), std::move(pts), labels[cls]});
        }
    }
    return out;
}

std::filesystem::path write_corpus(const std::filesystem::path& dir, const std::vector<RawContour>& contours) {
    std::filesystem::create_directories(dir / "contours");
    const auto manifest = dir / "manifest.csv";
    std::ofstream out(manifest);
    if (!out) {
        throw InputError("cannot write manifest '" + manifest.string() + "'");
    }
    out << "path,label\n";
    for (const auto& c : contours) {
        const std::string rel = "contours/" + c.id + ".csv";
        write_contour_file(dir / rel, c.points);
        out << rel << ',' << c.label.name << '\n';
    }
    return manifest;
}

}  // namespace cellshape::synthetic
