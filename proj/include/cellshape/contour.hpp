#pragma once

#include "cellshape/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cellshape {

enum class CellClass { Normal, Sickle, OtherDeformation, Unlabeled };

/// Class tag of a contour; `name` carries the free-text label when the class
/// is Unlabeled and the canonical spelling otherwise.
struct Label {
    CellClass cls = CellClass::Unlabeled;
    std::string name;

    static Label parse(std::string_view text);
    friend bool operator==(const Label&, const Label&) = default;
};

std::string_view to_string(CellClass c);

/// An ordered polygon as read from disk.
struct RawContour {
    std::string id;
    Polyline points;
    Label label;
};

/// Provenance carried along with a canonical curve.
struct CurveMeta {
    std::string source_id;
    Label label;
    double rotation = 0.0;  // radians applied to the input to bring its major axis onto x
    bool degenerate_axis = false;
};

/// Closed curve resampled at n equal chords, centered, unit length, CCW,
/// major axis on x and starting at the sample of largest x.
struct NormalizedCurve {
    Polyline points;
    CurveMeta meta;

    std::size_t size() const { return points.size(); }
};

inline constexpr std::size_t kDefaultResolution = 295;

/// Drops consecutive duplicates (including a repeated closing vertex) and
/// checks the remaining polygon: >= 3 points, simple. Throws Error.
RawContour validated(RawContour c);

RawContour orient_ccw(RawContour c);

/// n points on the polygon with equal consecutive chord lengths, the first
/// vertex kept as anchor.
RawContour resample_equidistant(const RawContour& c, std::size_t n);

struct AxisEstimate {
    double angle = 0.0;  // [0, pi)
    bool degenerate = false;
};

/// Direction of the dominant eigenvector of the point covariance.
AxisEstimate principal_axis(std::span<const Point2> points);

/// Rotates a centered, unit-length, CCW, equidistant curve so the major axis
/// lies on x, then rolls the samples so points[0] has maximal x.
NormalizedCurve align_and_fix_start(const Polyline& curve, CurveMeta meta = {});

NormalizedCurve normalize(const RawContour& c, std::size_t n = kDefaultResolution);

/// Reinterprets a canonical curve as raw input.
RawContour as_raw(const NormalizedCurve& c);

/// Cyclic index shift: result[i] = points[(i + s) mod n].
NormalizedCurve shifted(const NormalizedCurve& c, std::size_t s);

// -- file formats ------------------------------------------------------------

/// One "x,y" pair per line.
Polyline read_contour_file(const std::filesystem::path& path);
void write_contour_file(const std::filesystem::path& path, std::span<const Point2> pts);

/// CSV manifest with header "path,label"; paths are relative to the manifest.
std::vector<RawContour> load_contours(const std::filesystem::path& manifest_path);

}  // namespace cellshape
