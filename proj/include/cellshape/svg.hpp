#pragma once

#include "cellshape/geometry.hpp"

#include <string>
#include <vector>

namespace cellshape::svg {

struct GeodesicFigure {
    std::vector<Polyline> frames;  // first and last are the endpoints
    double distance = 0.0;
    std::string label_a, label_b;
    std::string space;             // shown in the caption
};

/// Left panel: both endpoints overlaid. Right: the frames in order, all on one
/// common scale. Coordinates are printed with fixed precision so output is
/// byte-stable.
std::string render_geodesic(const GeodesicFigure& fig);

}  // namespace cellshape::svg
