#pragma once

#include "cellshape/contour.hpp"
#include "cellshape/grassmann.hpp"
#include "cellshape/options.hpp"
#include "cellshape/srvf.hpp"

#include <string>
#include <vector>

namespace cellshape {

/// Canonical circle and axis-aligned ellipse on the same grid as the cells.
struct TemplateSet {
    NormalizedCurve circle;
    NormalizedCurve ellipse;
    double aspect = 4.0;  // major / minor
};

struct FeatureVector {
    std::string cell_id;
    double d_circle = 0.0;
    double d_ellipse = 0.0;
};

inline constexpr double kDefaultEllipseAspect = 4.0;

TemplateSet make_templates(std::size_t n = kDefaultResolution, double aspect = kDefaultEllipseAspect);

/// Distances from one cell to both templates.
FeatureVector template_features(const NormalizedCurve& c, const TemplateSet& t, const DistanceOptions& opts);

/// Same for a batch, one cell per OpenMP work item.
std::vector<FeatureVector> template_features(const std::vector<NormalizedCurve>& cells, const TemplateSet& t,
                                             const DistanceOptions& opts);

/// Serial reference of the batch kernel, kept for testing.
std::vector<FeatureVector> template_features_serial(const std::vector<NormalizedCurve>& cells,
                                                    const TemplateSet& t, const DistanceOptions& opts);

}  // namespace cellshape
