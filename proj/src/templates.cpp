#include "cellshape/templates.hpp"

#include "cellshape/distance.hpp"
#include "cellshape/error.hpp"
#include "cellshape/synthetic.hpp"

#include <algorithm>
#include <optional>

namespace cellshape {

namespace {

struct PreparedTemplates {
    ShapeRep circle;
    ShapeRep ellipse;
    std::size_t n = 0;
};

PreparedTemplates prepare_templates(const TemplateSet& t, Space space) {
    return {prepare(t.circle, space), prepare(t.ellipse, space), t.circle.size()};
}

FeatureVector features_for(const NormalizedCurve& c, const PreparedTemplates& pt, const DistanceOptions& opts) {
    if (c.size() != pt.n) {
        throw Error("template_features: cell '" + c.meta.source_id + "' has " + std::to_string(c.size()) +
                    " samples, templates have a different grid");
    }
    const ShapeRep cell = prepare(c, opts.space);
    // The cell is the curve that gets re-parameterized, so it goes second.
    return {c.meta.source_id, pair_distance(pt.circle, cell, opts), pair_distance(pt.ellipse, cell, opts)};
}

}  // namespace

TemplateSet make_templates(std::size_t n, double aspect) {
    if (n < 3) {
        throw Error("make_templates: need at least 3 samples");
    }
    if (!(aspect > 1.0) || !std::isfinite(aspect)) {
        throw Error("make_templates: ellipse aspect must be > 1");
    }
    const std::size_t dense = std::max<std::size_t>(2048, 4 * n);
    TemplateSet t;
    t.aspect = aspect;
    t.circle = normalize(RawContour{"template:circle", synthetic::ellipse(1.0, 1.0, dense), {}}, n);
    t.ellipse = normalize(RawContour{"template:ellipse", synthetic::ellipse(aspect, 1.0, dense), {}}, n);
    return t;
}

FeatureVector template_features(const NormalizedCurve& c, const TemplateSet& t, const DistanceOptions& opts) {
    return features_for(c, prepare_templates(t, opts.space), opts);
}

std::vector<FeatureVector> template_features(const std::vector<NormalizedCurve>& cells, const TemplateSet& t,
                                             const DistanceOptions& opts) {
    const PreparedTemplates pt = prepare_templates(t, opts.space);
    std::vector<FeatureVector> out(cells.size());
    std::optional<std::string> failure;
    const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = features_for(cells[i], pt, opts);
        } catch (const std::exception& e) {
#pragma omp critical(template_failure)
            if (!failure) failure = "cell '" + cells[i].meta.source_id + "': " + e.what();
        }
    }
    if (failure) {
        throw Error(*failure);
    }
    return out;
}

std::vector<FeatureVector> template_features_serial(const std::vector<NormalizedCurve>& cells,
                                                    const TemplateSet& t, const DistanceOptions& opts) {
    const PreparedTemplates pt = prepare_templates(t, opts.space);
    std::vector<FeatureVector> out;
    out.reserve(cells.size());
    for (const auto& c : cells) {
        try {
            out.push_back(features_for(c, pt, opts));
        } catch (const std::exception& e) {
            throw Error("cell '" + c.meta.source_id + "': " + e.what());
        }
    }
    return out;
}

}  // namespace cellshape
