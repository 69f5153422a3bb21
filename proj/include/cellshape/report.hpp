#pragma once

#include "cellshape/analysis.hpp"
#include "cellshape/distance.hpp"
#include "cellshape/templates.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace cellshape::report {

using nlohmann::json;

/// Class names in class-index order.
const std::vector<std::string>& class_names();

/// Rounded to two decimals for reporting.
double round2(double v);

/// Header row "id,<ids...>", then one row per id; full round-trip precision.
void write_distance_matrix_csv(const std::filesystem::path& path, const DistanceMatrix& dm);

/// "cell_id,d_circle,d_ellipse,label".
void write_features_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& features,
                        const std::vector<std::string>& labels);

json confusion_json(const analysis::ConfusionMatrix& cm);
json contingency_json(const analysis::ClusterTable& t);
/// Undefined ratios become null.
json metrics_json(const analysis::MetricsReport& m);
json anova_json(const analysis::AnovaResult& a);

std::string confusion_table(const analysis::ConfusionMatrix& cm);
std::string contingency_table(const analysis::ClusterTable& t);
std::string metrics_table(const analysis::MetricsReport& m);

void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cellshape::report
