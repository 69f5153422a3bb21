#pragma once

#include "cellshape/analysis.hpp"
#include "cellshape/distance.hpp"
#include "cellshape/options.hpp"
#include "cellshape/templates.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cellshape {

enum class Features { Pairwise, Templates };
enum class Classifier { Auto, Knn, Lda };

std::string_view to_string(Features f);
std::string_view to_string(Classifier c);
Features parse_features(std::string_view s);
Classifier parse_classifier(std::string_view s);

struct ExperimentConfig {
    std::filesystem::path manifest;
    std::size_t n = kDefaultResolution;
    Space space = Space::S2;
    Method method = Method::Fixed;
    Features features = Features::Templates;
    Classifier classifier = Classifier::Auto;  // pairwise -> knn, templates -> lda
    std::size_t shift_step = 5;
    std::size_t knn_k = 1;
    int folds = 5;
    double ellipse_aspect = kDefaultEllipseAspect;
    std::uint64_t seed = 0;
    std::filesystem::path output = "out";
    std::optional<srvf::RotationMode> rotation;  // unset: flip for fixed, procrustes for reparam
    bool dp = false;

    /// Throws InputError naming the offending field.
    void validate() const;
    DistanceOptions distance_options() const;
    Classifier resolved_classifier() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Applies every key present in `j` on top of `cfg`; unknown keys are errors.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);

/// Canonical curves of a manifest, normalized in parallel.
std::vector<NormalizedCurve> load_normalized(const std::filesystem::path& manifest, std::size_t n);

/// Class indices; throws InputError for unlabeled cells.
analysis::Labels class_labels(const std::vector<NormalizedCurve>& curves);

struct ClassifyOutcome {
    analysis::ConfusionMatrix confusion;
    analysis::MetricsReport metrics;
    double seconds_distances = 0.0;
    double seconds_total = 0.0;
};

/// Writes distances.csv or features.csv, confusion.json, metrics.json,
/// metrics.txt and report.json into cfg.output.
ClassifyOutcome cmd_classify(const ExperimentConfig& cfg);

struct ClusterOutcome {
    analysis::ClusterResult clusters;
    analysis::ClusterTable table;
    std::optional<analysis::MetricsReport> metrics;  // k = 3 with labels
    double seconds_total = 0.0;
};

/// Writes cluster.json, clusters.txt and report.json.
ClusterOutcome cmd_cluster(const ExperimentConfig& cfg, std::size_t k);

struct GeodesicOutcome {
    std::filesystem::path svg;
    double distance = 0.0;
    std::vector<Polyline> frames;
};

GeodesicOutcome cmd_geodesic(const ExperimentConfig& cfg, const std::string& id_a, const std::string& id_b,
                             std::size_t steps);

struct BenchRow {
    std::size_t cells = 0;
    double pairwise_fixed = 0.0;  // seconds
    double templates_fixed = 0.0;
};

struct BenchOutcome {
    std::vector<BenchRow> rows;
    double slope_pairwise = 0.0;
    double slope_templates = 0.0;
    std::size_t ratio_cells = 0;
    double ratio = 0.0;             // reparam / fixed pairwise time
    double ratio_required = 0.0;
    bool pairwise_ok = false, templates_ok = false, ratio_ok = false;
    bool ok() const { return pairwise_ok && templates_ok && ratio_ok; }
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Times the serial kernels on synthetic curves at each size. Writes
/// bench.json and bench.txt. `ratio_cells` = 0 uses the smallest size.
BenchOutcome cmd_bench(const ExperimentConfig& cfg, const std::vector<std::size_t>& sizes,
                       std::size_t ratio_cells = 0);

struct PreprocessOutcome {
    std::filesystem::path manifest;
    std::size_t written = 0;
    std::vector<std::string> skipped;  // "path: reason"
};

/// Converts a directory of contour text files into the manifest + CSV layout.
PreprocessOutcome cmd_preprocess(const std::filesystem::path& input, const std::filesystem::path& output);

}  // namespace cellshape
