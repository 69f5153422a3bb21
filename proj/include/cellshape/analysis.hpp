#pragma once

#include "cellshape/distance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cellshape::analysis {

/// Class index per sample; classes are 0..C-1 and lower indices win ties.
using Labels = std::vector<int>;

/// Stratified assignment of samples to folds. Throws Error when a class has
/// fewer members than folds.
std::vector<int> stratified_folds(const Labels& labels, int folds, std::uint64_t seed);

/// Out-of-fold k-nearest-neighbor prediction for every sample.
Labels knn_classify(const DistanceMatrix& dm, const Labels& labels, std::size_t k, int folds, std::uint64_t seed);

/// Linear discriminant analysis with pooled covariance and equal priors,
/// evaluated out-of-fold. `features` holds one row per sample.
Labels lda_classify(const std::vector<std::vector<double>>& features, const Labels& labels, int folds,
                    std::uint64_t seed);

/// Trained LDA model, exposed for direct use and testing.
struct LdaModel {
    std::vector<std::vector<double>> means;  // per class
    std::vector<std::vector<double>> inv_cov;
    int predict(const std::vector<double>& x) const;
};
LdaModel lda_fit(const std::vector<std::vector<double>>& features, const Labels& labels, int num_classes);

struct ClusterResult {
    std::size_t k = 0;
    std::vector<std::size_t> medoids;   // sample indices
    std::vector<int> assignment;        // group per sample, 0..k-1
    double total_cost = 0.0;
    double asw = 0.0;
};

/// PAM: greedy build (total-distance minimizer, then farthest points) and
/// best-improvement swaps until none lowers the cost.
ClusterResult kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed);

/// Serial reference of the swap search, kept for testing.
ClusterResult kmedoids_serial(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed);

/// Average silhouette width; members of singleton groups score 0.
double silhouette(const DistanceMatrix& dm, const std::vector<int>& assignment);

/// Square confusion matrix: rows true class, columns predicted class.
struct ConfusionMatrix {
    std::size_t classes = 0;
    std::vector<long> n;  // row-major

    explicit ConfusionMatrix(std::size_t c = 3) : classes(c), n(c * c, 0) {}
    long& operator()(std::size_t i, std::size_t j) { return n[i * classes + j]; }
    long operator()(std::size_t i, std::size_t j) const { return n[i * classes + j]; }
    long total() const;

    static ConfusionMatrix from_predictions(const Labels& truth, const Labels& predicted, std::size_t classes);
};

/// Rows true classes, columns groups; `matched` when groups were mapped to
/// classes and the table is a ConfusionMatrix.
struct ClusterTable {
    bool matched = false;
    std::size_t rows = 0, cols = 0;
    std::vector<long> n;
    std::vector<int> group_to_class;  // when matched
    ConfusionMatrix confusion;
};

/// For k = 3 (and three classes) groups are mapped to classes by the
/// permutation with the largest agreement; otherwise the raw contingency
/// table is returned.
ClusterTable cluster_confusion(const ClusterResult& cr, const Labels& labels, std::size_t classes = 3);

/// Percentages; an empty optional marks an undefined ratio.
struct MetricsReport {
    std::vector<std::optional<double>> tpr, precision, f1;
    double accuracy = 0.0;
    std::optional<double> sds;  // three-class matrices only
};

MetricsReport metrics(const ConfusionMatrix& cm);

struct AnovaResult {
    double ss_rows = 0.0, ss_cols = 0.0, ss_error = 0.0, ss_total = 0.0;
    int df_rows = 0, df_cols = 0, df_error = 0, df_total = 0;
    double ms_rows = 0.0, ms_cols = 0.0, ms_error = 0.0;
    std::optional<double> f_rows, f_cols;
    std::optional<double> p_rows, p_cols;
    double f_crit_rows = 0.0, f_crit_cols = 0.0;
};

/// Two-factor analysis of variance without replication on an r x c table.
AnovaResult anova_two_way(const std::vector<std::vector<double>>& table, double alpha = 0.05);

/// Upper critical value of the F distribution.
double f_critical(double alpha, double df1, double df2);

}  // namespace cellshape::analysis
