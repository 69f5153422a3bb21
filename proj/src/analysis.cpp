#include "cellshape/analysis.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace cellshape::analysis {

namespace {

int class_count(const Labels& labels) {
    int c = 0;
    for (int l : labels) {
        if (l < 0) {
            throw Error("labels must be non-negative class indices");
        }
        c = std::max(c, l + 1);
    }
    return c;
}

void require_labels(const DistanceMatrix& dm, const Labels& labels) {
    if (labels.size() != dm.size()) {
        throw Error("label count " + std::to_string(labels.size()) + " does not match " +
                    std::to_string(dm.size()) + " samples");
    }
}

/// Seeded visiting order used to break exact ties.
std::vector<std::size_t> tie_order(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

struct SwapCandidate {
    double delta = 0.0;
    std::size_t medoid_slot = 0;
    std::size_t point = 0;
    bool valid = false;

    bool better_than(const SwapCandidate& o) const {
        if (!o.valid) return valid;
        if (!valid) return false;
        if (delta != o.delta) return delta < o.delta;
        if (medoid_slot != o.medoid_slot) return medoid_slot < o.medoid_slot;
        return point < o.point;
    }
};

ClusterResult run_pam(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed, bool parallel) {
    const std::size_t n = dm.size();
    if (k < 2 || k > n) {
        throw Error("kmedoids: k must be in [2, " + std::to_string(n) + "], got " + std::to_string(k));
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool dup = false;
        for (std::size_t j = 0; j < i && !dup; ++j) dup = dm(i, j) == 0.0;
        distinct += dup ? 0 : 1;
    }
    if (k > distinct) {
        throw Error("kmedoids: k = " + std::to_string(k) + " exceeds the " + std::to_string(distinct) +
                    " distinct points");
    }
    const std::vector<std::size_t> order = tie_order(n, seed);
    std::vector<bool> is_medoid(n, false);
    std::vector<std::size_t> medoids;

    // Build: central point first, then repeatedly the point farthest from
    // the current medoids.
    {
        std::size_t best = order[0];
        double best_sum = std::numeric_limits<double>::infinity();
        for (std::size_t i : order) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += dm(i, j);
            if (s < best_sum) {
                best_sum = s;
                best = i;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = true;
    }
    std::vector<double> nearest(n);
    for (std::size_t j = 0; j < n; ++j) nearest[j] = dm(medoids[0], j);
    while (medoids.size() < k) {
        std::size_t best = n;
        double best_gap = -1.0;
        for (std::size_t i : order) {
            if (!is_medoid[i] && nearest[i] > best_gap) {
                best_gap = nearest[i];
                best = i;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = true;
        for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], dm(best, j));
    }

    std::vector<std::size_t> near_slot(n);
    std::vector<double> near_d(n), second_d(n);
    auto refresh = [&] {
        for (std::size_t j = 0; j < n; ++j) {
            double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
            std::size_t s1 = 0;
            for (std::size_t s = 0; s < k; ++s) {
                const double d = dm(medoids[s], j);
                if (d < d1) {
                    d2 = d1;
                    d1 = d;
                    s1 = s;
                } else if (d < d2) {
                    d2 = d;
                }
            }
            near_slot[j] = s1;
            near_d[j] = d1;
            second_d[j] = d2;
        }
    };
    refresh();
    double cost = std::accumulate(near_d.begin(), near_d.end(), 0.0);

    const double eps = 1e-12 * std::max(1.0, cost);
    for (std::size_t iter = 0; iter < 10000; ++iter) {
        SwapCandidate best;
        const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (parallel)
        {
            SwapCandidate local;
#pragma omp for schedule(static)
            for (std::ptrdiff_t oo = 0; oo < count; ++oo) {
                const auto o = static_cast<std::size_t>(oo);
                if (is_medoid[o]) continue;
                for (std::size_t slot = 0; slot < k; ++slot) {
                    double delta = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        const double dj = dm(o, j);
                        if (near_slot[j] == slot) {
                            delta += std::min(second_d[j], dj) - near_d[j];
                        } else if (dj < near_d[j]) {
                            delta += dj - near_d[j];
                        }
                    }
                    const SwapCandidate cand{delta, slot, o, true};
                    if (cand.better_than(local)) local = cand;
                }
            }
#pragma omp critical(pam_best)
            if (local.better_than(best)) best = local;
        }
        if (!best.valid || best.delta >= -eps) {
            break;
        }
        is_medoid[medoids[best.medoid_slot]] = false;
        medoids[best.medoid_slot] = best.point;
        is_medoid[best.point] = true;
        refresh();
        cost = std::accumulate(near_d.begin(), near_d.end(), 0.0);
    }

    ClusterResult r;
    r.k = k;
    r.medoids = medoids;
    r.assignment.resize(n);
    for (std::size_t j = 0; j < n; ++j) r.assignment[j] = static_cast<int>(near_slot[j]);
    // A medoid always belongs to its own group, even when a twin sits at distance 0.
    for (std::size_t s = 0; s < k; ++s) r.assignment[medoids[s]] = static_cast<int>(s);
    r.total_cost = cost;
    r.asw = silhouette(dm, r.assignment);
    return r;
}

void invert_in_place(std::vector<std::vector<double>>& a, double singular_tol) {
    const std::size_t p = a.size();
    std::vector<std::vector<double>> inv(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (!(std::abs(a[pivot][col]) > singular_tol)) {
            throw Error("lda: singular pooled covariance");
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double d = a[col][col];
        for (std::size_t c = 0; c < p; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c < p; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    a = std::move(inv);
}

}  // namespace

std::vector<int> stratified_folds(const Labels& labels, int folds, std::uint64_t seed) {
    if (folds < 2) {
        throw Error("cross-validation needs at least 2 folds");
    }
    const int classes = class_count(labels);
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
    std::mt19937_64 rng(seed);
    std::vector<int> fold(labels.size(), 0);
    std::size_t offset = 0;
    for (int c = 0; c < classes; ++c) {
        auto& m = members[c];
        if (m.empty()) continue;
        if (m.size() < static_cast<std::size_t>(folds)) {
            throw Error("class " + std::to_string(c) + " has " + std::to_string(m.size()) +
                        " members, fewer than the " + std::to_string(folds) + " folds");
        }
        std::shuffle(m.begin(), m.end(), rng);
        for (std::size_t pos = 0; pos < m.size(); ++pos) {
            fold[m[pos]] = static_cast<int>((offset + pos) % static_cast<std::size_t>(folds));
        }
        offset += m.size();
    }
    return fold;
}

Labels knn_classify(const DistanceMatrix& dm, const Labels& labels, std::size_t k, int folds, std::uint64_t seed) {
    require_labels(dm, labels);
    if (k == 0) {
        throw Error("knn: k must be >= 1");
    }
    const int classes = class_count(labels);
    const std::vector<int> fold = stratified_folds(labels, folds, seed);
    const std::size_t n = dm.size();
    Labels predicted(n, 0);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t ii = 0; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        std::vector<std::pair<double, std::size_t>> pool;
        pool.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (fold[j] != fold[i]) pool.emplace_back(dm(i, j), j);
        }
        const std::size_t take = std::min(k, pool.size());
        std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end());
        std::vector<int> votes(classes, 0);
        std::vector<double> dist_sum(classes, 0.0);
        for (std::size_t r = 0; r < take; ++r) {
            const int c = labels[pool[r].second];
            ++votes[c];
            dist_sum[c] += pool[r].first;
        }
        int best = -1;
        for (int c = 0; c < classes; ++c) {
            if (votes[c] == 0) continue;
            if (best < 0 || votes[c] > votes[best] ||
                (votes[c] == votes[best] && dist_sum[c] / votes[c] < dist_sum[best] / votes[best])) {
                best = c;
            }
        }
        predicted[i] = best;
    }
    return predicted;
}

int LdaModel::predict(const std::vector<double>& x) const {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    const std::size_t p = x.size();
    for (std::size_t c = 0; c < means.size(); ++c) {
        if (means[c].empty()) continue;
        double lin = 0.0, quad = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            double w = 0.0;
            for (std::size_t s = 0; s < p; ++s) w += inv_cov[r][s] * means[c][s];
            lin += x[r] * w;
            quad += means[c][r] * w;
        }
        const double score = lin - 0.5 * quad;
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(c);
        }
    }
    return best;
}

LdaModel lda_fit(const std::vector<std::vector<double>>& features, const Labels& labels, int num_classes) {
    if (features.empty() || features.size() != labels.size()) {
        throw Error("lda: feature and label counts differ");
    }
    const std::size_t p = features[0].size();
    LdaModel model;
    model.means.assign(num_classes, {});
    std::vector<std::size_t> counts(num_classes, 0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != p) throw Error("lda: ragged feature rows");
        auto& m = model.means[labels[i]];
        if (m.empty()) m.assign(p, 0.0);
        for (std::size_t r = 0; r < p; ++r) m[r] += features[i][r];
        ++counts[labels[i]];
    }
    for (int c = 0; c < num_classes; ++c) {
        if (counts[c] == 0) continue;
        if (counts[c] < 2) {
            throw Error("lda: class " + std::to_string(c) + " needs at least 2 training samples");
        }
        for (auto& v : model.means[c]) v /= static_cast<double>(counts[c]);
    }
    std::vector<std::vector<double>> cov(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& m = model.means[labels[i]];
        for (std::size_t r = 0; r < p; ++r) {
            for (std::size_t s = 0; s < p; ++s) {
                cov[r][s] += (features[i][r] - m[r]) * (features[i][s] - m[s]);
            }
        }
    }
    const std::size_t used = static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                                    [](std::size_t c) { return c > 0; }));
    const double denom = static_cast<double>(features.size() > used ? features.size() - used : features.size());
    double trace = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t s = 0; s < p; ++s) cov[r][s] /= denom;
        trace += cov[r][r];
    }
    for (std::size_t r = 0; r < p; ++r) cov[r][r] += 1e-9 * trace;
    const double scale = trace / static_cast<double>(p);
    invert_in_place(cov, scale > 0.0 ? 1e-12 * scale : 0.0);
    model.inv_cov = std::move(cov);
    return model;
}

Labels lda_classify(const std::vector<std::vector<double>>& features, const Labels& labels, int folds,
                    std::uint64_t seed) {
    const int classes = class_count(labels);
    const std::vector<int> fold = stratified_folds(labels, folds, seed);
    Labels predicted(labels.size(), 0);
    for (int f = 0; f < folds; ++f) {
        std::vector<std::vector<double>> train;
        Labels train_labels;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (fold[i] != f) {
                train.push_back(features[i]);
                train_labels.push_back(labels[i]);
            }
        }
        const LdaModel model = lda_fit(train, train_labels, classes);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (fold[i] == f) predicted[i] = model.predict(features[i]);
        }
    }
    return predicted;
}

ClusterResult kmedoids(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed) {
    return run_pam(dm, k, seed, true);
}

ClusterResult kmedoids_serial(const DistanceMatrix& dm, std::size_t k, std::uint64_t seed) {
    return run_pam(dm, k, seed, false);
}

double silhouette(const DistanceMatrix& dm, const std::vector<int>& assignment) {
    const std::size_t n = dm.size();
    if (assignment.size() != n) {
        throw Error("silhouette: assignment size mismatch");
    }
    int groups = 0;
    for (int g : assignment) groups = std::max(groups, g + 1);
    std::vector<std::size_t> sizes(groups, 0);
    for (int g : assignment) ++sizes[g];
    const auto non_empty = std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; });
    if (non_empty < 2) {
        throw Error("silhouette: need at least 2 non-empty groups");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int own = assignment[i];
        if (sizes[own] <= 1) continue;
        std::vector<double> sums(groups, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) sums[assignment[j]] += dm(i, j);
        }
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int g = 0; g < groups; ++g) {
            if (g != own && sizes[g] > 0) b = std::min(b, sums[g] / static_cast<double>(sizes[g]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

long ConfusionMatrix::total() const { return std::accumulate(n.begin(), n.end(), 0L); }

ConfusionMatrix ConfusionMatrix::from_predictions(const Labels& truth, const Labels& predicted, std::size_t classes) {
    if (truth.size() != predicted.size()) {
        throw Error("confusion: prediction count mismatch");
    }
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || predicted[i] < 0 || static_cast<std::size_t>(truth[i]) >= classes ||
            static_cast<std::size_t>(predicted[i]) >= classes) {
            throw Error("confusion: class index out of range");
        }
        ++cm(static_cast<std::size_t>(truth[i]), static_cast<std::size_t>(predicted[i]));
    }
    return cm;
}

ClusterTable cluster_confusion(const ClusterResult& cr, const Labels& labels, std::size_t classes) {
    if (labels.size() != cr.assignment.size()) {
        throw Error("cluster_confusion: label count mismatch");
    }
    ClusterTable t;
    t.rows = classes;
    t.cols = cr.k;
    t.n.assign(t.rows * t.cols, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++t.n[static_cast<std::size_t>(labels[i]) * t.cols + static_cast<std::size_t>(cr.assignment[i])];
    }
    if (cr.k != 3 || classes != 3) {
        return t;
    }
    std::array<int, 3> perm{0, 1, 2}, best_perm = perm;
    long best = -1;
    do {
        long agree = 0;
        for (std::size_t g = 0; g < 3; ++g) agree += t.n[static_cast<std::size_t>(perm[g]) * 3 + g];
        if (agree > best) {
            best = agree;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    t.matched = true;
    t.group_to_class.assign(best_perm.begin(), best_perm.end());
    t.confusion = ConfusionMatrix(3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t g = 0; g < 3; ++g) {
            t.confusion(c, static_cast<std::size_t>(best_perm[g])) += t.n[c * 3 + g];
        }
    }
    return t;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    const long total = cm.total();
    if (cm.classes == 0 || total <= 0) {
        throw Error("metrics: empty confusion matrix");
    }
    const std::size_t c = cm.classes;
    MetricsReport r;
    long trace = 0;
    for (std::size_t i = 0; i < c; ++i) {
        long row = 0, col = 0;
        for (std::size_t j = 0; j < c; ++j) {
            row += cm(i, j);
            col += cm(j, i);
        }
        trace += cm(i, i);
        std::optional<double> tpr, prec, f1;
        if (row > 0) tpr = 100.0 * static_cast<double>(cm(i, i)) / static_cast<double>(row);
        if (col > 0) prec = 100.0 * static_cast<double>(cm(i, i)) / static_cast<double>(col);
        if (tpr && prec && *tpr + *prec > 0.0) f1 = 2.0 * *tpr * *prec / (*tpr + *prec);
        r.tpr.push_back(tpr);
        r.precision.push_back(prec);
        r.f1.push_back(f1);
    }
    r.accuracy = 100.0 * static_cast<double>(trace) / static_cast<double>(total);
    if (c == 3) {
        r.sds = 100.0 * static_cast<double>(trace + cm(1, 2) + cm(2, 1)) / static_cast<double>(total);
    }
    return r;
}

}  // namespace cellshape::analysis
