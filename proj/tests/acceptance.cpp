// Acceptance checks: one PASS / FAIL / SKIP line per criterion.
// Dataset-gated checks read the manifest named by ERYTHROCYTES_MANIFEST.

#include "oracle.hpp"
#include "support.hpp"

#include "cellshape/analysis.hpp"
#include "cellshape/distance.hpp"
#include "cellshape/experiment.hpp"
#include "cellshape/grassmann.hpp"
#include "cellshape/srvf.hpp"
#include "cellshape/templates.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace cellshape;
using namespace testsupport;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : (o.verdict == Verdict::Fail ? "FAIL" : "SKIP");
    if (o.verdict == Verdict::Fail) ++failures;
    std::cout << tag << "  " << id << "  " << title << "  | " << o.detail << std::endl;
}

Outcome verdict(bool ok, const std::string& detail) { return {ok ? Verdict::Pass : Verdict::Fail, detail}; }

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<std::filesystem::path> dataset_manifest() {
    const char* env = std::getenv("ERYTHROCYTES_MANIFEST");
    if (!env || !*env || !std::filesystem::exists(env)) return std::nullopt;
    return std::filesystem::path(env);
}

const Outcome kNoDataset{Verdict::Skip, "dataset not present (set ERYTHROCYTES_MANIFEST to its manifest.csv)"};

ExperimentConfig dataset_config(const std::filesystem::path& manifest, const std::string& out) {
    ExperimentConfig cfg;
    cfg.manifest = manifest;
    cfg.output = std::filesystem::temp_directory_path() / ("cellshape_acceptance_" + out);
    return cfg;
}

std::vector<double> circle_tangent(std::size_t N) {
    std::vector<double> th(N);
    for (std::size_t i = 0; i < N; ++i) th[i] = std::numbers::pi / 2 + 2.0 * std::numbers::pi * i / N;
    return th;
}

double matched_accuracy(const analysis::ClusterResult& cr, const analysis::Labels& y) {
    return analysis::metrics(analysis::cluster_confusion(cr, y).confusion).accuracy;
}

}  // namespace

int main() {
    std::cout << "acceptance criteria" << std::endl;
    const auto manifest = dataset_manifest();

    report("A1", "fixed S2 templates reproduce Acc 96.03 / SDS 99.84", [&]() -> Outcome {
        if (!manifest) return kNoDataset;
        auto cfg = dataset_config(*manifest, "a1");
        const auto r = cmd_classify(cfg);
        const double sds = r.metrics.sds.value_or(0.0);
        return verdict(std::abs(r.metrics.accuracy - 96.03) <= 2.5 && std::abs(sds - 99.84) <= 1.5 &&
                           r.seconds_total < 300.0,
                       fmt("Acc %.2f, SDS %.2f, %.1f s", r.metrics.accuracy, sds, r.seconds_total));
    });

    report("A2", "fixed S1 pairwise k-NN reproduces Acc 90", [&]() -> Outcome {
        if (!manifest) return kNoDataset;
        auto cfg = dataset_config(*manifest, "a2");
        cfg.space = Space::S1;
        cfg.features = Features::Pairwise;
        const auto r = cmd_classify(cfg);
        return verdict(std::abs(r.metrics.accuracy - 90.0) <= 3.0, fmt("Acc %.2f", r.metrics.accuracy));
    });

    report("A3", "k-medoids k=3 on fixed S2 templates reaches Acc 96 / SDS >= 97", [&]() -> Outcome {
        if (!manifest) return kNoDataset;
        auto cfg = dataset_config(*manifest, "a3");
        const auto r = cmd_cluster(cfg, 3);
        if (!r.metrics) return {Verdict::Fail, "no matched confusion (unlabeled cells?)"};
        const double sds = r.metrics->sds.value_or(0.0);
        return verdict(std::abs(r.metrics->accuracy - 96.0) <= 3.0 && sds >= 97.0,
                       fmt("Acc %.2f, SDS %.2f", r.metrics->accuracy, sds));
    });

    report("A4", "reparam S2 pairwise reproduces Acc 96.03 and is >= 20x slower than fixed", [&]() -> Outcome {
        if (!manifest) return kNoDataset;
        auto fixed = dataset_config(*manifest, "a4_fixed");
        fixed.features = Features::Pairwise;
        auto reparam = fixed;
        reparam.output = dataset_config(*manifest, "a4_reparam").output;
        reparam.method = Method::Reparam;
        const auto rf = cmd_classify(fixed);
        const auto rr = cmd_classify(reparam);
        const double ratio = rr.seconds_distances / rf.seconds_distances;
        return verdict(std::abs(rr.metrics.accuracy - 96.03) <= 3.0 && ratio >= 20.0,
                       fmt("Acc %.2f, time ratio %.1f", rr.metrics.accuracy, ratio));
    });

    report("P1", "metric sanity on 200 random curves", [&]() -> Outcome {
        const auto t0 = std::chrono::steady_clock::now();
        const auto cs = random_curves(200, 101);
        const auto g = prepare_all(cs, Space::S1);
        const auto q = prepare_all(cs, Space::S2);
        DistanceOptions o1, o2;
        o1.space = Space::S1;
        o2.space = Space::S2;
        const std::size_t k = cs.size();
        std::vector<double> d1(k * k);
        double self = 0.0, asym = 0.0, max1 = 0.0, max2 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            self = std::max({self, pair_distance(g[i], g[i], o1), pair_distance(q[i], q[i], o2)});
            for (std::size_t j = 0; j < k; ++j) {
                if (i == j) continue;
                d1[i * k + j] = pair_distance(g[i], g[j], o1);
                const double s2 = pair_distance(q[i], q[j], o2);
                max1 = std::max(max1, d1[i * k + j]);
                max2 = std::max(max2, s2);
                if (j < i) {
                    asym = std::max({asym, std::abs(d1[i * k + j] - d1[j * k + i]),
                                     std::abs(s2 - pair_distance(q[j], q[i], o2))});
                }
            }
        }
        long violations = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t c = 0; c < k; ++c)
                    if (d1[a * k + c] > d1[a * k + b] + d1[b * k + c] + 1e-9) ++violations;
        const double secs = seconds_since(t0);
        return verdict(self < 1e-6 && asym < 1e-9 && violations == 0 && max1 <= grassmann::kMaxDistance &&
                           max2 <= std::numbers::pi && secs < 60.0,
                       fmt("max d(a,a) %.1e, max asymmetry %.1e, triangle violations %ld, max d1 %.4f, max d2 %.4f, "
                           "%.1f s",
                           self, asym, violations, max1, max2, secs));
    });

    report("P2", "d_elastic(dp) <= d_elastic(shift) <= d_fixed on 100 random pairs", [&]() -> Outcome {
        const auto cs = random_curves(200, 103);
        long violations = 0;
        double worst_gain = 0.0;
        for (std::size_t i = 0; i < 200; i += 2) {
            const auto a = srvf::prepare(cs[i]), b = srvf::prepare(cs[i + 1]);
            srvf::ElasticOptions shift_only, dp;
            dp.use_dp = true;
            const double dd = srvf::distance_elastic(a, b, dp).d;
            const double ds = srvf::distance_elastic(a, b, shift_only).d;
            const double df = srvf::distance_fixed(a, b);
            if (!(dd <= ds) || !(ds <= df)) ++violations;
            worst_gain = std::max(worst_gain, ds - dd);
        }
        return verdict(violations == 0, fmt("violations %ld, largest DP improvement %.4f", violations, worst_gain));
    });

    report("P3", "round trips within 1e-3 at n = 295; analytic circle (e, f)", [&]() -> Outcome {
        std::vector<NormalizedCurve> cs{circle(), ellipse()};
        for (auto& c : random_curves(10, 107)) cs.push_back(std::move(c));
        double srvf_err = 0.0, gr_err = 0.0;
        for (const auto& c : cs) {
            srvf_err = std::max(srvf_err, max_point_error(srvf::from_srvf(srvf::to_srvf(c)), c.points));
            gr_err = std::max(gr_err, max_point_error(grassmann::basic_map(grassmann::to_grassmann(c)).points, c.points));
        }
        const auto g = grassmann::to_grassmann(circle());
        double ef_err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double t = 2.0 * std::numbers::pi * i / g.size() + std::numbers::pi / 2;
            ef_err = std::max({ef_err, std::abs(g.e[i] - std::cos(t / 2) / std::sqrt(std::numbers::pi)),
                               std::abs(g.f[i] - std::sin(t / 2) / std::sqrt(std::numbers::pi))});
        }
        return verdict(srvf_err < 1e-3 && gr_err < 1e-3 && ef_err < 1e-3,
                       fmt("SRVF %.1e, Grassmann %.1e, circle e/f %.1e", srvf_err, gr_err, ef_err));
    });

    report("P4", "similarity transforms and cyclic shifts of raw input change distances < 1e-4", [&]() -> Outcome {
        std::mt19937_64 rng(109);
        double worst = 0.0;
        for (int k = 0; k < 30; ++k) {
            const Polyline r1 = synthetic::random_smooth_curve(rng), r2 = synthetic::random_smooth_curve(rng);
            const auto a = canonical(r1), b = canonical(r2);
            const auto a2 = canonical(cyclic_shift(synthetic::random_similarity(r1, rng), 1 + rng() % 200));
            const auto b2 = canonical(cyclic_shift(synthetic::random_similarity(r2, rng), 1 + rng() % 200));
            for (Space s : {Space::S1, Space::S2}) {
                DistanceOptions o;
                o.space = s;
                worst = std::max(worst, std::abs(pair_distance(prepare(a, s), prepare(b, s), o) -
                                                 pair_distance(prepare(a2, s), prepare(b2, s), o)));
            }
        }
        return verdict(worst < 1e-4, fmt("largest change %.2e", worst));
    });

    report("P5", "step-1 shift search equals brute force; n=4096 quadrature matched at n=295", [&]() -> Outcome {
        const auto cs = random_curves(8, 113);
        long mismatches = 0;
        for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
            const auto a = srvf::prepare(cs[i]), b = srvf::prepare(cs[i + 1]);
            srvf::ElasticOptions eo;
            eo.shift_step = 1;
            double best = -2.0;
            for (std::size_t s = 0; s < a.size(); ++s) best = std::max(best, srvf::shifted_alignment(a, b, s, eo.rotation).similarity);
            if (srvf::distance_elastic(a, b, eo).d != std::acos(std::clamp(best, -1.0, 1.0))) ++mismatches;
            const auto ga = grassmann::to_grassmann(cs[i]), gb = grassmann::to_grassmann(cs[i + 1]);
            double gbest = 1e9;
            for (std::size_t s = 0; s < ga.size(); ++s) gbest = std::min(gbest, grassmann::shifted_distance(ga, gb, s));
            if (grassmann::distance_minshift(ga, gb, 1).d != gbest) ++mismatches;
        }
        const std::size_t N = 4096;
        const auto tc = circle_tangent(N), te = oracle::ellipse_tangent_by_arclength(4.0, 1.0, N);
        const double e1 = std::abs(grassmann::distance(grassmann::to_grassmann(circle()), grassmann::to_grassmann(ellipse())).d -
                                   oracle::grassmann_distance(tc, te));
        const double e2 = std::abs(srvf::distance_fixed(circle(), ellipse()) - oracle::srvf_flip_distance(tc, te));
        return verdict(mismatches == 0 && e1 < 1e-3 && e2 < 1e-3,
                       fmt("brute-force mismatches %ld, quadrature error S1 %.1e, S2 %.1e", mismatches, e1, e2));
    });

    report("P6", "reference confusion counts give SDS 99.84 and Normal F1 99.75; Acc <= SDS", [&]() -> Outcome {
        analysis::ConfusionMatrix cm(3);
        const long v[9] = {202, 0, 0, 0, 194, 16, 1, 8, 202};
        std::copy(v, v + 9, cm.n.begin());
        const auto m = analysis::metrics(cm);
        const double sds = std::round(*m.sds * 100.0) / 100.0, f1 = std::round(*m.f1[0] * 100.0) / 100.0;
        std::mt19937_64 rng(127);
        std::uniform_int_distribution<long> cnt(0, 100);
        long violations = 0;
        for (int k = 0; k < 1000; ++k) {
            analysis::ConfusionMatrix r(3);
            for (auto& x : r.n) x = cnt(rng);
            if (r.total() == 0) continue;
            const auto rm = analysis::metrics(r);
            if (rm.accuracy > *rm.sds) ++violations;
        }
        return verdict(sds == 99.84 && f1 == 99.75 && violations == 0,
                       fmt("SDS %.2f, Normal F1 %.2f, Acc > SDS in %ld of 1000", sds, f1, violations));
    });

    report("P7", "synthetic corpus: k-NN and k-medoids >= 95%; LDA on blobs >= 99%", [&]() -> Outcome {
        const auto raw = synthetic::three_class_corpus(30, 0.02, 131);
        std::vector<NormalizedCurve> cs;
        analysis::Labels y;
        for (const auto& r : raw) {
            cs.push_back(normalize(r));
            y.push_back(static_cast<int>(r.label.cls));
        }
        DistanceOptions o;
        const auto dm = distance_matrix(cs, o);
        const auto knn = analysis::knn_classify(dm, y, 3, 5, 0);
        const double acc_knn = analysis::metrics(analysis::ConfusionMatrix::from_predictions(y, knn, 3)).accuracy;
        const double acc_pam = matched_accuracy(analysis::kmedoids(dm, 3, 0), y);

        std::mt19937_64 rng(137);
        std::normal_distribution<double> g(0.0, 0.05);
        std::vector<std::vector<double>> x;
        analysis::Labels yb;
        const double centers[3][2] = {{0.0, 1.0}, {1.0, 0.0}, {0.7, 0.7}};
        for (int c = 0; c < 3; ++c) {
            for (int i = 0; i < 50; ++i) {
                x.push_back({centers[c][0] + g(rng), centers[c][1] + g(rng)});
                yb.push_back(c);
            }
        }
        const auto lda = analysis::lda_classify(x, yb, 5, 0);
        const double acc_lda = analysis::metrics(analysis::ConfusionMatrix::from_predictions(yb, lda, 3)).accuracy;
        return verdict(acc_knn >= 95.0 && acc_pam >= 95.0 && acc_lda >= 99.0,
                       fmt("k-NN %.2f, k-medoids %.2f, LDA %.2f", acc_knn, acc_pam, acc_lda));
    });

    report("P8", "bench slopes: pairwise 2 +- 0.3, templates 1 +- 0.3 on {50, 100, 200}", [&]() -> Outcome {
        ExperimentConfig cfg;
        cfg.output = std::filesystem::temp_directory_path() / "cellshape_acceptance_bench";
        const auto r = cmd_bench(cfg, {50, 100, 200});
        return verdict(r.pairwise_ok && r.templates_ok,
                       fmt("pairwise %.3f, templates %.3f (reparam/fixed ratio %.1f)", r.slope_pairwise,
                           r.slope_templates, r.ratio));
    });

    std::cout << (failures == 0 ? "all runnable criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
