#include "cellshape/experiment.hpp"

#include "cellshape/error.hpp"
#include "cellshape/report.hpp"
#include "cellshape/svg.hpp"
#include "cellshape/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace cellshape {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

int class_index(CellClass c) {
    switch (c) {
        case CellClass::Normal: return 0;
        case CellClass::Sickle: return 1;
        case CellClass::OtherDeformation: return 2;
        case CellClass::Unlabeled: break;
    }
    return -1;
}

std::vector<std::string> label_names(const std::vector<NormalizedCurve>& curves) {
    std::vector<std::string> out;
    out.reserve(curves.size());
    for (const auto& c : curves) out.push_back(c.meta.label.name);
    return out;
}

std::vector<std::vector<double>> feature_rows(const std::vector<FeatureVector>& f) {
    std::vector<std::vector<double>> rows;
    rows.reserve(f.size());
    for (const auto& v : f) rows.push_back({v.d_circle, v.d_ellipse});
    return rows;
}

std::vector<std::string> feature_ids(const std::vector<FeatureVector>& f) {
    std::vector<std::string> ids;
    ids.reserve(f.size());
    for (const auto& v : f) ids.push_back(v.cell_id);
    return ids;
}

json class_counts(const analysis::Labels& labels) {
    std::vector<long> counts(report::class_names().size(), 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    json j = json::object();
    for (std::size_t i = 0; i < counts.size(); ++i) j[report::class_names()[i]] = counts[i];
    return j;
}

std::string safe_name(const std::string& id) {
    std::string out;
    for (char c : id) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
    return out;
}

/// Distance matrix or template features for the configured representation.
struct Computed {
    std::optional<DistanceMatrix> pairwise;
    std::vector<FeatureVector> features;
    double seconds = 0.0;
};

Computed compute(const ExperimentConfig& cfg, const std::vector<NormalizedCurve>& curves) {
    Computed out;
    const auto t0 = Clock::now();
    if (cfg.features == Features::Pairwise) {
        out.pairwise = distance_matrix(curves, cfg.distance_options());
    } else {
        const TemplateSet t = make_templates(cfg.n, cfg.ellipse_aspect);
        out.features = template_features(curves, t, cfg.distance_options());
    }
    out.seconds = seconds_since(t0);
    return out;
}

/// Best of several runs, repeating until at least `budget` seconds passed.
template <class F>
double time_best(F&& f, double budget = 0.05, int min_runs = 3) {
    double best = std::numeric_limits<double>::infinity();
    double spent = 0.0;
    for (int run = 0; run < min_runs || spent < budget; ++run) {
        const auto t0 = Clock::now();
        f();
        const double s = seconds_since(t0);
        best = std::min(best, s);
        spent += s;
        if (run > 1000) break;
    }
    return best;
}

/// Two numeric fields per line separated by commas, semicolons or blanks.
std::optional<Point2> parse_xy(const std::string& line) {
    std::string s = line;
    for (char& c : s) {
        if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream in(s);
    double x = 0.0, y = 0.0;
    std::string rest;
    if (!(in >> x >> y) || (in >> rest)) return std::nullopt;
    return Point2{x, y};
}

std::string label_from_path(const std::filesystem::path& rel) {
    for (const auto& part : rel.parent_path()) {
        const std::string p = lowercase(part.string());
        if (p.find("normal") != std::string::npos || p.find("circular") != std::string::npos) return "Normal";
        if (p.find("sickle") != std::string::npos || p.find("elongated") != std::string::npos) return "Sickle";
        if (p.find("other") != std::string::npos) return "Other";
    }
    return "";
}

}  // namespace

std::string_view to_string(Features f) { return f == Features::Pairwise ? "pairwise" : "templates"; }

std::string_view to_string(Classifier c) {
    switch (c) {
        case Classifier::Knn: return "knn";
        case Classifier::Lda: return "lda";
        case Classifier::Auto: break;
    }
    return "auto";
}

Features parse_features(std::string_view s) {
    const std::string k = lowercase(s);
    if (k == "pairwise") return Features::Pairwise;
    if (k == "templates" || k == "template") return Features::Templates;
    throw InputError("unknown features '" + std::string(s) + "' (expected pairwise or templates)");
}

Classifier parse_classifier(std::string_view s) {
    const std::string k = lowercase(s);
    if (k == "auto") return Classifier::Auto;
    if (k == "knn") return Classifier::Knn;
    if (k == "lda") return Classifier::Lda;
    throw InputError("unknown classifier '" + std::string(s) + "' (expected auto, knn or lda)");
}

void ExperimentConfig::validate() const {
    if (n < 3) throw InputError("n must be >= 3");
    if (shift_step < 1 || shift_step > n) {
        throw InputError("shift_step must be in [1, n] = [1, " + std::to_string(n) + "]");
    }
    if (knn_k < 1) throw InputError("knn_k must be >= 1");
    if (folds < 2) throw InputError("folds must be >= 2");
    if (!(ellipse_aspect > 1.0) || !std::isfinite(ellipse_aspect)) {
        throw InputError("ellipse_aspect must be > 1");
    }
    if (features == Features::Pairwise && classifier == Classifier::Lda) {
        throw InputError("the lda classifier needs template features");
    }
}

DistanceOptions ExperimentConfig::distance_options() const {
    DistanceOptions o;
    o.space = space;
    o.method = method;
    o.shift_step = shift_step;
    o.use_dp = dp;
    if (rotation) {
        o.fixed_rotation = *rotation;
        o.reparam_rotation = *rotation;
    }
    return o;
}

Classifier ExperimentConfig::resolved_classifier() const {
    if (classifier != Classifier::Auto) return classifier;
    return features == Features::Pairwise ? Classifier::Knn : Classifier::Lda;
}

json to_json(const ExperimentConfig& cfg) {
    const DistanceOptions o = cfg.distance_options();
    return {{"manifest", cfg.manifest.string()},
            {"n", cfg.n},
            {"space", to_string(cfg.space)},
            {"method", to_string(cfg.method)},
            {"features", to_string(cfg.features)},
            {"classifier", to_string(cfg.resolved_classifier())},
            {"shift_step", cfg.shift_step},
            {"knn_k", cfg.knn_k},
            {"folds", cfg.folds},
            {"ellipse_aspect", cfg.ellipse_aspect},
            {"seed", cfg.seed},
            {"output", cfg.output.string()},
            {"rotation", to_string(cfg.method == Method::Fixed ? o.fixed_rotation : o.reparam_rotation)},
            {"dp", cfg.dp}};
}

void apply_json(ExperimentConfig& cfg, const json& j) {
    if (!j.is_object()) {
        throw InputError("config must be a JSON object");
    }
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "manifest") cfg.manifest = v.get<std::string>();
            else if (key == "n") cfg.n = v.get<std::size_t>();
            else if (key == "space") cfg.space = parse_space(v.get<std::string>());
            else if (key == "method") cfg.method = parse_method(v.get<std::string>());
            else if (key == "features") cfg.features = parse_features(v.get<std::string>());
            else if (key == "classifier") cfg.classifier = parse_classifier(v.get<std::string>());
            else if (key == "shift_step") cfg.shift_step = v.get<std::size_t>();
            else if (key == "knn_k") cfg.knn_k = v.get<std::size_t>();
            else if (key == "folds") cfg.folds = v.get<int>();
            else if (key == "ellipse_aspect") cfg.ellipse_aspect = v.get<double>();
            else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (key == "output") cfg.output = v.get<std::string>();
            else if (key == "rotation") {
                const std::string r = v.get<std::string>();
                if (lowercase(r) == "auto") cfg.rotation.reset();
                else cfg.rotation = parse_rotation(r);
            } else if (key == "dp") cfg.dp = v.get<bool>();
            else throw InputError("unknown key");
        } catch (const json::exception& e) {
            throw InputError("config key '" + key + "': " + e.what());
        } catch (const InputError& e) {
            throw InputError("config key '" + key + "': " + e.what());
        }
    }
}

std::vector<NormalizedCurve> load_normalized(const std::filesystem::path& manifest, std::size_t n) {
    if (manifest.empty()) {
        throw InputError("no manifest given");
    }
    const std::vector<RawContour> raw = load_contours(manifest);
    if (raw.empty()) {
        throw InputError("manifest '" + manifest.string() + "' lists no contours");
    }
    std::vector<NormalizedCurve> out(raw.size());
    std::optional<std::string> failure;
    const auto count = static_cast<std::ptrdiff_t>(raw.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = normalize(raw[i], n);
        } catch (const std::exception& e) {
#pragma omp critical(load_failure)
            if (!failure) failure = e.what();
        }
    }
    if (failure) {
        throw InputError(manifest.string() + ": " + *failure);
    }
    return out;
}

analysis::Labels class_labels(const std::vector<NormalizedCurve>& curves) {
    analysis::Labels labels;
    labels.reserve(curves.size());
    for (const auto& c : curves) {
        const int k = class_index(c.meta.label.cls);
        if (k < 0) {
            throw InputError("cell '" + c.meta.source_id + "' has no class label ('" + c.meta.label.name + "')");
        }
        labels.push_back(k);
    }
    return labels;
}

ClassifyOutcome cmd_classify(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t0 = Clock::now();
    const auto curves = load_normalized(cfg.manifest, cfg.n);
    const auto labels = class_labels(curves);
    const Computed data = compute(cfg, curves);

    analysis::Labels predicted;
    const Classifier clf = cfg.resolved_classifier();
    if (data.pairwise) {
        report::write_distance_matrix_csv(cfg.output / "distances.csv", *data.pairwise);
        predicted = analysis::knn_classify(*data.pairwise, labels, cfg.knn_k, cfg.folds, cfg.seed);
    } else {
        report::write_features_csv(cfg.output / "features.csv", data.features, label_names(curves));
        const auto rows = feature_rows(data.features);
        if (clf == Classifier::Lda) {
            predicted = analysis::lda_classify(rows, labels, cfg.folds, cfg.seed);
        } else {
            const DistanceMatrix fd = euclidean_distance_matrix(rows, feature_ids(data.features));
            predicted = analysis::knn_classify(fd, labels, cfg.knn_k, cfg.folds, cfg.seed);
        }
    }

    ClassifyOutcome out;
    out.confusion = analysis::ConfusionMatrix::from_predictions(labels, predicted, 3);
    out.metrics = analysis::metrics(out.confusion);
    out.seconds_distances = data.seconds;
    out.seconds_total = seconds_since(t0);

    report::write_json(cfg.output / "confusion.json", report::confusion_json(out.confusion));
    report::write_json(cfg.output / "metrics.json", report::metrics_json(out.metrics));
    std::ostringstream txt;
    txt << "classify: " << to_string(cfg.space) << ' ' << to_string(cfg.method) << ' ' << to_string(cfg.features)
        << ", classifier " << to_string(clf);
    if (clf == Classifier::Knn) txt << " (k = " << cfg.knn_k << ")";
    txt << ", " << cfg.folds << " folds, seed " << cfg.seed << ", " << curves.size() << " cells\n\n"
        << report::confusion_table(out.confusion) << '\n'
        << report::metrics_table(out.metrics);
    report::write_text(cfg.output / "metrics.txt", txt.str());
    report::write_json(cfg.output / "report.json", {{"command", "classify"},
                                                    {"config", to_json(cfg)},
                                                    {"cells", curves.size()},
                                                    {"class_counts", class_counts(labels)},
                                                    {"confusion", report::confusion_json(out.confusion)},
                                                    {"metrics", report::metrics_json(out.metrics)}});
    report::write_json(cfg.output / "timing.json",
                       {{"distances_seconds", out.seconds_distances}, {"total_seconds", out.seconds_total}});
    return out;
}

ClusterOutcome cmd_cluster(const ExperimentConfig& cfg, std::size_t k) {
    cfg.validate();
    if (k < 2) {
        throw InputError("cluster: k must be >= 2");
    }
    const auto t0 = Clock::now();
    const auto curves = load_normalized(cfg.manifest, cfg.n);
    const bool labeled = std::all_of(curves.begin(), curves.end(), [](const NormalizedCurve& c) {
        return c.meta.label.cls != CellClass::Unlabeled;
    });
    const Computed data = compute(cfg, curves);
    DistanceMatrix dm;
    if (data.pairwise) {
        dm = *data.pairwise;
        report::write_distance_matrix_csv(cfg.output / "distances.csv", dm);
    } else {
        report::write_features_csv(cfg.output / "features.csv", data.features, label_names(curves));
        dm = euclidean_distance_matrix(feature_rows(data.features), feature_ids(data.features));
    }

    ClusterOutcome out;
    out.clusters = analysis::kmedoids(dm, k, cfg.seed);
    json result{{"k", k}, {"asw", out.clusters.asw}, {"total_cost", out.clusters.total_cost}};
    json medoids = json::array();
    for (std::size_t m : out.clusters.medoids) medoids.push_back(dm.ids[m]);
    result["medoids"] = medoids;
    json assignment = json::object();
    for (std::size_t i = 0; i < dm.size(); ++i) assignment[dm.ids[i]] = out.clusters.assignment[i];
    result["assignment"] = assignment;

    std::ostringstream txt;
    txt << "cluster: k = " << k << ", " << to_string(cfg.space) << ' ' << to_string(cfg.method) << ' '
        << to_string(cfg.features) << ", seed " << cfg.seed << ", " << curves.size() << " cells\n"
        << "ASW = " << std::fixed << std::setprecision(2) << out.clusters.asw << "\n\n";
    if (labeled) {
        out.table = analysis::cluster_confusion(out.clusters, class_labels(curves), 3);
        result["contingency"] = report::contingency_json(out.table);
        txt << report::contingency_table(out.table);
        if (out.table.matched) {
            out.metrics = analysis::metrics(out.table.confusion);
            result["confusion"] = report::confusion_json(out.table.confusion);
            result["metrics"] = report::metrics_json(*out.metrics);
            txt << '\n' << report::confusion_table(out.table.confusion) << '\n' << report::metrics_table(*out.metrics);
        }
    }
    out.seconds_total = seconds_since(t0);
    report::write_json(cfg.output / "cluster.json", result);
    report::write_text(cfg.output / "clusters.txt", txt.str());
    report::write_json(cfg.output / "report.json",
                       {{"command", "cluster"}, {"config", to_json(cfg)}, {"cells", curves.size()}, {"result", result}});
    report::write_json(cfg.output / "timing.json", {{"total_seconds", out.seconds_total}});
    return out;
}

GeodesicOutcome cmd_geodesic(const ExperimentConfig& cfg, const std::string& id_a, const std::string& id_b,
                             std::size_t steps) {
    cfg.validate();
    const auto curves = load_normalized(cfg.manifest, cfg.n);
    auto find = [&](const std::string& id) -> const NormalizedCurve& {
        for (const auto& c : curves) {
            if (c.meta.source_id == id) return c;
        }
        throw InputError("unknown id '" + id + "' in manifest '" + cfg.manifest.string() + "'");
    };
    const NormalizedCurve& a = find(id_a);
    const NormalizedCurve& b = find(id_b);

    GeodesicOutcome out;
    const DistanceOptions o = cfg.distance_options();
    if (cfg.space == Space::S1) {
        const auto ga = grassmann::to_grassmann(a);
        auto gb = grassmann::to_grassmann(b);
        if (cfg.method == Method::Reparam) {
            gb = grassmann::shifted(gb, grassmann::distance_minshift(ga, gb, cfg.shift_step).best_shift);
        }
        out.distance = grassmann::distance(ga, gb).d;
        out.frames = grassmann::geodesic(ga, gb, steps);
    } else {
        const auto qa = srvf::prepare(a);
        const auto qb = srvf::prepare(b);
        srvf::AlignmentResult align;
        if (cfg.method == Method::Reparam) {
            srvf::ElasticOptions eo;
            eo.shift_step = cfg.shift_step;
            eo.rotation = o.reparam_rotation;
            eo.use_dp = cfg.dp;
            const auto er = srvf::distance_elastic(qa, qb, eo);
            out.distance = er.d;
            align = er.alignment;
        } else {
            align = srvf::align_rotation(qa, qb, o.fixed_rotation);
            out.distance = srvf::distance_fixed(qa, qb, o.fixed_rotation);
        }
        out.frames = srvf::geodesic(qa, srvf::aligned(qb, align), steps);
    }
    svg::GeodesicFigure fig{out.frames, out.distance, id_a, id_b, std::string(to_string(cfg.space))};
    out.svg = cfg.output / ("geodesic_" + safe_name(id_a) + "__" + safe_name(id_b) + ".svg");
    report::write_text(out.svg, svg::render_geodesic(fig));
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error("loglog_slope: need at least 2 paired samples");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("loglog_slope: values must be positive");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx <= 0.0) throw Error("loglog_slope: sizes must differ");
    return sxy / sxx;
}

BenchOutcome cmd_bench(const ExperimentConfig& cfg, const std::vector<std::size_t>& sizes, std::size_t ratio_cells) {
    cfg.validate();
    if (sizes.size() < 3) {
        throw InputError("bench: need at least 3 sizes for the slope fit");
    }
    for (std::size_t s : sizes) {
        if (s < 2) throw InputError("bench: sizes must be >= 2");
    }
    const std::size_t largest = std::max(*std::max_element(sizes.begin(), sizes.end()), ratio_cells);
    std::mt19937_64 rng(cfg.seed);
    std::vector<NormalizedCurve> pool;
    pool.reserve(largest);
    for (std::size_t i = 0; i < largest; ++i) {
        pool.push_back(normalize(RawContour{"bench_" + std::to_string(i), synthetic::random_smooth_curve(rng), {}}, cfg.n));
    }
    const auto all_reps = prepare_all(pool, Space::S2);
    std::vector<std::string> all_ids;
    for (const auto& c : pool) all_ids.push_back(c.meta.source_id);
    const TemplateSet templates = make_templates(cfg.n, cfg.ellipse_aspect);

    DistanceOptions fixed;
    fixed.space = Space::S2;
    fixed.method = Method::Fixed;
    if (cfg.rotation) fixed.fixed_rotation = *cfg.rotation;

    BenchOutcome out;
    std::vector<double> xs, tp, tt;
    for (std::size_t k : sizes) {
        const std::vector<ShapeRep> reps(all_reps.begin(), all_reps.begin() + static_cast<std::ptrdiff_t>(k));
        const std::vector<std::string> ids(all_ids.begin(), all_ids.begin() + static_cast<std::ptrdiff_t>(k));
        const std::vector<NormalizedCurve> cells(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        BenchRow row;
        row.cells = k;
        row.pairwise_fixed = time_best([&] { (void)distance_matrix_serial(reps, ids, fixed); });
        row.templates_fixed = time_best([&] { (void)template_features_serial(cells, templates, fixed); });
        out.rows.push_back(row);
        xs.push_back(static_cast<double>(k));
        tp.push_back(row.pairwise_fixed);
        tt.push_back(row.templates_fixed);
    }
    out.slope_pairwise = loglog_slope(xs, tp);
    out.slope_templates = loglog_slope(xs, tt);
    out.pairwise_ok = std::abs(out.slope_pairwise - 2.0) <= 0.3;
    out.templates_ok = std::abs(out.slope_templates - 1.0) <= 0.3;

    out.ratio_cells = ratio_cells ? ratio_cells : *std::min_element(sizes.begin(), sizes.end());
    {
        const std::vector<ShapeRep> reps(all_reps.begin(), all_reps.begin() + static_cast<std::ptrdiff_t>(out.ratio_cells));
        const std::vector<std::string> ids(all_ids.begin(), all_ids.begin() + static_cast<std::ptrdiff_t>(out.ratio_cells));
        DistanceOptions reparam = fixed;
        reparam.method = Method::Reparam;
        reparam.shift_step = cfg.shift_step;
        if (cfg.rotation) reparam.reparam_rotation = *cfg.rotation;
        const double t_fixed = time_best([&] { (void)distance_matrix_serial(reps, ids, fixed); });
        const double t_reparam = time_best([&] { (void)distance_matrix_serial(reps, ids, reparam); }, 0.0, 1);
        out.ratio = t_reparam / t_fixed;
        out.ratio_required = 0.5 * static_cast<double>(cfg.n) / static_cast<double>(cfg.shift_step);
        out.ratio_ok = out.ratio >= out.ratio_required;
    }

    json rows = json::array();
    std::ostringstream txt;
    txt << std::setprecision(4);
    txt << "cells  pairwise_fixed_s  templates_fixed_s\n";
    for (const auto& r : out.rows) {
        rows.push_back({{"cells", r.cells}, {"pairwise_fixed_s", r.pairwise_fixed}, {"templates_fixed_s", r.templates_fixed}});
        txt << std::setw(5) << r.cells << "  " << std::setw(16) << r.pairwise_fixed << "  " << std::setw(17)
            << r.templates_fixed << '\n';
    }
    auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    txt << "pairwise slope  " << out.slope_pairwise << " (2 +- 0.3) " << verdict(out.pairwise_ok) << '\n'
        << "templates slope " << out.slope_templates << " (1 +- 0.3) " << verdict(out.templates_ok) << '\n'
        << "reparam/fixed   " << out.ratio << " on " << out.ratio_cells << " cells (>= " << out.ratio_required
        << ") " << verdict(out.ratio_ok) << '\n';
    report::write_json(cfg.output / "bench.json", {{"config", to_json(cfg)},
                                                   {"rows", rows},
                                                   {"slope_pairwise", out.slope_pairwise},
                                                   {"slope_templates", out.slope_templates},
                                                   {"ratio_cells", out.ratio_cells},
                                                   {"ratio", out.ratio},
                                                   {"ratio_required", out.ratio_required},
                                                   {"pass", out.ok()}});
    report::write_text(cfg.output / "bench.txt", txt.str());
    return out;
}

PreprocessOutcome cmd_preprocess(const std::filesystem::path& input, const std::filesystem::path& output) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(input)) {
        throw InputError("input directory '" + input.string() + "' does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(input)) {
        if (!e.is_regular_file()) continue;
        const std::string ext = lowercase(e.path().extension().string());
        if (ext == ".txt" || ext == ".csv" || ext == ".dat" || ext == ".xy") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    PreprocessOutcome out;
    std::vector<RawContour> contours;
    for (const auto& f : files) {
        std::ifstream in(f);
        Polyline pts;
        std::string line;
        bool bad = false;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (const auto p = parse_xy(line)) {
                pts.push_back(*p);
            } else if (!pts.empty()) {
                bad = true;  // non-numeric line after data: not a contour file
                break;
            }
        }
        const fs::path rel = fs::relative(f, input);
        if (bad || pts.size() < 3) {
            out.skipped.push_back(rel.string() + ": not a two-column contour");
            continue;
        }
        fs::path id = rel;
        id.replace_extension();
        contours.push_back({id.generic_string(), std::move(pts), Label::parse(label_from_path(rel))});
    }
    if (contours.empty()) {
        throw InputError("no contour files found under '" + input.string() + "'");
    }
    out.manifest = synthetic::write_corpus(output, contours);
    out.written = contours.size();
    return out;
}

}  // namespace cellshape
