#include "cellshape/error.hpp"
#include "cellshape/experiment.hpp"
#include "cellshape/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace cellshape;

namespace {

struct Flags {
    std::string manifest, space = "S2", method = "fixed", features = "templates", classifier = "auto";
    std::string rotation = "auto", output = "out", config;
    std::size_t n = kDefaultResolution, shift_step = 5, knn_k = 1;
    int folds = 5;
    double ellipse_aspect = kDefaultEllipseAspect;
    std::uint64_t seed = 0;
    bool dp = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--manifest,-m", f.manifest, "CSV manifest with header path,label");
    cmd->add_option("--n", f.n, "samples per curve")->capture_default_str();
    cmd->add_option("--space", f.space, "S1 (Grassmann) or S2 (square-root velocity)")->capture_default_str();
    cmd->add_option("--method", f.method, "fixed or reparam")->capture_default_str();
    cmd->add_option("--features", f.features, "pairwise or templates")->capture_default_str();
    cmd->add_option("--classifier", f.classifier, "auto, knn or lda")->capture_default_str();
    cmd->add_option("--shift-step", f.shift_step, "stride of the start-point search")->capture_default_str();
    cmd->add_option("--knn-k", f.knn_k, "neighbors for k-NN")->capture_default_str();
    cmd->add_option("--folds", f.folds, "cross-validation folds")->capture_default_str();
    cmd->add_option("--ellipse-aspect", f.ellipse_aspect, "major/minor ratio of the ellipse template")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "seed for folds and tie-breaking")->capture_default_str();
    cmd->add_option("--output,-o", f.output, "output directory")->capture_default_str();
    cmd->add_option("--rotation", f.rotation, "auto, none, flip or procrustes")->capture_default_str();
    cmd->add_flag("--dp", f.dp, "refine reparameterized distances with dynamic programming");
    cmd->add_option("--config", f.config, "JSON config; its keys override flags");
}

ExperimentConfig resolve(const Flags& f) {
    ExperimentConfig cfg;
    cfg.manifest = f.manifest;
    cfg.n = f.n;
    cfg.space = parse_space(f.space);
    cfg.method = parse_method(f.method);
    cfg.features = parse_features(f.features);
    cfg.classifier = parse_classifier(f.classifier);
    cfg.shift_step = f.shift_step;
    cfg.knn_k = f.knn_k;
    cfg.folds = f.folds;
    cfg.ellipse_aspect = f.ellipse_aspect;
    cfg.seed = f.seed;
    cfg.output = f.output;
    if (f.rotation != "auto") cfg.rotation = parse_rotation(f.rotation);
    cfg.dp = f.dp;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw InputError("cannot open config '" + f.config + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("config '" + f.config + "': " + e.what());
        }
        apply_json(cfg, j);
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shape analysis of closed cell contours"};
    app.require_subcommand(1);
    Flags f;

    auto* classify = app.add_subcommand("classify", "cross-validated classification of a labeled manifest");
    add_common(classify, f);

    std::size_t k = 3;
    auto* cluster = app.add_subcommand("cluster", "k-medoids clustering");
    add_common(cluster, f);
    cluster->add_option("--k", k, "number of groups")->capture_default_str();

    std::string id_a, id_b;
    std::size_t steps = 5;
    auto* geodesic = app.add_subcommand("geodesic", "render the geodesic between two cells as SVG");
    add_common(geodesic, f);
    geodesic->add_option("--a", id_a, "first cell id")->required();
    geodesic->add_option("--b", id_b, "second cell id")->required();
    geodesic->add_option("--steps", steps, "intermediate shapes")->capture_default_str();

    std::vector<std::size_t> sizes{50, 100, 200};
    std::size_t ratio_cells = 0;
    auto* bench = app.add_subcommand("bench", "scaling of the distance kernels on synthetic curves");
    add_common(bench, f);
    bench->add_option("--sizes", sizes, "cell counts")->delimiter(',')->capture_default_str();
    bench->add_option("--ratio-cells", ratio_cells, "cells for the reparam/fixed ratio (0: smallest size)");

    std::string pre_in, pre_out = "dataset";
    auto* preprocess = app.add_subcommand("preprocess", "convert a directory of contour files to manifest + CSV");
    preprocess->add_option("--input,-i", pre_in, "directory to scan")->required();
    preprocess->add_option("--output,-o", pre_out, "destination directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*preprocess) {
            const auto r = cmd_preprocess(pre_in, pre_out);
            for (const auto& s : r.skipped) std::cerr << "skipped " << s << '\n';
            std::cout << "wrote " << r.written << " contours, manifest " << r.manifest.string() << '\n';
            return 0;
        }
        const ExperimentConfig cfg = resolve(f);
        if (*classify) {
            const auto r = cmd_classify(cfg);
            std::cout << report::confusion_table(r.confusion) << '\n' << report::metrics_table(r.metrics);
            std::cout << "distances " << r.seconds_distances << " s, total " << r.seconds_total << " s\n";
        } else if (*cluster) {
            const auto r = cmd_cluster(cfg, k);
            std::cout << "k = " << k << ", ASW = " << r.clusters.asw << '\n';
            if (r.table.rows) std::cout << report::contingency_table(r.table);
            if (r.metrics) std::cout << '\n' << report::metrics_table(*r.metrics);
        } else if (*geodesic) {
            const auto r = cmd_geodesic(cfg, id_a, id_b, steps);
            std::cout << "d = " << r.distance << ", " << r.frames.size() << " frames, " << r.svg.string() << '\n';
        } else if (*bench) {
            const auto r = cmd_bench(cfg, sizes, ratio_cells);
            std::ifstream txt(cfg.output / "bench.txt");
            std::cout << txt.rdbuf();
            return r.ok() ? 0 : 1;
        }
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
