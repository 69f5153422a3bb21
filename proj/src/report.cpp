#include "cellshape/report.hpp"

#include "cellshape/error.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cellshape::report {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    return out;
}

std::string name_of(std::size_t i) {
    const auto& names = class_names();
    return i < names.size() ? names[i] : "class" + std::to_string(i);
}

json optional_value(const std::optional<double>& v) { return v ? json(round2(*v)) : json(nullptr); }

std::string fmt(const std::optional<double>& v) {
    if (!v) return "n/a";
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << *v;
    return s.str();
}

/// Right-aligned columns, first column left-aligned.
std::string aligned(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
    }
    std::ostringstream s;
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j == 0) {
                s << std::left << std::setw(static_cast<int>(width[j])) << r[j];
            } else {
                s << "  " << std::right << std::setw(static_cast<int>(width[j])) << r[j];
            }
        }
        s << '\n';
    }
    return s.str();
}

}  // namespace

const std::vector<std::string>& class_names() {
    static const std::vector<std::string> names{"Normal", "Sickle", "Other"};
    return names;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

void write_distance_matrix_csv(const std::filesystem::path& path, const DistanceMatrix& dm) {
    auto out = open_for_write(path);
    out << "id";
    for (const auto& id : dm.ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < dm.size(); ++i) {
        out << dm.ids[i];
        for (std::size_t j = 0; j < dm.size(); ++j) out << ',' << dm(i, j);
        out << '\n';
    }
}

void write_features_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& features,
                        const std::vector<std::string>& labels) {
    auto out = open_for_write(path);
    out << "cell_id,d_circle,d_ellipse,label\n";
    for (std::size_t i = 0; i < features.size(); ++i) {
        out << features[i].cell_id << ',' << features[i].d_circle << ',' << features[i].d_ellipse << ','
            << (i < labels.size() ? labels[i] : "") << '\n';
    }
}

json confusion_json(const analysis::ConfusionMatrix& cm) {
    json rows = json::array();
    for (std::size_t i = 0; i < cm.classes; ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < cm.classes; ++j) r.push_back(cm(i, j));
        rows.push_back(r);
    }
    json names = json::array();
    for (std::size_t i = 0; i < cm.classes; ++i) names.push_back(name_of(i));
    return {{"classes", names}, {"rows", "true class"}, {"columns", "predicted class"}, {"counts", rows},
            {"total", cm.total()}};
}

json contingency_json(const analysis::ClusterTable& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.rows; ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < t.cols; ++j) r.push_back(t.n[i * t.cols + j]);
        rows.push_back(r);
    }
    json names = json::array();
    for (std::size_t i = 0; i < t.rows; ++i) names.push_back(name_of(i));
    json j{{"classes", names}, {"rows", "true class"}, {"columns", "group"}, {"counts", rows}};
    if (t.matched) {
        j["group_to_class"] = t.group_to_class;
    }
    return j;
}

json metrics_json(const analysis::MetricsReport& m) {
    json per_class = json::object();
    for (std::size_t i = 0; i < m.tpr.size(); ++i) {
        per_class[name_of(i)] = {{"tpr", optional_value(m.tpr[i])},
                                 {"precision", optional_value(m.precision[i])},
                                 {"f1", optional_value(m.f1[i])}};
    }
    return {{"per_class", per_class}, {"accuracy", round2(m.accuracy)}, {"sds", optional_value(m.sds)}};
}

json anova_json(const analysis::AnovaResult& a) {
    auto src = [](double ss, int df, double ms, const std::optional<double>& f, const std::optional<double>& p,
                  double crit) {
        json j{{"ss", ss}, {"df", df}, {"ms", ms}, {"f", f ? json(*f) : json(nullptr)},
               {"p", p ? json(*p) : json(nullptr)}};
        if (crit > 0.0) j["f_crit"] = crit;
        return j;
    };
    return {{"rows", src(a.ss_rows, a.df_rows, a.ms_rows, a.f_rows, a.p_rows, a.f_crit_rows)},
            {"columns", src(a.ss_cols, a.df_cols, a.ms_cols, a.f_cols, a.p_cols, a.f_crit_cols)},
            {"error", {{"ss", a.ss_error}, {"df", a.df_error}, {"ms", a.ms_error}}},
            {"total", {{"ss", a.ss_total}, {"df", a.df_total}}}};
}

std::string confusion_table(const analysis::ConfusionMatrix& cm) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"true \\ predicted"};
    for (std::size_t j = 0; j < cm.classes; ++j) head.push_back(name_of(j));
    rows.push_back(head);
    for (std::size_t i = 0; i < cm.classes; ++i) {
        std::vector<std::string> r{name_of(i)};
        for (std::size_t j = 0; j < cm.classes; ++j) r.push_back(std::to_string(cm(i, j)));
        rows.push_back(r);
    }
    return aligned(rows);
}

std::string contingency_table(const analysis::ClusterTable& t) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"true \\ group"};
    for (std::size_t j = 0; j < t.cols; ++j) head.push_back("G" + std::to_string(j + 1));
    rows.push_back(head);
    for (std::size_t i = 0; i < t.rows; ++i) {
        std::vector<std::string> r{name_of(i)};
        for (std::size_t j = 0; j < t.cols; ++j) r.push_back(std::to_string(t.n[i * t.cols + j]));
        rows.push_back(r);
    }
    return aligned(rows);
}

std::string metrics_table(const analysis::MetricsReport& m) {
    std::vector<std::vector<std::string>> rows{{"class", "TPR", "P", "F1"}};
    for (std::size_t i = 0; i < m.tpr.size(); ++i) {
        rows.push_back({name_of(i), fmt(m.tpr[i]), fmt(m.precision[i]), fmt(m.f1[i])});
    }
    std::string s = aligned(rows);
    s += "Acc / SDS: " + fmt(m.accuracy) + " / " + fmt(m.sds) + "\n";
    return s;
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_for_write(path);
    out << text;
}

}  // namespace cellshape::report
