#include "cellshape/analysis.hpp"

#include "cellshape/error.hpp"

#include <boost/math/distributions/fisher_f.hpp>

#include <cmath>

namespace cellshape::analysis {

namespace {

struct FStat {
    std::optional<double> f, p;
};

FStat f_ratio(double ms_effect, double ms_error, int df1, int df2) {
    if (ms_error > 0.0) {
        const double f = ms_effect / ms_error;
        const boost::math::fisher_f dist(df1, df2);
        return {f, boost::math::cdf(boost::math::complement(dist, f))};
    }
    // No residual variation: only a null effect has a defined ratio.
    if (ms_effect == 0.0) return {0.0, 1.0};
    return {};
}

}  // namespace

double f_critical(double alpha, double df1, double df2) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(df1 > 0.0) || !(df2 > 0.0)) {
        throw Error("f_critical: need 0 < alpha < 1 and positive degrees of freedom");
    }
    const boost::math::fisher_f dist(df1, df2);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

AnovaResult anova_two_way(const std::vector<std::vector<double>>& table, double alpha) {
    const std::size_t r = table.size();
    if (r < 2) {
        throw Error("anova: need at least 2 rows");
    }
    const std::size_t c = table[0].size();
    if (c < 2) {
        throw Error("anova: need at least 2 columns");
    }
    for (const auto& row : table) {
        if (row.size() != c) throw Error("anova: rows have different lengths");
        for (double v : row) {
            if (!std::isfinite(v)) throw Error("anova: missing or non-finite cell");
        }
    }
    std::vector<double> row_mean(r, 0.0), col_mean(c, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            row_mean[i] += table[i][j];
            col_mean[j] += table[i][j];
            grand += table[i][j];
        }
    }
    for (auto& m : row_mean) m /= static_cast<double>(c);
    for (auto& m : col_mean) m /= static_cast<double>(r);
    grand /= static_cast<double>(r * c);

    AnovaResult a;
    for (std::size_t i = 0; i < r; ++i) {
        a.ss_rows += static_cast<double>(c) * (row_mean[i] - grand) * (row_mean[i] - grand);
    }
    for (std::size_t j = 0; j < c; ++j) {
        a.ss_cols += static_cast<double>(r) * (col_mean[j] - grand) * (col_mean[j] - grand);
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            const double t = table[i][j] - grand;
            const double e = table[i][j] - row_mean[i] - col_mean[j] + grand;
            a.ss_total += t * t;
            a.ss_error += e * e;
        }
    }
    a.df_rows = static_cast<int>(r) - 1;
    a.df_cols = static_cast<int>(c) - 1;
    a.df_error = a.df_rows * a.df_cols;
    a.df_total = static_cast<int>(r * c) - 1;
    a.ms_rows = a.ss_rows / a.df_rows;
    a.ms_cols = a.ss_cols / a.df_cols;
    a.ms_error = a.ss_error / a.df_error;
    // Residuals at rounding level count as zero error variance.
    const double ms_err = a.ss_error <= 1e-24 * std::max(1.0, a.ss_total) ? 0.0 : a.ms_error;
    const FStat fr = f_ratio(a.ms_rows, ms_err, a.df_rows, a.df_error);
    const FStat fc = f_ratio(a.ms_cols, ms_err, a.df_cols, a.df_error);
    a.f_rows = fr.f;
    a.p_rows = fr.p;
    a.f_cols = fc.f;
    a.p_cols = fc.p;
    a.f_crit_rows = f_critical(alpha, a.df_rows, a.df_error);
    a.f_crit_cols = f_critical(alpha, a.df_cols, a.df_error);
    return a;
}

}  // namespace cellshape::analysis
