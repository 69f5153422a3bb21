#include "cellshape/distance.hpp"

#include "cellshape/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace cellshape {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
}

void require_pairs(std::size_t count) {
    if (count < 2) {
        throw Error("distance_matrix: need at least 2 curves");
    }
}

std::vector<std::string> ids_of(const std::vector<NormalizedCurve>& curves) {
    std::vector<std::string> ids;
    ids.reserve(curves.size());
    for (const auto& c : curves) ids.push_back(c.meta.source_id);
    return ids;
}

double one_direction(const ShapeRep& a, const ShapeRep& b, const DistanceOptions& opts) {
    if (a.space == Space::S1) {
        if (opts.method == Method::Fixed) {
            return grassmann::distance(a.g, b.g).d;
        }
        return grassmann::distance_minshift(a.g, b.g, opts.shift_step).d;
    }
    if (opts.method == Method::Fixed) {
        return srvf::distance_fixed(a.q, b.q, opts.fixed_rotation);
    }
    srvf::ElasticOptions eo;
    eo.shift_step = opts.shift_step;
    eo.rotation = opts.reparam_rotation;
    eo.use_dp = opts.use_dp;
    return srvf::distance_elastic(a.q, b.q, eo).d;
}

void fill_pair(DistanceMatrix& m, const std::vector<ShapeRep>& reps, std::size_t i, std::size_t j,
               const DistanceOptions& opts) {
    const double d = pair_distance(reps[i], reps[j], opts);
    if (!std::isfinite(d)) {
        throw Error("non-finite distance");
    }
    m(i, j) = d;
    m(j, i) = d;
}

DistanceMatrix empty_matrix(const std::vector<std::string>& ids, const DistanceOptions& opts, std::size_t n) {
    DistanceMatrix m;
    m.ids = ids;
    m.d.assign(ids.size() * ids.size(), 0.0);
    m.symmetrized = needs_symmetrization(opts, n);
    return m;
}

std::string pair_label(const std::vector<std::string>& ids, std::size_t i, std::size_t j) {
    return "('" + ids[i] + "', '" + ids[j] + "')";
}

}  // namespace

std::string_view to_string(Space s) { return s == Space::S1 ? "S1" : "S2"; }
std::string_view to_string(Method m) { return m == Method::Fixed ? "fixed" : "reparam"; }
std::string_view to_string(srvf::RotationMode m) {
    switch (m) {
        case srvf::RotationMode::None: return "none";
        case srvf::RotationMode::FlipOnly: return "flip";
        case srvf::RotationMode::Procrustes: return "procrustes";
    }
    return "none";
}

Space parse_space(std::string_view s) {
    const std::string k = lowercase(s);
    if (k == "s1" || k == "grassmann") return Space::S1;
    if (k == "s2" || k == "srvf") return Space::S2;
    throw InputError("unknown space '" + std::string(s) + "' (expected S1 or S2)");
}

Method parse_method(std::string_view s) {
    const std::string k = lowercase(s);
    if (k == "fixed") return Method::Fixed;
    if (k == "reparam" || k == "reparameterization") return Method::Reparam;
    throw InputError("unknown method '" + std::string(s) + "' (expected fixed or reparam)");
}

srvf::RotationMode parse_rotation(std::string_view s) {
    const std::string k = lowercase(s);
    if (k == "none") return srvf::RotationMode::None;
    if (k == "flip" || k == "flip_only") return srvf::RotationMode::FlipOnly;
    if (k == "procrustes") return srvf::RotationMode::Procrustes;
    throw InputError("unknown rotation mode '" + std::string(s) + "' (expected none, flip or procrustes)");
}

ShapeRep prepare(const NormalizedCurve& c, Space space) {
    ShapeRep r;
    r.space = space;
    if (space == Space::S1) {
        r.g = grassmann::to_grassmann(c);
    } else {
        r.q = srvf::prepare(c);
    }
    return r;
}

bool needs_symmetrization(const DistanceOptions& opts, std::size_t n) {
    if (opts.method == Method::Fixed) {
        return false;
    }
    if (opts.space == Space::S2 && opts.use_dp) {
        return true;
    }
    return opts.shift_step == 0 || n % opts.shift_step != 0;
}

double pair_distance(const ShapeRep& a, const ShapeRep& b, const DistanceOptions& opts) {
    if (a.space != b.space) {
        throw Error("pair_distance: representations from different spaces");
    }
    const std::size_t n = a.space == Space::S1 ? a.g.size() : a.q.size();
    const double forward = one_direction(a, b, opts);
    if (!needs_symmetrization(opts, n)) {
        return forward;
    }
    return std::min(forward, one_direction(b, a, opts));
}

std::vector<ShapeRep> prepare_all(const std::vector<NormalizedCurve>& curves, Space space) {
    std::vector<ShapeRep> reps(curves.size());
    std::optional<std::string> failure;
    const auto count = static_cast<std::ptrdiff_t>(curves.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            reps[i] = prepare(curves[i], space);
        } catch (const std::exception& e) {
#pragma omp critical(prepare_failure)
            if (!failure) failure = "curve '" + curves[i].meta.source_id + "': " + e.what();
        }
    }
    if (failure) {
        throw Error(*failure);
    }
    return reps;
}

DistanceMatrix distance_matrix(const std::vector<ShapeRep>& reps, const std::vector<std::string>& ids,
                               const DistanceOptions& opts) {
    require_pairs(reps.size());
    const std::size_t k = reps.size();
    const std::size_t n = opts.space == Space::S1 ? reps[0].g.size() : reps[0].q.size();
    DistanceMatrix m = empty_matrix(ids, opts, n);
    std::optional<std::string> failure;
    const auto rows = static_cast<std::ptrdiff_t>(k);
    // Rows shrink towards the end of the triangle, so hand them out dynamically.
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i + 1; j < k; ++j) {
            try {
                fill_pair(m, reps, i, j, opts);
            } catch (const std::exception& e) {
#pragma omp critical(pair_failure)
                if (!failure) failure = "distance failed for pair " + pair_label(ids, i, j) + ": " + e.what();
            }
        }
    }
    if (failure) {
        throw Error(*failure);
    }
    return m;
}

DistanceMatrix distance_matrix_serial(const std::vector<ShapeRep>& reps, const std::vector<std::string>& ids,
                                      const DistanceOptions& opts) {
    require_pairs(reps.size());
    const std::size_t k = reps.size();
    const std::size_t n = opts.space == Space::S1 ? reps[0].g.size() : reps[0].q.size();
    DistanceMatrix m = empty_matrix(ids, opts, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            try {
                fill_pair(m, reps, i, j, opts);
            } catch (const std::exception& e) {
                throw Error("distance failed for pair " + pair_label(ids, i, j) + ": " + e.what());
            }
        }
    }
    return m;
}

DistanceMatrix distance_matrix(const std::vector<NormalizedCurve>& curves, const DistanceOptions& opts) {
    require_pairs(curves.size());
    return distance_matrix(prepare_all(curves, opts.space), ids_of(curves), opts);
}

DistanceMatrix distance_matrix_serial(const std::vector<NormalizedCurve>& curves, const DistanceOptions& opts) {
    require_pairs(curves.size());
    std::vector<ShapeRep> reps;
    reps.reserve(curves.size());
    for (const auto& c : curves) {
        try {
            reps.push_back(prepare(c, opts.space));
        } catch (const std::exception& e) {
            throw Error("curve '" + c.meta.source_id + "': " + e.what());
        }
    }
    return distance_matrix_serial(reps, ids_of(curves), opts);
}

DistanceMatrix euclidean_distance_matrix(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::string>& ids) {
    const std::size_t k = rows.size();
    DistanceMatrix m;
    m.ids = ids;
    m.d.assign(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < rows[i].size(); ++c) {
                const double diff = rows[i][c] - rows[j][c];
                acc += diff * diff;
            }
            m(i, j) = m(j, i) = std::sqrt(acc);
        }
    }
    return m;
}

}  // namespace cellshape
