#pragma once

#include "cellshape/contour.hpp"
#include "cellshape/grassmann.hpp"
#include "cellshape/options.hpp"
#include "cellshape/srvf.hpp"

#include <string>
#include <vector>

namespace cellshape {

/// Per-curve representation computed once before pairwise work.
struct ShapeRep {
    Space space = Space::S2;
    grassmann::GrassmannPoint g;  // filled for S1
    srvf::SrvfCurve q;            // filled for S2 (closed, unit norm)
};

ShapeRep prepare(const NormalizedCurve& c, Space space);

/// Distance between two prepared shapes under `opts`. For shift searches
/// whose candidate set is not closed under inversion, and for warping, the
/// smaller of both directions is returned.
double pair_distance(const ShapeRep& a, const ShapeRep& b, const DistanceOptions& opts);

/// True when pair_distance has to evaluate both directions.
bool needs_symmetrization(const DistanceOptions& opts, std::size_t n);

struct DistanceMatrix {
    std::vector<std::string> ids;
    std::vector<double> d;  // row-major k x k
    bool symmetrized = false;

    std::size_t size() const { return ids.size(); }
    double operator()(std::size_t i, std::size_t j) const { return d[i * ids.size() + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d[i * ids.size() + j]; }
};

/// Pairwise distances; representations and the upper triangle are spread
/// over OpenMP threads.
DistanceMatrix distance_matrix(const std::vector<NormalizedCurve>& curves, const DistanceOptions& opts);

/// Pairwise kernel on already prepared shapes.
DistanceMatrix distance_matrix(const std::vector<ShapeRep>& reps, const std::vector<std::string>& ids,
                               const DistanceOptions& opts);

/// Single-threaded reference with the same per-pair arithmetic.
DistanceMatrix distance_matrix_serial(const std::vector<NormalizedCurve>& curves, const DistanceOptions& opts);
DistanceMatrix distance_matrix_serial(const std::vector<ShapeRep>& reps, const std::vector<std::string>& ids,
                                      const DistanceOptions& opts);

std::vector<ShapeRep> prepare_all(const std::vector<NormalizedCurve>& curves, Space space);

/// Euclidean distances between feature rows (used to cluster template features).
DistanceMatrix euclidean_distance_matrix(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::string>& ids);

}  // namespace cellshape
