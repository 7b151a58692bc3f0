#pragma once

#include <string>
#include <vector>

#include "tripose/geometry.hpp"
#include "tripose/peaks.hpp"

namespace tripose {

// Gaussian model of the scale-free feature arrangement. For K features the
// mutual-distance vector has dimension d = K(K-1)/2, pairs ordered (i, j)
// with i < j lexicographically.
struct ConstellationModel {
    std::vector<std::string> feature_names;  // face default: left-eye, right-eye, mouth-nose
    std::vector<double> mean_distances;      // d entries, > 0
    std::vector<double> covariance;          // d x d row-major, symmetric positive-definite
    bool chirality_check = true;

    int feature_count() const { return static_cast<int>(feature_names.size()); }
    int distance_count() const {
        const int k = feature_count();
        return k * (k - 1) / 2;
    }
    void validate() const;  // throws Errc::config
};

struct CandidatePoint {
    Vec2 position;
    double score = 0.0;
};

struct Constellation {
    std::vector<Vec2> positions;       // one per feature, feature_names order
    std::vector<double> peak_scores;   // c_ij, same order
    std::vector<int> pick_indices;     // candidate index per feature (tie-break key)
    std::vector<double> distances;     // mutual distance vector v, pixels
    double scale = 0.0;                // lambda
    double density = 0.0;              // p
    double rank = 0.0;                 // r = p * sum of peak scores
};

// Euclidean distances in pair order (0,1), (0,2), ..., (1,2), ...
std::vector<double> mutual_distances(const std::vector<Vec2>& positions);

// lambda = ||v|| / ||mean_distances||; scale-equivariant by construction.
double estimate_scale(const std::vector<double>& v, const ConstellationModel& model);

// Multivariate normal density N(v; lambda * L, lambda^2 * Sigma).
double constellation_density(const std::vector<double>& v, double scale,
                             const ConstellationModel& model);

double rank_constellation(double density, const std::vector<double>& peak_scores);

// Exhaustive search over the Cartesian product of the per-feature candidate
// lists; wrong-chirality arrangements are rejected when the model asks for it.
// Ties break on lexicographically smallest candidate indices.
Constellation best_constellation(const std::vector<std::vector<CandidatePoint>>& candidates,
                                 const ConstellationModel& model);
Constellation best_constellation(const std::vector<std::vector<Peak>>& candidates,
                                 const ConstellationModel& model);

}  // namespace tripose
