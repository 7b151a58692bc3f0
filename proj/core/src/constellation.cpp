#include "tripose/constellation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "tripose/errors.hpp"

namespace tripose {

void ConstellationModel::validate() const {
    const int k = feature_count();
    if (k < 2) throw Error(Errc::config, "constellation model needs at least two features");
    const int d = distance_count();
    if (static_cast<int>(mean_distances.size()) != d)
        throw Error(Errc::config, "constellation mean_distances must have K(K-1)/2 entries");
    if (static_cast<int>(covariance.size()) != d * d)
        throw Error(Errc::config, "constellation covariance must be K(K-1)/2 squared");
    for (double m : mean_distances)
        if (!(m > 0.0)) throw Error(Errc::config, "constellation mean distances must be positive");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(covariance[i * d + j] - covariance[j * d + i]) >
                1e-9 * (1.0 + std::abs(covariance[i * d + j])))
                throw Error(Errc::config, "constellation covariance is not symmetric");

    Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(covariance.data(), d, d);
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw Error(Errc::config, "constellation covariance is not positive-definite");
}

std::vector<double> mutual_distances(const std::vector<Vec2>& positions) {
    const std::size_t k = positions.size();
    if (k < 2) throw Error(Errc::invalid_argument, "mutual distances need at least two points");
    std::vector<double> v;
    v.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) v.push_back((positions[i] - positions[j]).norm());
    return v;
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

double estimate_scale(const std::vector<double>& v, const ConstellationModel& model) {
    if (v.size() != model.mean_distances.size())
        throw Error(Errc::invalid_argument, "distance vector does not match the model dimension");
    const double nv = norm2(v);
    const double nl = norm2(model.mean_distances);
    if (nl <= 0.0) throw Error(Errc::config, "constellation model mean has zero norm");
    if (nv <= 0.0)
        throw Error(Errc::invalid_argument, "coincident constellation has no scale");
    return nv / nl;
}

double constellation_density(const std::vector<double>& v, double scale,
                             const ConstellationModel& model) {
    const int d = model.distance_count();
    if (static_cast<int>(v.size()) != d)
        throw Error(Errc::invalid_argument, "distance vector does not match the model dimension");
    if (!(scale > 0.0)) throw Error(Errc::invalid_argument, "scale must be positive");

    Eigen::MatrixXd sigma = Eigen::Map<const Eigen::MatrixXd>(model.covariance.data(), d, d);
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw Error(Errc::config, "constellation covariance is not positive-definite");

    Eigen::VectorXd diff(d);
    for (int i = 0; i < d; ++i) diff[i] = v[i] - scale * model.mean_distances[i];
    // Covariance of v is scale^2 Sigma; pull the scale out of the solve.
    const double mahalanobis2 = diff.dot(llt.solve(diff)) / (scale * scale);
    double log_det_sigma = 0.0;
    for (int i = 0; i < d; ++i) log_det_sigma += 2.0 * std::log(llt.matrixL()(i, i));
    const double log_p = -0.5 * (d * std::log(2.0 * M_PI) + log_det_sigma) -
                         d * std::log(scale) - 0.5 * mahalanobis2;
    return std::exp(log_p);
}

double rank_constellation(double density, const std::vector<double>& peak_scores) {
    double sum = 0.0;
    for (double s : peak_scores) sum += s;
    return density * sum;
}

Constellation best_constellation(const std::vector<std::vector<CandidatePoint>>& candidates,
                                 const ConstellationModel& model) {
    model.validate();
    const int k = model.feature_count();
    if (static_cast<int>(candidates.size()) != k)
        throw Error(Errc::invalid_argument, "need one candidate list per model feature");
    for (int f = 0; f < k; ++f)
        if (candidates[f].empty())
            throw Error(Errc::no_valid_peak,
                        "feature '" + model.feature_names[f] + "' has no candidate peaks");

    bool found = false;
    Constellation best;

    std::vector<int> idx(k, 0);
    std::vector<Vec2> positions(k);
    for (;;) {
        for (int f = 0; f < k; ++f) positions[f] = candidates[f][idx[f]].position;

        // Mirror rejection: mutual distances are blind to reflections, so a
        // face arrangement must keep the frontal winding of (L, R, M).
        bool rejected = false;
        if (model.chirality_check && k == 3) {
            const Vec2 lr = positions[1] - positions[0];
            const Vec2 lm = positions[2] - positions[0];
            if (lr.x * lm.y - lr.y * lm.x < 0.0) rejected = true;
        }

        if (!rejected) {
            Constellation c;
            c.pick_indices = idx;
            c.positions = positions;
            c.peak_scores.resize(k);
            for (int f = 0; f < k; ++f) c.peak_scores[f] = candidates[f][idx[f]].score;
            c.distances = mutual_distances(positions);
            if (norm2(c.distances) <= 0.0) {
                c.scale = 0.0;
                c.density = 0.0;  // coincident points carry no pose information
            } else {
                c.scale = estimate_scale(c.distances, model);
                c.density = constellation_density(c.distances, c.scale, model);
            }
            c.rank = rank_constellation(c.density, c.peak_scores);

            // Strictly-greater keeps the lexicographically smallest tie.
            if (!found || c.rank > best.rank) {
                best = std::move(c);
                found = true;
            }
        }

        int f = k - 1;
        while (f >= 0 && ++idx[f] == static_cast<int>(candidates[f].size())) {
            idx[f] = 0;
            --f;
        }
        if (f < 0) break;
    }

    if (!found)
        throw Error(Errc::constellations_rejected,
                    "every candidate arrangement failed the chirality check");
    return best;
}

Constellation best_constellation(const std::vector<std::vector<Peak>>& candidates,
                                 const ConstellationModel& model) {
    std::vector<std::vector<CandidatePoint>> points(candidates.size());
    for (std::size_t f = 0; f < candidates.size(); ++f)
        for (const Peak& p : candidates[f])
            points[f].push_back(
                {{static_cast<double>(p.x), static_cast<double>(p.y)}, p.score});
    return best_constellation(points, model);
}

}  // namespace tripose
