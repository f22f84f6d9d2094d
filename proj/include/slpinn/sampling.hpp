#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "slpinn/problem.hpp"

namespace slpinn {

struct SampleCounts {
    int interior = 0;
    int layer_per_side = 0;
    int boundary = 0;
};

/// Per-problem defaults: 1D {500, 500/endpoint, 2}; rectangle {500, 500/side,
/// 880}; level-set {500, 2000 along the boundary, 220}.
SampleCounts default_counts(const ProblemSpec& problem);

/// Training point set. m = |interior| + |layer| residual points; m_b boundary
/// points. Layer points are stored side by side in the fixed side order
/// (left/right, then bottom/top for rectangles).
struct CollocationSet {
    std::vector<Eigen::Vector2d> interior;
    std::vector<Eigen::Vector2d> layer;
    std::vector<Eigen::Vector2d> boundary;
    double sigma_std = 0.0;

    int m() const { return static_cast<int>(interior.size() + layer.size()); }
    int m_b() const { return static_cast<int>(boundary.size()); }
};

/// Draws interior points uniformly over the domain, layer points from
/// half-normal offsets (sigma_std = sigma_mult * eps) off each boundary side,
/// and boundary points uniformly on the boundary. Counts are met exactly;
/// out-of-domain draws are rejected and redrawn (budget 1e6 per side).
CollocationSet sample_collocation(const ProblemSpec& problem, double eps, const SampleCounts& counts,
                                  std::uint64_t seed, double sigma_mult = 1.0);

/// Boundary-only sampling: 1D gives the two endpoints (alternating when count
/// exceeds 2); rectangles sample uniformly on the perimeter; level-set domains
/// sample uniformly in the arc-length parametrization.
std::vector<Eigen::Vector2d> sample_boundary(const ProblemSpec& problem, int count,
                                             std::uint64_t seed);

/// Same recipe with doubled counts (used for evaluation).
CollocationSet sample_test_set(const ProblemSpec& problem, double eps,
                               const SampleCounts& train_counts, std::uint64_t seed,
                               double sigma_mult = 1.0);

/// One point per line: coordinates, then tag {interior, layer, boundary}.
void write_points_csv(const std::string& path, const CollocationSet& points,
                      const std::string& header);

}  // namespace slpinn
