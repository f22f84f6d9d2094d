#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "slpinn/block.hpp"

namespace slpinn {

enum class Geometry { OneD, TwoDRegular, TwoDIrregular };

std::string geometry_name(Geometry g);
Geometry geometry_from_name(const std::string& name);

/// Interval [a,b] (1D), rectangle [a,b]x[c,d] (2D), or the bounding box of a
/// level-set domain.
struct Bounds {
    double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
};

/// Level-set field value with first and second axis derivatives (no cross
/// terms are ever needed).
struct PhiJet {
    double v = 0.0, dx = 0.0, dy = 0.0, dxx = 0.0, dyy = 0.0;
};
using LevelSetFn = std::function<PhiJet(double x, double y)>;

struct InitConfig {
    std::uint64_t seed = 0;
};

/// The decomposed solution network. Block order is fixed per geometry:
///   OneD:           B_r(x), B_L((x-a)/eps), B_R((x-b)/eps)
///   TwoDRegular:    B_r, B_rx, B_ry on (x,y); B_L, B_R on scaled x distances;
///                   B_B, B_T on scaled y distances
///   TwoDIrregular:  B_r(x,y), B_s(x,y,phi/eps)
///                   (full_inputs feeds phi/eps to B_r as well)
/// The flat parameter vector concatenates the blocks in that order, each block
/// laid out as documented in MlpBlock.
struct SolutionModel {
    Geometry geometry = Geometry::OneD;
    int n = 1;
    double epsilon = 1.0;
    Bounds bounds;
    LevelSetFn phi;           // TwoDIrregular only
    bool full_inputs = false; // TwoDIrregular only

    std::vector<MlpBlock> blocks;

    int dim() const { return geometry == Geometry::OneD ? 1 : 2; }
    int param_count() const;
    Eigen::VectorXd get_theta() const;
    void set_theta(const Eigen::VectorXd& theta);

    const MlpBlock& block(const std::string& name) const;
};

/// Builds a model with seeded random initialization: hidden weights and biases
/// uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)]; output weights uniform in
/// [-1/sqrt(h), 1/sqrt(h)]. Draw order equals parameter order. The hidden
/// scale keeps each sigmoid's transition inside the sampled layer band, which
/// the scaled inputs make O(1) wide; wider init transitions would leave parts
/// of the singular blocks unconstrained by the collocation set.
SolutionModel build_model(Geometry geometry, int n_components, int hidden, const Bounds& bounds,
                          const LevelSetFn& phi, double epsilon, const InitConfig& init,
                          bool irregular_full_inputs = false);

/// Value of the assembled ansatz at a point ((x) in 1D, (x,y) in 2D; the
/// second coordinate is ignored for 1D geometries).
Eigen::VectorXd forward(const SolutionModel& model, const Eigen::Vector2d& point, double epsilon);

/// Raw per-block outputs plus the assembled regular/singular split
/// u = u_regular + u_singular.
struct ComponentOutputs {
    std::map<std::string, Eigen::VectorXd> raw;
    Eigen::VectorXd u_regular;
    Eigen::VectorXd u_singular;
    Eigen::VectorXd u;
};
ComponentOutputs component_outputs(const SolutionModel& model, const Eigen::Vector2d& point,
                                   double epsilon);

/// Checkpoint I/O (JSON text; doubles round-trip exactly). The level-set
/// callable is not serialized: pass it to load_checkpoint for irregular models.
void save_checkpoint(const SolutionModel& model, const std::string& path);
SolutionModel load_checkpoint(const std::string& path, const LevelSetFn& phi = nullptr);

}  // namespace slpinn
