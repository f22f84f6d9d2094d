#pragma once

#include <Eigen/Dense>
#include <vector>

#include "slpinn/jet.hpp"
#include "slpinn/model.hpp"

namespace slpinn {

class ProblemSpec;
struct CollocationSet;

/// Solution value, spatial gradient, and Laplacian at one point.
struct SolutionJet {
    Eigen::VectorXd u;       // n
    Eigen::MatrixXd grad;    // n x d
    Eigen::VectorXd lap;     // n (for d = 1 this is u'')
};

/// Propagates Jet2 inputs through one block. All input jets must share one
/// direction; outputs carry the exact first/second directional derivatives.
std::vector<Jet2> jet2_block_forward(const MlpBlock& block, const std::vector<Jet2>& inputs);

/// Exact u, grad u, lap u of the full ansatz at a point, including the 1/eps
/// and 1/eps^2 chain-rule factors of the scaled level-set inputs. Computed as
/// d independent axis passes; no cross derivatives are formed.
SolutionJet eval_solution_jet(const SolutionModel& model, const Eigen::Vector2d& point,
                              double epsilon);

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Weighted residual vector and its exact parameter Jacobian. Row layout:
/// interior points (uniform then layer, point-major, component-minor), then
/// boundary points. Columns follow the model's flat parameter order.
struct ResidualJacobian {
    RowMajorMatrix jac;
    Eigen::VectorXd residual;
};

ResidualJacobian assemble_residual_jacobian(const ProblemSpec& problem, const SolutionModel& model,
                                            const CollocationSet& colloc, double epsilon);

}  // namespace slpinn
