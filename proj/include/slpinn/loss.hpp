#pragma once

#include <Eigen/Dense>

#include "slpinn/model.hpp"
#include "slpinn/problem.hpp"
#include "slpinn/sampling.hpp"

namespace slpinn {

/// Weighted least-squares residual whose squared norm is the training loss:
/// interior entry sqrt(w(x)/m) * (L_eps u - f)_k(x), boundary entry
/// sqrt(1/m_b) * (u - g)_k(x_b). Interior rows (uniform then layer points,
/// point-major, component-minor) come first, then boundary rows.
struct WeightedResidual {
    Eigen::VectorXd entries;
    int n = 1;
    int m = 0;
    int m_b = 0;
};

WeightedResidual build_residual(const ProblemSpec& problem, const SolutionModel& model,
                                const CollocationSet& colloc, double epsilon);

/// Squared norm of the entries; equals the loss J(theta) exactly.
double loss_value(const WeightedResidual& residual);

}  // namespace slpinn
