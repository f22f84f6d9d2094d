#pragma once

#include <Eigen/Dense>
#include <vector>

#include "slpinn/model.hpp"
#include "slpinn/problem.hpp"

namespace slpinn {

/// Relative errors per component, per trial, plus the aggregated mean.
struct ErrorReport {
    int n_test = 0;
    int trials = 0;
    std::vector<Eigen::VectorXd> per_trial_l2;    // one vector (length n) per trial
    std::vector<Eigen::VectorXd> per_trial_linf;
    Eigen::VectorXd rel_l2_mean;
    Eigen::VectorXd rel_linf_mean;
};

/// rel_l2 = ||u - u_N||_2 / ||u||_2 and rel_linf = max|u - u_N| / max|u|,
/// per column (component), over the rows (test points).
void relative_errors(const Eigen::MatrixXd& exact_values, const Eigen::MatrixXd& predicted_values,
                     Eigen::VectorXd& rel_l2, Eigen::VectorXd& rel_linf);

/// Componentwise mean over 1-5 single- or multi-trial reports of equal shape.
ErrorReport aggregate_trials(const std::vector<ErrorReport>& reports);

/// Ratio of output ranges range(B_R)/range(B_L) over a 1e4-point uniform grid.
/// A trained model whose layer sits at the left endpoint should give a small
/// ratio (the right singular block degenerates to a constant). Returns +inf
/// when range(B_L) is zero.
double layer_detection_ratio(const SolutionModel& model, const ProblemSpec& problem, double eps);

}  // namespace slpinn
