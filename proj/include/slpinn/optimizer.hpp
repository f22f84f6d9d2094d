#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "slpinn/autodiff.hpp"
#include "slpinn/model.hpp"
#include "slpinn/problem.hpp"
#include "slpinn/sampling.hpp"

namespace slpinn {

struct LmConfig {
    int max_iters = 2000;
    double loss_tol = 1e-15;
    double lambda_init = 1e-3;
    double lambda_up = 3.0;
    double lambda_down = 1.0 / 3.0;
    double min_lambda = 1e-14;
    double max_lambda = 1e14;
    double step_tol = 0.0;        // 0 disables the step-size stall test
    int max_rejects_per_iter = 50;
};

enum class StopReason { LossTol, MaxIters, Stalled };
std::string stop_reason_name(StopReason r);

/// One (iteration, proposal) record; rejected proposals are kept so the full
/// lambda trajectory can be exported.
struct LmTraceRow {
    int iteration = 0;
    double loss = 0.0;
    double lambda = 0.0;
    bool accepted = false;
};

struct TrainReport {
    double final_loss = 0.0;
    int iterations = 0;
    StopReason stop_reason = StopReason::MaxIters;
    std::vector<double> loss_history;  // initial loss, then accepted-step losses
    std::uint64_t seed = 0;
    double wall_time = 0.0;            // seconds; never serialized to output files
    std::vector<LmTraceRow> trace;
};

/// Abstract nonlinear least-squares objective (lets the optimizer be tested
/// against plain affine residuals).
class LeastSquaresObjective {
public:
    virtual ~LeastSquaresObjective() = default;
    virtual int rows() const = 0;
    virtual int params() const = 0;
    virtual Eigen::VectorXd theta() const = 0;
    virtual void set_theta(const Eigen::VectorXd& theta) = 0;
    virtual Eigen::VectorXd residual_only() = 0;
    virtual void residual_and_jacobian(Eigen::VectorXd& r, RowMajorMatrix& jac) = 0;
};

struct LmStepResult {
    Eigen::VectorXd candidate_theta;
    double predicted_reduction = 0.0;  // predicted decrease of ||r||^2
};

/// Solves (J^T J + lambda I) delta = -J^T r with an LLT factorization and
/// escalating diagonal jitter on failure; returns theta + delta.
LmStepResult lm_step(const Eigen::VectorXd& theta, const Eigen::VectorXd& residual,
                     const RowMajorMatrix& jacobian, double lambda);

/// Full Levenberg-Marquardt loop: accept when the loss decreases (lambda
/// shrinks), reject otherwise (lambda grows, bounded retries per iteration).
/// Stops on loss_tol, max_iters, or stall.
TrainReport train(LeastSquaresObjective& objective, const LmConfig& config);

/// Convenience wrapper over the weighted PDE residual; mutates the model
/// parameters in place. epsilon is taken from the model.
TrainReport train(const ProblemSpec& problem, SolutionModel& model, const CollocationSet& colloc,
                  const LmConfig& config);

/// Loss-history CSV: "iteration,loss,lambda,accepted" rows from the trace.
void write_trace_csv(const std::string& path, const TrainReport& report, const std::string& header);

}  // namespace slpinn
