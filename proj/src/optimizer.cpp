#include "slpinn/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "slpinn/errors.hpp"
#include "slpinn/loss.hpp"

namespace slpinn {

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::LossTol: return "loss_tol";
        case StopReason::MaxIters: return "max_iters";
        case StopReason::Stalled: return "stalled";
    }
    return "unknown";
}

namespace {

void check_config(const LmConfig& c) {
    if (c.max_iters < 0) throw ConfigError("max_iters must be >= 0");
    if (!(c.loss_tol > 0.0)) throw ConfigError("loss_tol must be positive");
    if (!(c.lambda_up > 1.0)) throw ConfigError("lambda_up must exceed 1");
    if (!(c.lambda_down > 0.0 && c.lambda_down < 1.0))
        throw ConfigError("lambda_down must lie in (0,1)");
    if (!(c.min_lambda > 0.0)) throw ConfigError("min_lambda must be positive");
    if (!(c.max_lambda >= c.min_lambda)) throw ConfigError("max_lambda must be >= min_lambda");
    if (!(c.lambda_init >= c.min_lambda && c.lambda_init <= c.max_lambda))
        throw ConfigError("lambda_init must lie in [min_lambda, max_lambda]");
    if (c.max_rejects_per_iter < 1) throw ConfigError("max_rejects_per_iter must be >= 1");
}

/// Cholesky solve of (G + (lambda + jitter) I) delta = -g with jitter
/// escalating from 0 on factorization failure.
Eigen::VectorXd damped_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& grad,
                             double lambda, Eigen::MatrixXd& scratch,
                             Eigen::LLT<Eigen::MatrixXd, Eigen::Lower>& llt) {
    double jitter = 0.0;
    const double scale = std::max(1.0, gram.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 24; ++attempt) {
        scratch = gram;
        scratch.diagonal().array() += lambda + jitter;
        llt.compute(scratch);
        if (llt.info() == Eigen::Success) return llt.solve(-grad);
        jitter = jitter == 0.0 ? scale * 1e-16 : jitter * 100.0;
    }
    throw TrainAbort("normal-equations factorization failed at lambda = " +
                     std::to_string(lambda) + " despite diagonal jitter");
}

/// G = J^T J in the lower triangle (upper left zero), g = J^T r.
void gram_and_gradient(const RowMajorMatrix& jac, const Eigen::VectorXd& r, Eigen::MatrixXd& gram,
                       Eigen::VectorXd& grad) {
    gram.setZero(jac.cols(), jac.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
    grad.noalias() = jac.transpose() * r;
}

}  // namespace

LmStepResult lm_step(const Eigen::VectorXd& theta, const Eigen::VectorXd& residual,
                     const RowMajorMatrix& jacobian, double lambda) {
    if (jacobian.cols() != theta.size() || jacobian.rows() != residual.size())
        throw ConfigError("jacobian shape does not match theta/residual");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
    Eigen::MatrixXd gram;
    Eigen::VectorXd grad;
    gram_and_gradient(jacobian, residual, gram, grad);
    Eigen::MatrixXd scratch;
    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt;
    const Eigen::VectorXd delta = damped_solve(gram, grad, lambda, scratch, llt);
    LmStepResult out;
    out.candidate_theta = theta + delta;
    out.predicted_reduction = delta.dot(lambda * delta - grad);
    return out;
}

TrainReport train(LeastSquaresObjective& objective, const LmConfig& config) {
    check_config(config);
    const auto t0 = std::chrono::steady_clock::now();

    TrainReport report;
    Eigen::VectorXd theta = objective.theta();
    double loss = objective.residual_only().squaredNorm();
    if (!std::isfinite(loss))
        throw TrainAbort("initial loss is not finite (" + std::to_string(loss) +
                         "); check model initialization and point set");
    report.loss_history.push_back(loss);

    Eigen::VectorXd r;
    RowMajorMatrix jac;
    Eigen::MatrixXd gram, scratch;
    Eigen::VectorXd grad, delta, candidate;
    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt;

    double lambda = config.lambda_init;
    StopReason reason = StopReason::MaxIters;
    int it = 0;
    if (loss <= config.loss_tol) reason = StopReason::LossTol;
    else
        while (it < config.max_iters) {
            ++it;
            objective.residual_and_jacobian(r, jac);
            gram_and_gradient(jac, r, gram, grad);

            bool accepted = false;
            bool stalled = false;
            int rejects = 0;
            while (!accepted && !stalled) {
                delta = damped_solve(gram, grad, lambda, scratch, llt);
                candidate = theta + delta;
                objective.set_theta(candidate);
                const double cand_loss = objective.residual_only().squaredNorm();
                const bool improves = cand_loss < loss;
                report.trace.push_back({it, cand_loss, lambda, improves});
                if (improves) {
                    theta.swap(candidate);
                    loss = cand_loss;
                    report.loss_history.push_back(loss);
                    lambda = std::max(lambda * config.lambda_down, config.min_lambda);
                    accepted = true;
                } else if (lambda >= config.max_lambda || ++rejects >= config.max_rejects_per_iter) {
                    stalled = true;
                } else {
                    lambda = std::min(lambda * config.lambda_up, config.max_lambda);
                }
            }
            if (stalled) {
                objective.set_theta(theta);
                reason = StopReason::Stalled;
                break;
            }
            if (loss <= config.loss_tol) {
                reason = StopReason::LossTol;
                break;
            }
            if (config.step_tol > 0.0 &&
                delta.norm() <= config.step_tol * (theta.norm() + config.step_tol)) {
                reason = StopReason::Stalled;
                break;
            }
        }

    report.final_loss = loss;
    report.iterations = it;
    report.stop_reason = reason;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace {

class PdeObjective final : public LeastSquaresObjective {
public:
    PdeObjective(const ProblemSpec& problem, SolutionModel& model, const CollocationSet& colloc)
        : problem_(problem), model_(model), colloc_(colloc) {}

    int rows() const override { return (colloc_.m() + colloc_.m_b()) * model_.n; }
    int params() const override { return model_.param_count(); }
    Eigen::VectorXd theta() const override { return model_.get_theta(); }
    void set_theta(const Eigen::VectorXd& theta) override { model_.set_theta(theta); }

    Eigen::VectorXd residual_only() override {
        return build_residual(problem_, model_, colloc_, model_.epsilon).entries;
    }

    void residual_and_jacobian(Eigen::VectorXd& r, RowMajorMatrix& jac) override {
        ResidualJacobian rj = assemble_residual_jacobian(problem_, model_, colloc_, model_.epsilon);
        r = std::move(rj.residual);
        jac = std::move(rj.jac);
    }

private:
    const ProblemSpec& problem_;
    SolutionModel& model_;
    const CollocationSet& colloc_;
};

}  // namespace

TrainReport train(const ProblemSpec& problem, SolutionModel& model, const CollocationSet& colloc,
                  const LmConfig& config) {
    PdeObjective objective(problem, model, colloc);
    return train(objective, config);
}

void write_trace_csv(const std::string& path, const TrainReport& report,
                     const std::string& header) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    if (!header.empty()) out << header;
    out << "iteration,loss,lambda,accepted\n";
    char buf[96];
    for (const LmTraceRow& row : report.trace) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d\n", row.iteration, row.loss, row.lambda,
                      row.accepted ? 1 : 0);
        out << buf;
    }
    if (!out.good()) throw IoError("write failed for '" + path + "'");
}

}  // namespace slpinn
