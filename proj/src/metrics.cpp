#include "slpinn/metrics.hpp"

#include <cmath>
#include <limits>

#include "slpinn/errors.hpp"

namespace slpinn {

void relative_errors(const Eigen::MatrixXd& exact_values, const Eigen::MatrixXd& predicted_values,
                     Eigen::VectorXd& rel_l2, Eigen::VectorXd& rel_linf) {
    if (exact_values.rows() != predicted_values.rows() ||
        exact_values.cols() != predicted_values.cols())
        throw ConfigError("exact/predicted shape mismatch in relative_errors");
    if (exact_values.rows() == 0) throw ConfigError("relative_errors needs at least one point");
    const Eigen::Index n = exact_values.cols();
    rel_l2.resize(n);
    rel_linf.resize(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const double den2 = exact_values.col(c).norm();
        const double deninf = exact_values.col(c).cwiseAbs().maxCoeff();
        if (den2 == 0.0)
            throw ConfigError("exact solution is identically zero on the test set (component " +
                              std::to_string(c) + "); relative error undefined");
        const Eigen::VectorXd diff = predicted_values.col(c) - exact_values.col(c);
        rel_l2[c] = diff.norm() / den2;
        rel_linf[c] = diff.cwiseAbs().maxCoeff() / deninf;
    }
}

ErrorReport aggregate_trials(const std::vector<ErrorReport>& reports) {
    if (reports.empty()) throw ConfigError("aggregate_trials needs at least one report");
    if (reports.size() > 5) throw ConfigError("aggregate_trials takes at most five reports");
    ErrorReport out;
    out.n_test = reports.front().n_test;
    for (const ErrorReport& rep : reports) {
        if (rep.n_test != out.n_test)
            throw ConfigError("aggregate_trials: reports disagree on n_test");
        if (!rep.per_trial_l2.empty()) {
            out.per_trial_l2.insert(out.per_trial_l2.end(), rep.per_trial_l2.begin(),
                                    rep.per_trial_l2.end());
            out.per_trial_linf.insert(out.per_trial_linf.end(), rep.per_trial_linf.begin(),
                                      rep.per_trial_linf.end());
        } else {
            out.per_trial_l2.push_back(rep.rel_l2_mean);
            out.per_trial_linf.push_back(rep.rel_linf_mean);
        }
    }
    out.trials = static_cast<int>(out.per_trial_l2.size());
    const Eigen::Index n = out.per_trial_l2.front().size();
    out.rel_l2_mean = Eigen::VectorXd::Zero(n);
    out.rel_linf_mean = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < out.trials; ++t) {
        if (out.per_trial_l2[t].size() != n || out.per_trial_linf[t].size() != n)
            throw ConfigError("aggregate_trials: reports disagree on component count");
        out.rel_l2_mean += out.per_trial_l2[t];
        out.rel_linf_mean += out.per_trial_linf[t];
    }
    out.rel_l2_mean /= out.trials;
    out.rel_linf_mean /= out.trials;
    return out;
}

double layer_detection_ratio(const SolutionModel& model, const ProblemSpec& problem, double eps) {
    if (model.geometry != Geometry::OneD)
        throw ConfigError("layer_detection_ratio is defined for 1D models only");
    if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
    const MlpBlock& left = model.block("B_L");
    const MlpBlock& right = model.block("B_R");
    const Bounds& b = problem.domain().bounds;
    constexpr int kGrid = 10000;

    Eigen::VectorXd in(1);
    auto range_over_grid = [&](const MlpBlock& blk, double anchor) {
        Eigen::VectorXd lo = Eigen::VectorXd::Constant(model.n,
                                                       std::numeric_limits<double>::infinity());
        Eigen::VectorXd hi = -lo;
        for (int i = 0; i < kGrid; ++i) {
            const double x = b.a + (b.b - b.a) * i / (kGrid - 1.0);
            in[0] = (x - anchor) / eps;
            const Eigen::VectorXd v = blk.value(in);
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        return (hi - lo).maxCoeff();
    };

    const double num = range_over_grid(right, b.b);
    const double den = range_over_grid(left, b.a);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace slpinn
