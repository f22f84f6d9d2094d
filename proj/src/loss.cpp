#include "slpinn/loss.hpp"

#include <cmath>

#include "slpinn/autodiff.hpp"
#include "slpinn/errors.hpp"

namespace slpinn {

WeightedResidual build_residual(const ProblemSpec& problem, const SolutionModel& model,
                                const CollocationSet& colloc, double epsilon) {
    const int n = model.n;
    if (n != problem.n_components())
        throw ConfigError("model has " + std::to_string(n) + " components, problem '" +
                          problem.id() + "' needs " + std::to_string(problem.n_components()));
    const int m = colloc.m();
    const int mb = colloc.m_b();
    if (m <= 0 || mb <= 0) throw ConfigError("collocation set has no residual or boundary points");

    WeightedResidual out;
    out.n = n;
    out.m = m;
    out.m_b = mb;
    out.entries.resize(static_cast<Eigen::Index>(m + mb) * n);

    Eigen::Index r = 0;
    auto residual_rows = [&](const std::vector<Eigen::Vector2d>& pts) {
        for (const auto& pt : pts) {
            const SolutionJet jet = eval_solution_jet(model, pt, epsilon);
            const double scale = std::sqrt(problem.weight(pt) / m);
            const Eigen::VectorXd res = problem.residual(jet, pt, epsilon);
            for (int i = 0; i < n; ++i) out.entries[r + i] = scale * res[i];
            r += n;
        }
    };
    residual_rows(colloc.interior);
    residual_rows(colloc.layer);

    const double bscale = std::sqrt(1.0 / mb);
    for (const auto& pt : colloc.boundary) {
        const SolutionJet jet = eval_solution_jet(model, pt, epsilon);
        const Eigen::VectorXd g = problem.boundary_value(pt, epsilon);
        for (int i = 0; i < n; ++i) out.entries[r + i] = bscale * (jet.u[i] - g[i]);
        r += n;
    }
    return out;
}

double loss_value(const WeightedResidual& residual) { return residual.entries.squaredNorm(); }

}  // namespace slpinn
