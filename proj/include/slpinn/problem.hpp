#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "slpinn/autodiff.hpp"
#include "slpinn/model.hpp"

namespace slpinn {

/// Computational domain. Interval and Rectangle use the bounds directly;
/// LevelSet domains are {phi < 0} inside the bounding box, with a boundary
/// parametrization by normalized arc length t in [0,1).
struct DomainDesc {
    enum class Kind { Interval, Rectangle, LevelSet };
    Kind kind = Kind::Interval;
    Bounds bounds;
    LevelSetFn phi;                                        // LevelSet only
    std::function<Eigen::Vector2d(double)> boundary_point; // LevelSet only
    double boundary_length = 0.0;                          // LevelSet only
};

/// One benchmark problem: residual operator L_eps(u) - f, boundary data g,
/// collocation weight w, and (when available) the closed-form solution with
/// its derivatives.
class ProblemSpec {
public:
    virtual ~ProblemSpec() = default;

    const std::string& id() const { return id_; }
    const std::string& description() const { return description_; }
    int n_components() const { return n_; }
    int dim() const { return dim_; }
    const DomainDesc& domain() const { return domain_; }

    /// Squared distance to the nearest boundary for convection-type problems,
    /// identically 1 otherwise.
    double weight(const Eigen::Vector2d& p) const;

    /// L_eps(u)(p) - f(p) given solution derivatives at p.
    virtual Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d& p,
                                     double eps) const = 0;

    /// Directional derivative of the residual at `at` along the solution
    /// perturbation `dir` (for linear operators this is the operator applied
    /// to `dir` with the source dropped). Writes into `out` (resized to n);
    /// the out-parameter keeps the hot Jacobian loop allocation-free.
    virtual void residual_tangent(const SolutionJet& at, const SolutionJet& dir,
                                  const Eigen::Vector2d& p, double eps,
                                  Eigen::VectorXd& out) const = 0;

    virtual Eigen::VectorXd boundary_value(const Eigen::Vector2d& p, double eps) const = 0;

    virtual bool has_exact() const = 0;
    virtual Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const;
    /// Closed-form derivatives of the exact solution (problems 1-6).
    virtual SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const;

    /// Level-set value (LevelSet domains only).
    double levelset_phi(const Eigen::Vector2d& p) const;

protected:
    std::string id_;
    std::string description_;
    int n_ = 1;
    int dim_ = 1;
    DomainDesc domain_;
    bool distance_weight_ = true;
};

/// Registry of the seven benchmark problems, ids "ex1" .. "ex7".
const ProblemSpec& problem_by_id(const std::string& id);
std::vector<const ProblemSpec*> all_problems();

}  // namespace slpinn
