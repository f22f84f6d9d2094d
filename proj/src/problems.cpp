#include "slpinn/problem.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "slpinn/errors.hpp"

namespace slpinn {

double ProblemSpec::weight(const Eigen::Vector2d& p) const {
    if (!distance_weight_) return 1.0;
    const Bounds& b = domain_.bounds;
    switch (domain_.kind) {
        case DomainDesc::Kind::Interval: {
            const double d = std::min(p[0] - b.a, b.b - p[0]);
            return d * d;
        }
        case DomainDesc::Kind::Rectangle: {
            const double d = std::min(std::min(p[0] - b.a, b.b - p[0]),
                                      std::min(p[1] - b.c, b.d - p[1]));
            return d * d;
        }
        case DomainDesc::Kind::LevelSet: {
            // phi is built as a distance-to-boundary field, so phi^2 is the
            // natural analogue (unused by the shipped problems: the level-set
            // problem runs with w = 1)
            const double d = domain_.phi(p[0], p[1]).v;
            return d * d;
        }
    }
    throw ConfigError("unknown domain kind");
}

Eigen::VectorXd ProblemSpec::exact(const Eigen::Vector2d&, double) const {
    throw ConfigError("problem '" + id_ + "' has no exact solution");
}

SolutionJet ProblemSpec::exact_jet(const Eigen::Vector2d&, double) const {
    throw ConfigError("problem '" + id_ + "' has no exact solution");
}

double ProblemSpec::levelset_phi(const Eigen::Vector2d& p) const {
    if (domain_.kind != DomainDesc::Kind::LevelSet)
        throw ConfigError("problem '" + id_ + "' has no level-set domain");
    return domain_.phi(p[0], p[1]).v;
}

namespace {

DomainDesc interval01() {
    DomainDesc d;
    d.kind = DomainDesc::Kind::Interval;
    d.bounds = {0.0, 1.0, 0.0, 1.0};
    return d;
}

DomainDesc square01() {
    DomainDesc d;
    d.kind = DomainDesc::Kind::Rectangle;
    d.bounds = {0.0, 1.0, 0.0, 1.0};
    return d;
}

Eigen::VectorXd vec1(double v) {
    Eigen::VectorXd r(1);
    r[0] = v;
    return r;
}

Eigen::VectorXd vec2(double v1, double v2) {
    Eigen::VectorXd r(2);
    r[0] = v1;
    r[1] = v2;
    return r;
}

// -eps u'' - (1+eps) u' - u = 0 on (0,1), u(0)=0, u(1)=1; layer at x = 0.
class Ex1 final : public ProblemSpec {
public:
    Ex1() {
        id_ = "ex1";
        description_ = "1D convection-diffusion-reaction, boundary layer at x=0";
        n_ = 1;
        dim_ = 1;
        domain_ = interval01();
        distance_weight_ = true;
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d&,
                             double eps) const override {
        return vec1(-eps * jet.lap[0] - (1.0 + eps) * jet.grad(0, 0) - jet.u[0]);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(1);
        out[0] = -eps * dir.lap[0] - (1.0 + eps) * dir.grad(0, 0) - dir.u[0];
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d& p, double) const override {
        return vec1(p[0] > 0.5 ? 1.0 : 0.0);
    }

    bool has_exact() const override { return true; }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        const double x = p[0];
        const double den = std::exp(-1.0) - std::exp(-1.0 / eps);
        return vec1((std::exp(-x) - std::exp(-x / eps)) / den);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        const double x = p[0];
        const double den = std::exp(-1.0) - std::exp(-1.0 / eps);
        const double ex = std::exp(-x), el = std::exp(-x / eps);
        SolutionJet j;
        j.u = vec1((ex - el) / den);
        j.grad = vec1((-ex + el / eps) / den);
        j.lap = vec1((ex - el / (eps * eps)) / den);
        return j;
    }
};

// -eps^2 u'' + u = 0 on (0,1), u(0)=0, u(1)=1; layer at x = 1.
class Ex2 final : public ProblemSpec {
public:
    Ex2() {
        id_ = "ex2";
        description_ = "1D reaction-diffusion, boundary layer at x=1";
        n_ = 1;
        dim_ = 1;
        domain_ = interval01();
        distance_weight_ = false;
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d&,
                             double eps) const override {
        return vec1(-eps * eps * jet.lap[0] + jet.u[0]);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(1);
        out[0] = -eps * eps * dir.lap[0] + dir.u[0];
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d& p, double) const override {
        return vec1(p[0] > 0.5 ? 1.0 : 0.0);
    }

    bool has_exact() const override { return true; }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        const double x = p[0];
        const double A = std::exp(-(1.0 - x) / eps), B = std::exp(-(1.0 + x) / eps);
        const double den = std::exp(-2.0 / eps) - 1.0;
        return vec1((B - A) / den);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        const double x = p[0];
        const double A = std::exp(-(1.0 - x) / eps), B = std::exp(-(1.0 + x) / eps);
        const double den = std::exp(-2.0 / eps) - 1.0;
        SolutionJet j;
        j.u = vec1((B - A) / den);
        j.grad = vec1(-(A + B) / (eps * den));
        j.lap = vec1((B - A) / (eps * eps * den));
        return j;
    }
};

// Coupled system: -eps u'' - M u' = (2x+2, 4), M = [[3,-1],[4,-1]], u = 0 at
// both endpoints; both components have layers at x = 0. The exact solution is
// u1 = 2 W1 + W2, u2 = 4 W1 with W1, W2 combinations of polynomials and
// exp(-x/eps) terms.
class Ex3 final : public ProblemSpec {
public:
    Ex3() {
        id_ = "ex3";
        description_ = "1D coupled convection-diffusion system (n=2), layers at x=0";
        n_ = 2;
        dim_ = 1;
        domain_ = interval01();
        distance_weight_ = true;
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d& p,
                             double eps) const override {
        const double u1p = jet.grad(0, 0), u2p = jet.grad(1, 0);
        return vec2(-eps * jet.lap[0] - (3.0 * u1p - u2p) - (2.0 * p[0] + 2.0),
                    -eps * jet.lap[1] - (4.0 * u1p - u2p) - 4.0);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(2);
        const double u1p = dir.grad(0, 0), u2p = dir.grad(1, 0);
        out[0] = -eps * dir.lap[0] - (3.0 * u1p - u2p);
        out[1] = -eps * dir.lap[1] - (4.0 * u1p - u2p);
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d&, double) const override {
        return vec2(0.0, 0.0);
    }

    bool has_exact() const override { return true; }

    static void w1_jet(double x, double eps, double& v, double& d1, double& d2) {
        const double q = std::exp(-1.0 / eps), E = std::exp(-x / eps);
        const double den = eps * (1.0 - q) * (1.0 - q);
        const double A = eps * (-2.0 * x * x + 2.0 * x + 2.0) + eps * eps * (8.0 * x - 4.0) - 1.0;
        const double Ap = eps * (-4.0 * x + 2.0) + 8.0 * eps * eps;
        const double App = -4.0 * eps;
        const double B = x * (1.0 - 2.0 * eps) - 4.0 * eps * eps;
        const double Bp = 1.0 - 2.0 * eps;
        const double C = (2.0 * eps - 1.0) * x + 4.0 * eps * eps - 2.0 * eps + 1.0;
        const double Cp = 2.0 * eps - 1.0;
        const double D = eps * x * (x - 4.0 * eps - 1.0);
        const double Dp = eps * (2.0 * x - 4.0 * eps - 1.0);
        const double Dpp = 2.0 * eps;
        const double P = eps * x * x - 4.0 * eps * eps * x - eps * x + 4.0 * eps * eps;
        const double Pp = 2.0 * eps * x - 4.0 * eps * eps - eps;
        const double Ppp = 2.0 * eps;
        v = (A * q + (B + C * q) * E + D * q * q + P) / den;
        d1 = (Ap * q + ((Bp - B / eps) + (Cp - C / eps) * q) * E + Dp * q * q + Pp) / den;
        d2 = (App * q +
              ((-2.0 * Bp / eps + B / (eps * eps)) + (-2.0 * Cp / eps + C / (eps * eps)) * q) * E +
              Dpp * q * q + Ppp) /
             den;
    }

    static void w2_jet(double x, double eps, double& v, double& d1, double& d2) {
        const double q = std::exp(-1.0 / eps), E = std::exp(-x / eps);
        const double den = 1.0 - q;
        const double F = x * x - 2.0 * eps * x;
        const double G = -x * x + 2.0 * eps * x - 2.0 * eps + 1.0;
        const double H = 2.0 * eps - 1.0;
        v = (F * q + G + H * E) / den;
        d1 = ((2.0 * x - 2.0 * eps) * q + (-2.0 * x + 2.0 * eps) - H / eps * E) / den;
        d2 = (2.0 * q - 2.0 + H / (eps * eps) * E) / den;
    }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        double w1, w1p, w1pp, w2, w2p, w2pp;
        w1_jet(p[0], eps, w1, w1p, w1pp);
        w2_jet(p[0], eps, w2, w2p, w2pp);
        return vec2(2.0 * w1 + w2, 4.0 * w1);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        double w1, w1p, w1pp, w2, w2p, w2pp;
        w1_jet(p[0], eps, w1, w1p, w1pp);
        w2_jet(p[0], eps, w2, w2p, w2pp);
        SolutionJet j;
        j.u = vec2(2.0 * w1 + w2, 4.0 * w1);
        j.grad = vec2(2.0 * w1p + w2p, 4.0 * w1p);
        j.lap = vec2(2.0 * w1pp + w2pp, 4.0 * w1pp);
        return j;
    }
};

// Separable factor of the Example 4 solution: solves -eps v'' + a v' = x with
// v(0) = v(1) = 0; the layer sits at the outflow end x = 1.
void ex4_factor_jet(double x, double eps, double a, double& v, double& d1, double& d2) {
    const double q = std::exp(-a / eps), E = std::exp(-a * (1.0 - x) / eps);
    const double c = 1.0 / (2.0 * a) + eps / (a * a);
    const double s = c / (1.0 - q);
    v = x * x / (2.0 * a) + eps * x / (a * a) + s * (q - E);
    d1 = x / a + eps / (a * a) - s * (a / eps) * E;
    d2 = 1.0 / a - s * (a / eps) * (a / eps) * E;
}

// -eps lap(u) + a . grad(u) + u = f on the unit square, u = 0 on the boundary,
// a = (1/2, sqrt(3)/2). Exact solution u = X(x) Y(y); because each factor
// solves -eps v'' + a_i v' = coordinate, the source reduces to
// f = x Y + y X + X Y.
class Ex4 final : public ProblemSpec {
public:
    static constexpr double a1 = 0.5;
    const double a2 = std::sqrt(3.0) / 2.0;

    Ex4() {
        id_ = "ex4";
        description_ = "2D convection-diffusion-reaction on the unit square, layers at x=1, y=1";
        n_ = 1;
        dim_ = 2;
        domain_ = square01();
        distance_weight_ = true;
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d& p,
                             double eps) const override {
        double X, Xp, Xpp, Y, Yp, Ypp;
        ex4_factor_jet(p[0], eps, a1, X, Xp, Xpp);
        ex4_factor_jet(p[1], eps, a2, Y, Yp, Ypp);
        const double f = p[0] * Y + p[1] * X + X * Y;
        return vec1(-eps * jet.lap[0] + a1 * jet.grad(0, 0) + a2 * jet.grad(0, 1) + jet.u[0] - f);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(1);
        out[0] = -eps * dir.lap[0] + a1 * dir.grad(0, 0) + a2 * dir.grad(0, 1) + dir.u[0];
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d&, double) const override {
        return vec1(0.0);
    }

    bool has_exact() const override { return true; }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        double X, Xp, Xpp, Y, Yp, Ypp;
        ex4_factor_jet(p[0], eps, a1, X, Xp, Xpp);
        ex4_factor_jet(p[1], eps, a2, Y, Yp, Ypp);
        return vec1(X * Y);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        double X, Xp, Xpp, Y, Yp, Ypp;
        ex4_factor_jet(p[0], eps, a1, X, Xp, Xpp);
        ex4_factor_jet(p[1], eps, a2, Y, Yp, Ypp);
        SolutionJet j;
        j.u = vec1(X * Y);
        j.grad.resize(1, 2);
        j.grad(0, 0) = Xp * Y;
        j.grad(0, 1) = X * Yp;
        j.lap = vec1(Xpp * Y + X * Ypp);
        return j;
    }
};

// -eps lap(u) + u_y/(1+y) = (1/(1+y) - 2 eps) e^{y-x} on the unit square;
// exact u = e^{y-x} + (1+y) ((1+y)/2)^{1/eps}, layer at y = 1. Dirichlet data
// is the restriction of the exact solution.
class Ex5 final : public ProblemSpec {
public:
    Ex5() {
        id_ = "ex5";
        description_ = "2D variable-coefficient convection-diffusion, layer at y=1";
        n_ = 1;
        dim_ = 2;
        domain_ = square01();
        distance_weight_ = true;
    }

    static void s_jet(double y, double eps, double& v, double& d1, double& d2) {
        const double E = std::exp(std::log((1.0 + y) / 2.0) / eps);
        v = (1.0 + y) * E;
        d1 = E * (1.0 + 1.0 / eps);
        d2 = E * (1.0 + 1.0 / eps) / (eps * (1.0 + y));
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d& p,
                             double eps) const override {
        const double cy = 1.0 / (1.0 + p[1]);
        const double f = (cy - 2.0 * eps) * std::exp(p[1] - p[0]);
        return vec1(-eps * jet.lap[0] + cy * jet.grad(0, 1) - f);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d& p,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(1);
        out[0] = -eps * dir.lap[0] + dir.grad(0, 1) / (1.0 + p[1]);
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d& p, double eps) const override {
        return exact(p, eps);
    }

    bool has_exact() const override { return true; }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        double S, Sp, Spp;
        s_jet(p[1], eps, S, Sp, Spp);
        return vec1(std::exp(p[1] - p[0]) + S);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        double S, Sp, Spp;
        s_jet(p[1], eps, S, Sp, Spp);
        const double E = std::exp(p[1] - p[0]);
        SolutionJet j;
        j.u = vec1(E + S);
        j.grad.resize(1, 2);
        j.grad(0, 0) = -E;
        j.grad(0, 1) = E + Sp;
        j.lap = vec1(2.0 * E + Spp);
        return j;
    }
};

// Coupled 2D system: -eps lap(u) - A u_x - B u_y = f with upper-triangular
// A = [[1/2,1],[0,1/2]], B = [[s3/2,1],[0,s3/2]], u = 0 on the boundary.
// Exact u1 = Px Qy and u2 = -Rx Sy; each factor solves a scalar ODE
// (-eps v'' - a v' = +-coordinate power), which collapses the source to
// f1 = x Qy + y Px + Rx' Sy + Rx Sy', f2 = x^2 Sy + y^2 Rx.
class Ex6 final : public ProblemSpec {
public:
    const double s3 = std::sqrt(3.0);

    Ex6() {
        id_ = "ex6";
        description_ = "2D coupled convection-diffusion system (n=2), layers at x=0, y=0";
        n_ = 2;
        dim_ = 2;
        domain_ = square01();
        distance_weight_ = true;
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d& p,
                             double eps) const override {
        double Pv, Pp, Ppp, Qv, Qp, Qpp, Rv, Rp, Rpp, Sv, Sp, Spp;
        px_jet(p[0], eps, Pv, Pp, Ppp);
        qy_jet(p[1], eps, Qv, Qp, Qpp);
        rx_jet(p[0], eps, Rv, Rp, Rpp);
        sy_jet(p[1], eps, Sv, Sp, Spp);
        const double f1 = p[0] * Qv + p[1] * Pv + Rp * Sv + Rv * Sp;
        const double f2 = p[0] * p[0] * Sv + p[1] * p[1] * Rv;
        const double u1x = jet.grad(0, 0), u1y = jet.grad(0, 1);
        const double u2x = jet.grad(1, 0), u2y = jet.grad(1, 1);
        return vec2(-eps * jet.lap[0] - (0.5 * u1x + u2x) - (0.5 * s3 * u1y + u2y) - f1,
                    -eps * jet.lap[1] - 0.5 * u2x - 0.5 * s3 * u2y - f2);
    }

    void residual_tangent(const SolutionJet&, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(2);
        const double u1x = dir.grad(0, 0), u1y = dir.grad(0, 1);
        const double u2x = dir.grad(1, 0), u2y = dir.grad(1, 1);
        out[0] = -eps * dir.lap[0] - (0.5 * u1x + u2x) - (0.5 * s3 * u1y + u2y);
        out[1] = -eps * dir.lap[1] - 0.5 * u2x - 0.5 * s3 * u2y;
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d&, double) const override {
        return vec2(0.0, 0.0);
    }

    bool has_exact() const override { return true; }

    static void px_jet(double x, double eps, double& v, double& d1, double& d2) {
        const double q = std::exp(-0.5 / eps), E = std::exp(-0.5 * x / eps);
        const double r = (1.0 - 4.0 * eps) / (1.0 - q);
        v = -x * x + 4.0 * eps * x + r * (1.0 - E);
        d1 = -2.0 * x + 4.0 * eps + r * E / (2.0 * eps);
        d2 = -2.0 - r * E / (4.0 * eps * eps);
    }

    void qy_jet(double y, double eps, double& v, double& d1, double& d2) const {
        const double q = std::exp(-0.5 * s3 / eps), E = std::exp(-0.5 * s3 * y / eps);
        const double r = (s3 - 4.0 * eps) / (3.0 * (1.0 - q));
        v = (-s3 * y * y + 4.0 * eps * y) / 3.0 + r * (1.0 - E);
        d1 = (-2.0 * s3 * y + 4.0 * eps) / 3.0 + r * (0.5 * s3 / eps) * E;
        d2 = -2.0 * s3 / 3.0 - r * (0.75 / (eps * eps)) * E;
    }

    static void rx_jet(double x, double eps, double& v, double& d1, double& d2) {
        const double q = std::exp(-0.5 / eps), E = std::exp(-0.5 * x / eps);
        const double r = (2.0 - 12.0 * eps + 48.0 * eps * eps) / (3.0 * (1.0 - q));
        v = (2.0 * x * x * x - 12.0 * eps * x * x + 48.0 * eps * eps * x) / 3.0 - r * (1.0 - E);
        d1 = (6.0 * x * x - 24.0 * eps * x + 48.0 * eps * eps) / 3.0 - r * E / (2.0 * eps);
        d2 = (12.0 * x - 24.0 * eps) / 3.0 + r * E / (4.0 * eps * eps);
    }

    void sy_jet(double y, double eps, double& v, double& d1, double& d2) const {
        const double q = std::exp(-0.5 * s3 / eps), E = std::exp(-0.5 * s3 * y / eps);
        const double r = (2.0 - 4.0 * s3 * eps + 16.0 * eps * eps) / (3.0 * s3 * (1.0 - q));
        v = (2.0 * y * y * y - 4.0 * s3 * eps * y * y + 16.0 * eps * eps * y) / (3.0 * s3) -
            r * (1.0 - E);
        d1 = (6.0 * y * y - 8.0 * s3 * eps * y + 16.0 * eps * eps) / (3.0 * s3) -
             r * (0.5 * s3 / eps) * E;
        d2 = (12.0 * y - 8.0 * s3 * eps) / (3.0 * s3) + r * (0.75 / (eps * eps)) * E;
    }

    Eigen::VectorXd exact(const Eigen::Vector2d& p, double eps) const override {
        double Pv, Pp, Ppp, Qv, Qp, Qpp, Rv, Rp, Rpp, Sv, Sp, Spp;
        px_jet(p[0], eps, Pv, Pp, Ppp);
        qy_jet(p[1], eps, Qv, Qp, Qpp);
        rx_jet(p[0], eps, Rv, Rp, Rpp);
        sy_jet(p[1], eps, Sv, Sp, Spp);
        return vec2(Pv * Qv, -Rv * Sv);
    }

    SolutionJet exact_jet(const Eigen::Vector2d& p, double eps) const override {
        double Pv, Pp, Ppp, Qv, Qp, Qpp, Rv, Rp, Rpp, Sv, Sp, Spp;
        px_jet(p[0], eps, Pv, Pp, Ppp);
        qy_jet(p[1], eps, Qv, Qp, Qpp);
        rx_jet(p[0], eps, Rv, Rp, Rpp);
        sy_jet(p[1], eps, Sv, Sp, Spp);
        SolutionJet j;
        j.u = vec2(Pv * Qv, -Rv * Sv);
        j.grad.resize(2, 2);
        j.grad(0, 0) = Pp * Qv;
        j.grad(0, 1) = Pv * Qp;
        j.grad(1, 0) = -Rp * Sv;
        j.grad(1, 1) = -Rv * Sp;
        j.lap = vec2(Ppp * Qv + Pv * Qpp, -(Rpp * Sv + Rv * Spp));
        return j;
    }
};

// Nonlinear Poisson-Boltzmann equation -eps^2 lap(u) + e^u - e^{-u} = 0 with
// u = 1 on the boundary of a curved domain: a ring sector of aperture
// 2*theta about the +y axis (radii 0.6..1.0) closed by two half-disc caps of
// radius 0.2 centered on the sector edge rays at radius 0.8. The level set is
// an exact distance field on each branch.
class Ex7 final : public ProblemSpec {
public:
    static constexpr double kTheta = M_PI / 3.0;
    static constexpr double kCapR = 0.2;
    const double st = std::sin(kTheta), ct = std::cos(kTheta);
    const double cx = 0.8 * st, cy = 0.8 * ct;

    static PhiJet phi_at(double x, double y) {
        const double st_ = std::sin(kTheta), ct_ = std::cos(kTheta);
        PhiJet out;
        if (ct_ * std::abs(x) > st_ * y) {
            const double s = (x < 0.0) ? -1.0 : 1.0;
            const double px = std::abs(x) - 0.8 * st_;
            const double py = y - 0.8 * ct_;
            const double rho = std::sqrt(px * px + py * py);
            out.v = rho - kCapR;
            out.dx = s * px / rho;
            out.dy = py / rho;
            out.dxx = py * py / (rho * rho * rho);
            out.dyy = px * px / (rho * rho * rho);
        } else {
            const double rr = std::sqrt(x * x + y * y);
            const double s = (rr < 0.8) ? -1.0 : 1.0;
            out.v = s * (rr - 0.8) - kCapR;
            out.dx = s * x / rr;
            out.dy = s * y / rr;
            out.dxx = s * y * y / (rr * rr * rr);
            out.dyy = s * x * x / (rr * rr * rr);
        }
        return out;
    }

    Ex7() {
        id_ = "ex7";
        description_ = "2D Poisson-Boltzmann on an irregular ring-sector domain, no exact solution";
        n_ = 1;
        dim_ = 2;
        distance_weight_ = false;
        domain_.kind = DomainDesc::Kind::LevelSet;
        const double xb = cx + kCapR;
        domain_.bounds = {-xb, xb, cy - kCapR, 1.0};
        domain_.phi = [](double x, double y) { return phi_at(x, y); };
        const double outer = 2.0 * kTheta, inner = 0.6 * 2.0 * kTheta, cap = M_PI * kCapR;
        domain_.boundary_length = outer + inner + 2.0 * cap;
        // closed loop: outer arc, right cap, inner arc (reversed), left cap
        domain_.boundary_point = [this, outer, inner, cap](double t) {
            double s = t * domain_.boundary_length;
            if (s < outer) {
                const double a = -kTheta + s;
                return Eigen::Vector2d(std::sin(a), std::cos(a));
            }
            s -= outer;
            if (s < cap) {
                const double b = s / kCapR;
                return Eigen::Vector2d(cx + kCapR * (std::cos(b) * st + std::sin(b) * ct),
                                       cy + kCapR * (std::cos(b) * ct - std::sin(b) * st));
            }
            s -= cap;
            if (s < inner) {
                const double a = kTheta - s / 0.6;
                return Eigen::Vector2d(0.6 * std::sin(a), 0.6 * std::cos(a));
            }
            s -= inner;
            const double b = M_PI - std::min(s, cap) / kCapR;
            return Eigen::Vector2d(-cx + kCapR * (-std::cos(b) * st - std::sin(b) * ct),
                                   cy + kCapR * (std::cos(b) * ct - std::sin(b) * st));
        };
    }

    Eigen::VectorXd residual(const SolutionJet& jet, const Eigen::Vector2d&,
                             double eps) const override {
        const double u = jet.u[0];
        return vec1(-eps * eps * jet.lap[0] + std::exp(u) - std::exp(-u));
    }

    void residual_tangent(const SolutionJet& at, const SolutionJet& dir, const Eigen::Vector2d&,
                          double eps, Eigen::VectorXd& out) const override {
        out.resize(1);
        const double u = at.u[0];
        out[0] = -eps * eps * dir.lap[0] + (std::exp(u) + std::exp(-u)) * dir.u[0];
    }

    Eigen::VectorXd boundary_value(const Eigen::Vector2d&, double) const override {
        return vec1(1.0);
    }

    bool has_exact() const override { return false; }
};

}  // namespace

const ProblemSpec& problem_by_id(const std::string& id) {
    for (const ProblemSpec* p : all_problems())
        if (p->id() == id) return *p;
    throw ConfigError("unknown problem id '" + id + "' (known: ex1 .. ex7)");
}

std::vector<const ProblemSpec*> all_problems() {
    static const Ex1 ex1;
    static const Ex2 ex2;
    static const Ex3 ex3;
    static const Ex4 ex4;
    static const Ex5 ex5;
    static const Ex6 ex6;
    static const Ex7 ex7;
    return {&ex1, &ex2, &ex3, &ex4, &ex5, &ex6, &ex7};
}

}  // namespace slpinn
