#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "slpinn/errors.hpp"
#include "slpinn/problem.hpp"
#include "slpinn/rng.hpp"
#include "slpinn/sampling.hpp"

using namespace slpinn;

namespace {

Eigen::Vector2d pt(double x, double y = 0.0) { return {x, y}; }

// Random interior point of the problem's domain (rejection for level sets).
Eigen::Vector2d random_interior(const ProblemSpec& prob, Rng& rng) {
    const Bounds& b = prob.domain().bounds;
    for (int tries = 0; tries < 10000; ++tries) {
        Eigen::Vector2d p(rng.uniform(b.a, b.b),
                          prob.dim() == 2 ? rng.uniform(b.c, b.d) : 0.0);
        if (prob.domain().kind != DomainDesc::Kind::LevelSet) return p;
        if (prob.levelset_phi(p) < -1e-6) return p;
    }
    REQUIRE(false);
    return {0, 0};
}

}  // namespace

TEST_CASE("registry lists the seven benchmarks in order") {
    const auto all = all_problems();
    REQUIRE(all.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(all[i]->id() == "ex" + std::to_string(i + 1));
    CHECK(&problem_by_id("ex3") == all[2]);
    CHECK_THROWS_AS(problem_by_id("ex8"), ConfigError);
}

TEST_CASE("problem shapes and domains") {
    struct Row {
        const char* id;
        int dim, n;
        DomainDesc::Kind kind;
        bool exact;
    };
    const Row rows[] = {
        {"ex1", 1, 1, DomainDesc::Kind::Interval, true},
        {"ex2", 1, 1, DomainDesc::Kind::Interval, true},
        {"ex3", 1, 2, DomainDesc::Kind::Interval, true},
        {"ex4", 2, 1, DomainDesc::Kind::Rectangle, true},
        {"ex5", 2, 1, DomainDesc::Kind::Rectangle, true},
        {"ex6", 2, 2, DomainDesc::Kind::Rectangle, true},
        {"ex7", 2, 1, DomainDesc::Kind::LevelSet, false},
    };
    for (const auto& r : rows) {
        const auto& p = problem_by_id(r.id);
        CHECK(p.dim() == r.dim);
        CHECK(p.n_components() == r.n);
        CHECK(p.domain().kind == r.kind);
        CHECK(p.has_exact() == r.exact);
    }
    CHECK_THROWS_AS(problem_by_id("ex7").exact(pt(0, 0.8), 1e-2), ConfigError);
}

// Reference values computed independently with 60-digit arithmetic from the
// closed forms, then rounded to double.
TEST_CASE("exact solutions hit frozen reference values") {
    const double eps = 0.1;
    CHECK(problem_by_id("ex1").exact(pt(0.3), eps)[0] ==
          doctest::Approx(1.878649267971971834724).epsilon(1e-14));
    CHECK(problem_by_id("ex2").exact(pt(0.5), eps)[0] ==
          doctest::Approx(0.006737641110652278652759569).epsilon(1e-14));
    const Eigen::VectorXd u3 = problem_by_id("ex3").exact(pt(0.25), eps);
    REQUIRE(u3.size() == 2);
    CHECK(u3[0] == doctest::Approx(1.208918751284247259458).epsilon(1e-13));
    CHECK(u3[1] == doctest::Approx(0.974106820096908374735).epsilon(1e-13));
    CHECK(problem_by_id("ex4").exact(pt(0.3, 0.7), eps)[0] ==
          doctest::Approx(0.05723148460115016333842).epsilon(1e-13));
    CHECK(problem_by_id("ex5").exact(pt(0.3, 0.7), eps)[0] ==
          doctest::Approx(1.82651118502049883345).epsilon(1e-14));
    const Eigen::VectorXd u6 = problem_by_id("ex6").exact(pt(0.3, 0.7), eps);
    REQUIRE(u6.size() == 2);
    CHECK(u6[0] == doctest::Approx(0.1265640678766800537451).epsilon(1e-13));
    CHECK(u6[1] == doctest::Approx(-0.05877094365203405604453).epsilon(1e-13));
}

TEST_CASE("boundary data agrees with the exact solution on the boundary") {
    for (const auto* prob : all_problems()) {
        if (!prob->has_exact()) continue;
        for (double eps : {0.1, 0.01}) {
            const auto pts = sample_boundary(*prob, prob->dim() == 1 ? 2 : 40, 2026);
            for (const auto& p : pts) {
                const Eigen::VectorXd g = prob->boundary_value(p, eps);
                const Eigen::VectorXd u = prob->exact(p, eps);
                REQUIRE(g.size() == prob->n_components());
                for (int c = 0; c < g.size(); ++c)
                    CHECK(g[c] == doctest::Approx(u[c]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("exact solutions satisfy their own equations") {
    // substituting the closed-form jets into the residual operator must give
    // ~0 at random interior points; this ties operators and solutions together
    for (const auto* prob : all_problems()) {
        if (!prob->has_exact()) continue;
        for (double eps : {1e-1, 1e-2}) {
            Rng rng(Rng::mix(77, static_cast<std::uint64_t>(eps * 1000)));
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                const Eigen::Vector2d p = random_interior(*prob, rng);
                const SolutionJet jet = prob->exact_jet(p, eps);
                worst = std::max(worst, prob->residual(jet, p, eps).cwiseAbs().maxCoeff());
            }
            CAPTURE(prob->id());
            CAPTURE(eps);
            CHECK(worst <= 1e-7);
        }
    }
}

TEST_CASE("exact jets agree with finite differences of the exact values") {
    const double eps = 0.1;
    for (const auto* prob : all_problems()) {
        if (!prob->has_exact()) continue;
        Rng rng(909);
        for (int i = 0; i < 10; ++i) {
            // keep clear of the layers so central differences stay accurate
            Eigen::Vector2d p = random_interior(*prob, rng);
            p[0] = 0.2 + 0.6 * (p[0] - prob->domain().bounds.a) /
                             (prob->domain().bounds.b - prob->domain().bounds.a);
            if (prob->dim() == 2)
                p[1] = 0.2 + 0.6 * (p[1] - prob->domain().bounds.c) /
                                 (prob->domain().bounds.d - prob->domain().bounds.c);
            const SolutionJet jet = prob->exact_jet(p, eps);
            double lap_fd_sum;
            for (int c = 0; c < prob->n_components(); ++c) {
                lap_fd_sum = 0.0;
                for (int axis = 0; axis < prob->dim(); ++axis) {
                    auto slice = [&](double t) {
                        Eigen::Vector2d q = p;
                        q[axis] = t;
                        return prob->exact(q, eps)[c];
                    };
                    const double d1 = (slice(p[axis] + 1e-6) - slice(p[axis] - 1e-6)) / 2e-6;
                    CHECK(jet.grad(c, axis) == doctest::Approx(d1).epsilon(1e-5));
                    const double h = 1e-4;
                    lap_fd_sum += (slice(p[axis] + h) - 2.0 * slice(p[axis]) + slice(p[axis] - h)) /
                                  (h * h);
                }
                CHECK(jet.lap[c] == doctest::Approx(lap_fd_sum).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("collocation weight is squared boundary distance where layers need it") {
    CHECK(problem_by_id("ex1").weight(pt(0.3)) == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(problem_by_id("ex1").weight(pt(0.5)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(problem_by_id("ex1").weight(pt(0.9)) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(problem_by_id("ex3").weight(pt(0.25)) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(problem_by_id("ex4").weight(pt(0.3, 0.7)) == doctest::Approx(0.09).epsilon(1e-13));
    CHECK(problem_by_id("ex5").weight(pt(0.05, 0.5)) == doctest::Approx(0.0025).epsilon(1e-13));
    CHECK(problem_by_id("ex6").weight(pt(0.5, 0.98)) == doctest::Approx(4e-4).epsilon(1e-10));
    // reaction-diffusion and the level-set problem weigh everything equally
    CHECK(problem_by_id("ex2").weight(pt(0.3)) == 1.0);
    CHECK(problem_by_id("ex2").weight(pt(0.999)) == 1.0);
    CHECK(problem_by_id("ex7").weight(pt(0.0, 0.8)) == 1.0);
    CHECK(problem_by_id("ex7").weight(pt(0.3, 0.6)) == 1.0);
}

TEST_CASE("ring-sector level set matches frozen geometry") {
    const auto& prob = problem_by_id("ex7");
    auto phi = [&](double x, double y) { return prob.levelset_phi(pt(x, y)); };

    CHECK(phi(0.0, 0.0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(phi(0.0, 0.8) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(phi(0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(phi(0.75, 0.1) == doctest::Approx(0.1054005819553617417166).epsilon(1e-13));
    CHECK(phi(0.3, 0.6) == doctest::Approx(-0.07082039324993690892275).epsilon(1e-13));

    SUBCASE("mirror symmetry in x") {
        Rng rng(31);
        for (int i = 0; i < 50; ++i) {
            const double x = rng.uniform(0.0, 1.0), y = rng.uniform(-0.2, 1.0);
            CHECK(phi(x, y) == doctest::Approx(phi(-x, y)).epsilon(1e-14));
        }
    }
    SUBCASE("continuous across the sector edge") {
        const double c = std::cos(M_PI / 3), s = std::sin(M_PI / 3);
        for (double r : {0.65, 0.8, 0.95}) {
            const double lo = phi(r * s + 1e-9, r * c);
            const double hi = phi(r * s - 1e-9, r * c);
            CHECK(lo == doctest::Approx(hi).epsilon(1e-7));
        }
    }
    SUBCASE("boundary parametrization lies on the zero set") {
        CHECK(prob.domain().boundary_length ==
              doctest::Approx(4.6076692252650300831).epsilon(1e-13));
        for (int i = 0; i < 64; ++i) {
            const Eigen::Vector2d p = prob.domain().boundary_point(i / 64.0);
            CHECK(std::abs(phi(p[0], p[1])) <= 1e-10);
        }
    }
    SUBCASE("derivative fields match finite differences away from kinks") {
        const Eigen::Vector2d probes[] = {{0.3, 0.6}, {-0.4, 0.65}, {0.05, 0.9}, {0.6, 0.2}};
        for (const auto& p : probes) {
            const PhiJet j = prob.domain().phi(p[0], p[1]);
            auto fx = [&](double t) { return phi(t, p[1]); };
            auto fy = [&](double t) { return phi(p[0], t); };
            CHECK(j.dx == doctest::Approx((fx(p[0] + 1e-6) - fx(p[0] - 1e-6)) / 2e-6).epsilon(1e-6));
            CHECK(j.dy == doctest::Approx((fy(p[1] + 1e-6) - fy(p[1] - 1e-6)) / 2e-6).epsilon(1e-6));
            CHECK(j.dxx == doctest::Approx((fx(p[0] + 1e-4) - 2 * fx(p[0]) + fx(p[0] - 1e-4)) / 1e-8)
                               .epsilon(1e-4));
            CHECK(j.dyy == doctest::Approx((fy(p[1] + 1e-4) - 2 * fy(p[1]) + fy(p[1] - 1e-4)) / 1e-8)
                               .epsilon(1e-4));
        }
    }
    SUBCASE("boundary data is one everywhere") {
        for (int i = 0; i < 16; ++i) {
            const Eigen::Vector2d p = prob.domain().boundary_point(i / 16.0);
            CHECK(prob.boundary_value(p, 1e-8)[0] == 1.0);
        }
    }
    SUBCASE("zero function has zero interior residual") {
        // the reaction term 2*sinh(u) vanishes at u == 0 and there is no source
        SolutionJet jet;
        jet.u = Eigen::VectorXd::Zero(1);
        jet.grad = Eigen::MatrixXd::Zero(1, 2);
        jet.lap = Eigen::VectorXd::Zero(1);
        const Eigen::VectorXd r = prob.residual(jet, pt(0.3, 0.6), 1e-4);
        CHECK(r.cwiseAbs().maxCoeff() == 0.0);
    }
}
