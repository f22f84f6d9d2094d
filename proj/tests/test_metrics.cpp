#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "slpinn/errors.hpp"
#include "slpinn/metrics.hpp"
#include "slpinn/model.hpp"
#include "slpinn/problem.hpp"

using namespace slpinn;

namespace {

void set_single_neuron(SolutionModel& model, const std::string& name, double w, double b,
                       double v) {
    for (auto& blk : model.blocks) {
        if (blk.name != name) continue;
        blk.hidden_weights(0, 0) = w;
        blk.hidden_biases[0] = b;
        blk.output_weights(0, 0) = v;
        return;
    }
    REQUIRE(false);
}

SolutionModel blank_1d(double eps) {
    auto model = build_model(Geometry::OneD, 1, 2, Bounds{0, 1, 0, 0}, nullptr, eps, InitConfig{1});
    model.set_theta(Eigen::VectorXd::Zero(model.param_count()));
    return model;
}

}  // namespace

TEST_CASE("relative errors per component") {
    Eigen::MatrixXd exact(4, 2);
    exact << 1, 5, 2, 5, -2, 5, 1, 5;
    Eigen::VectorXd l2, linf;

    SUBCASE("perfect prediction gives zero") {
        relative_errors(exact, exact, l2, linf);
        CHECK(l2.norm() == 0.0);
        CHECK(linf.norm() == 0.0);
    }
    SUBCASE("doubling the prediction gives exactly one") {
        relative_errors(exact, 2.0 * exact, l2, linf);
        CHECK(l2[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(l2[1] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(linf[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(linf[1] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("hand-computed asymmetric case") {
        Eigen::MatrixXd pred = exact;
        pred(0, 0) += 0.5;  // only component 0 touched
        relative_errors(exact, pred, l2, linf);
        CHECK(l2[0] == doctest::Approx(0.5 / exact.col(0).norm()).epsilon(1e-14));
        CHECK(linf[0] == doctest::Approx(0.5 / 2.0).epsilon(1e-14));
        CHECK(l2[1] == 0.0);
        CHECK(linf[1] == 0.0);
    }
    SUBCASE("common scaling cancels") {
        Eigen::MatrixXd pred = exact;
        pred(2, 1) -= 1.25;
        Eigen::VectorXd l2s, linfs;
        relative_errors(exact, pred, l2, linf);
        relative_errors(10.0 * exact, 10.0 * pred, l2s, linfs);
        CHECK(l2s[1] == doctest::Approx(l2[1]).epsilon(1e-13));
        CHECK(linfs[1] == doctest::Approx(linf[1]).epsilon(1e-13));
    }
    SUBCASE("shape and degeneracy guards") {
        Eigen::MatrixXd wrong(3, 2);
        CHECK_THROWS_AS(relative_errors(exact, wrong, l2, linf), ConfigError);
        Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(4, 1);
        CHECK_THROWS_AS(relative_errors(zero, zero, l2, linf), ConfigError);
    }
}

TEST_CASE("aggregation averages componentwise over trials") {
    auto single = [](double l2a, double l2b, double linfa, double linfb) {
        ErrorReport r;
        r.n_test = 100;
        r.trials = 1;
        Eigen::VectorXd l2(2), linf(2);
        l2 << l2a, l2b;
        linf << linfa, linfb;
        r.per_trial_l2 = {l2};
        r.per_trial_linf = {linf};
        r.rel_l2_mean = l2;
        r.rel_linf_mean = linf;
        return r;
    };
    const auto agg = aggregate_trials(
        {single(1e-6, 2e-6, 3e-6, 4e-6), single(3e-6, 4e-6, 5e-6, 6e-6)});
    CHECK(agg.trials == 2);
    CHECK(agg.rel_l2_mean[0] == doctest::Approx(2e-6).epsilon(1e-13));
    CHECK(agg.rel_l2_mean[1] == doctest::Approx(3e-6).epsilon(1e-13));
    CHECK(agg.rel_linf_mean[0] == doctest::Approx(4e-6).epsilon(1e-13));
    CHECK(agg.rel_linf_mean[1] == doctest::Approx(5e-6).epsilon(1e-13));
    CHECK(agg.per_trial_l2.size() == 2);

    CHECK_THROWS_AS(aggregate_trials({}), ConfigError);
    std::vector<ErrorReport> six(6, single(1, 1, 1, 1));
    CHECK_THROWS_AS(aggregate_trials(six), ConfigError);
}

TEST_CASE("layer detection compares the singular block ranges") {
    const double eps = 1e-4;
    const auto& prob = problem_by_id("ex1");

    SUBCASE("active left block, degenerate right block") {
        auto model = blank_1d(eps);
        set_single_neuron(model, "B_L", 1.0, 0.0, 1.0);
        // a right block that outputs a pure constant has zero range
        set_single_neuron(model, "B_R", 0.0, 0.0, 3.0);
        CHECK(layer_detection_ratio(model, prob, eps) == 0.0);
    }
    SUBCASE("dead left block reports infinity") {
        auto model = blank_1d(eps);
        set_single_neuron(model, "B_R", 1.0, 0.0, 1.0);
        CHECK(std::isinf(layer_detection_ratio(model, prob, eps)));
    }
    SUBCASE("mirror-symmetric blocks give a ratio of one") {
        auto model = blank_1d(eps);
        set_single_neuron(model, "B_L", 1.0, 0.0, 1.0);
        set_single_neuron(model, "B_R", 1.0, 0.0, 1.0);
        CHECK(layer_detection_ratio(model, prob, eps) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("shrinking the right block shrinks the ratio proportionally") {
        auto model = blank_1d(eps);
        set_single_neuron(model, "B_L", 1.0, 0.0, 1.0);
        set_single_neuron(model, "B_R", 1.0, 0.0, 0.01);
        CHECK(layer_detection_ratio(model, prob, eps) == doctest::Approx(0.01).epsilon(1e-9));
    }
    SUBCASE("only 1D models are supported") {
        auto model =
            build_model(Geometry::TwoDRegular, 1, 2, Bounds{}, nullptr, eps, InitConfig{1});
        CHECK_THROWS_AS(layer_detection_ratio(model, problem_by_id("ex4"), eps), ConfigError);
    }
}
