#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <string>

#include "slpinn/errors.hpp"
#include "slpinn/jet.hpp"
#include "slpinn/model.hpp"
#include "slpinn/problem.hpp"

using namespace slpinn;

namespace {

SolutionModel zeroed(SolutionModel model) {
    model.set_theta(Eigen::VectorXd::Zero(model.param_count()));
    return model;
}

// one-neuron configuration of a named block: out = v * sigmoid(w*xi + b)
void set_neuron(SolutionModel& model, const std::string& name, int neuron, double w, double b,
                double v) {
    for (auto& blk : model.blocks) {
        if (blk.name != name) continue;
        for (int l = 0; l < blk.input_dim(); ++l) blk.hidden_weights(neuron, l) = w;
        blk.hidden_biases[neuron] = b;
        blk.output_weights(0, neuron) = v;
        return;
    }
    REQUIRE(false);
}

}  // namespace

TEST_CASE("geometry names round-trip") {
    for (Geometry g : {Geometry::OneD, Geometry::TwoDRegular, Geometry::TwoDIrregular})
        CHECK(geometry_from_name(geometry_name(g)) == g);
    CHECK_THROWS_AS(geometry_from_name("helix"), ConfigError);
}

TEST_CASE("parameter counts for the benchmark configurations") {
    const LevelSetFn flat = [](double, double) { return PhiJet{-1.0, 0, 0, 0, 0}; };
    auto count = [&](Geometry g, int n, int h, bool full = false) {
        return build_model(g, n, h, Bounds{}, g == Geometry::TwoDIrregular ? flat : nullptr, 1e-3,
                           InitConfig{1}, full)
            .param_count();
    };
    CHECK(count(Geometry::OneD, 1, 50) == 450);
    CHECK(count(Geometry::OneD, 2, 50) == 600);
    CHECK(count(Geometry::TwoDRegular, 1, 50) == 1200);
    CHECK(count(Geometry::TwoDRegular, 2, 35) == 1085);
    CHECK(count(Geometry::TwoDIrregular, 1, 35) == 315);
    CHECK(count(Geometry::TwoDIrregular, 1, 35, true) == 350);
}

TEST_CASE("build_model validates its arguments") {
    CHECK_THROWS_AS(build_model(Geometry::OneD, 1, 0, Bounds{}, nullptr, 0.1, InitConfig{1}),
                    ConfigError);
    CHECK_THROWS_AS(build_model(Geometry::OneD, 0, 4, Bounds{}, nullptr, 0.1, InitConfig{1}),
                    ConfigError);
    CHECK_THROWS_AS(build_model(Geometry::OneD, 1, 4, Bounds{}, nullptr, -1.0, InitConfig{1}),
                    ConfigError);
    CHECK_THROWS_AS(
        build_model(Geometry::TwoDIrregular, 1, 4, Bounds{}, nullptr, 0.1, InitConfig{1}),
        ConfigError);
}

TEST_CASE("initialization is seeded, bounded, and seed-sensitive") {
    const auto a = build_model(Geometry::OneD, 1, 50, Bounds{}, nullptr, 1e-4, InitConfig{42});
    const auto b = build_model(Geometry::OneD, 1, 50, Bounds{}, nullptr, 1e-4, InitConfig{42});
    const auto c = build_model(Geometry::OneD, 1, 50, Bounds{}, nullptr, 1e-4, InitConfig{43});
    CHECK((a.get_theta().array() == b.get_theta().array()).all());
    CHECK(!(a.get_theta().array() == c.get_theta().array()).all());

    for (const auto& blk : a.blocks) {
        const double s = 1.0 / std::sqrt(static_cast<double>(blk.input_dim()));
        const double so = 1.0 / std::sqrt(static_cast<double>(blk.hidden()));
        CHECK(blk.hidden_weights.cwiseAbs().maxCoeff() <= s);
        CHECK(blk.hidden_biases.cwiseAbs().maxCoeff() <= s);
        CHECK(blk.output_weights.cwiseAbs().maxCoeff() <= so);
        // degenerate all-zero draws would defeat the point of random init
        CHECK(blk.hidden_weights.cwiseAbs().maxCoeff() > 0.0);
    }

    // weights on scaled inputs start in [s/2, s]: a sigmoid whose weight on a
    // distance/eps input is near zero varies on a scale no point group samples,
    // and a trained model can hide a wrong solution jump there
    SUBCASE("scaled-input weights are bounded away from zero") {
        for (const char* name : {"B_L", "B_R"}) {
            const auto& blk = a.block(name);
            CHECK(blk.hidden_weights.cwiseAbs().minCoeff() >= 0.5);
            CHECK(blk.hidden_weights.cwiseAbs().maxCoeff() <= 1.0);
        }
        CHECK(a.block("B_r").hidden_weights.cwiseAbs().minCoeff() < 0.5);

        const auto rect =
            build_model(Geometry::TwoDRegular, 1, 40, Bounds{}, nullptr, 1e-3, InitConfig{7});
        for (const char* name : {"B_L", "B_R", "B_B", "B_T"})
            CHECK(rect.block(name).hidden_weights.cwiseAbs().minCoeff() >= 0.5);

        const LevelSetFn flat = [](double, double) { return PhiJet{-1.0, 0.0, 0.0, 0.0, 0.0}; };
        const auto irr =
            build_model(Geometry::TwoDIrregular, 1, 40, Bounds{}, flat, 1e-3, InitConfig{7});
        const double s3 = 1.0 / std::sqrt(3.0);
        CHECK(irr.block("B_s").hidden_weights.col(2).cwiseAbs().minCoeff() >= 0.5 * s3);
        CHECK(irr.block("B_s").hidden_weights.leftCols(2).cwiseAbs().minCoeff() < 0.5 * s3);
        const auto full =
            build_model(Geometry::TwoDIrregular, 1, 40, Bounds{}, flat, 1e-3, InitConfig{7}, true);
        CHECK(full.block("B_r").hidden_weights.col(2).cwiseAbs().minCoeff() >= 0.5 * s3);
    }
}

TEST_CASE("theta vector round-trips bit for bit") {
    auto model = build_model(Geometry::TwoDRegular, 2, 7, Bounds{}, nullptr, 1e-2, InitConfig{5});
    const Eigen::VectorXd theta = model.get_theta();
    REQUIRE(theta.size() == model.param_count());
    model.set_theta(Eigen::VectorXd::Zero(theta.size()));
    model.set_theta(theta);
    CHECK((model.get_theta().array() == theta.array()).all());
}

TEST_CASE("block lookup by name") {
    const auto model = build_model(Geometry::OneD, 1, 3, Bounds{}, nullptr, 0.1, InitConfig{2});
    CHECK(model.block("B_L").input_dim() == 1);
    CHECK_THROWS_AS(model.block("B_Q"), ConfigError);
}

TEST_CASE("zero parameters give the zero function in every geometry") {
    const LevelSetFn ring = problem_by_id("ex7").domain().phi;
    const auto m1 = zeroed(build_model(Geometry::OneD, 2, 5, Bounds{}, nullptr, 1e-3, InitConfig{3}));
    const auto m2 =
        zeroed(build_model(Geometry::TwoDRegular, 1, 5, Bounds{}, nullptr, 1e-3, InitConfig{3}));
    const auto m3 =
        zeroed(build_model(Geometry::TwoDIrregular, 1, 5, Bounds{-1, 1, 0, 1}, ring, 1e-3, InitConfig{3}));
    CHECK(forward(m1, {0.37, 0.0}, 1e-3).norm() == 0.0);
    CHECK(forward(m2, {0.37, 0.81}, 1e-3).norm() == 0.0);
    CHECK(forward(m3, {0.1, 0.75}, 1e-3).norm() == 0.0);
}

TEST_CASE("interval ansatz feeds scaled distances to the layer blocks") {
    const double eps = 1e-3;
    auto model =
        zeroed(build_model(Geometry::OneD, 1, 2, Bounds{0, 1, 0, 0}, nullptr, eps, InitConfig{4}));

    SUBCASE("left block sees (x - a)/eps") {
        set_neuron(model, "B_L", 0, 1.0, 0.0, 1.0);
        CHECK(forward(model, {0.0, 0.0}, eps)[0] == 0.5);
        CHECK(forward(model, {eps, 0.0}, eps)[0] == doctest::Approx(sigmoid(1.0)).epsilon(1e-15));
        CHECK(forward(model, {5 * eps, 0.0}, eps)[0] ==
              doctest::Approx(sigmoid(5.0)).epsilon(1e-15));
    }
    SUBCASE("right block sees (x - b)/eps") {
        set_neuron(model, "B_R", 0, 1.0, 0.0, 1.0);
        CHECK(forward(model, {1.0, 0.0}, eps)[0] == 0.5);
        CHECK(forward(model, {1.0 - eps, 0.0}, eps)[0] ==
              doctest::Approx(sigmoid(-1.0)).epsilon(1e-15));
    }
    SUBCASE("regular block sees x unscaled") {
        set_neuron(model, "B_r", 0, 1.0, 0.0, 1.0);
        CHECK(forward(model, {0.25, 0.0}, eps)[0] ==
              doctest::Approx(sigmoid(0.25)).epsilon(1e-15));
    }
}

TEST_CASE("rectangle ansatz multiplies the x and y factor groups") {
    const double eps = 1e-2;
    auto model = zeroed(
        build_model(Geometry::TwoDRegular, 1, 2, Bounds{0, 1, 0, 1}, nullptr, eps, InitConfig{4}));
    // B_rx == 1 and B_B == 3 via flat sigmoids: v * sigmoid(0) = v/2
    set_neuron(model, "B_rx", 0, 0.0, 0.0, 2.0);
    set_neuron(model, "B_B", 0, 0.0, 0.0, 6.0);
    for (double x : {0.0, 0.33, 1.0})
        for (double y : {0.0, 0.71, 1.0})
            CHECK(forward(model, {x, y}, eps)[0] == doctest::Approx(3.0).epsilon(1e-15));
    // adding a constant regular term shifts the product additively
    set_neuron(model, "B_r", 0, 0.0, 0.0, 2.0);
    CHECK(forward(model, {0.5, 0.5}, eps)[0] == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("irregular ansatz adds a level-set-driven singular block") {
    const double eps = 0.5;
    const LevelSetFn phi = [](double x, double y) {
        return PhiJet{x - 2.0 * y, 1.0, -2.0, 0.0, 0.0};
    };
    auto model = zeroed(build_model(Geometry::TwoDIrregular, 1, 2, Bounds{-1, 1, -1, 1}, phi, eps,
                                    InitConfig{4}));
    // B_s reads (x, y, phi/eps); weight only the third input
    for (auto& blk : model.blocks) {
        if (blk.name != "B_s") continue;
        blk.hidden_weights(0, 2) = 1.0;
        blk.output_weights(0, 0) = 1.0;
    }
    const double x = 0.3, y = 0.4;
    CHECK(forward(model, {x, y}, eps)[0] ==
          doctest::Approx(sigmoid((x - 2.0 * y) / eps)).epsilon(1e-15));

    const auto parts = component_outputs(model, {x, y}, eps);
    CHECK(parts.raw.count("B_r") == 1);
    CHECK(parts.raw.count("B_s") == 1);
    CHECK(parts.u_regular[0] == 0.0);
    CHECK(parts.u[0] == doctest::Approx(parts.u_regular[0] + parts.u_singular[0]).epsilon(1e-15));
}

TEST_CASE("checkpoints round-trip models exactly") {
    const std::string path = "checkpoint_roundtrip_test.json";

    SUBCASE("rectangle model") {
        const auto model =
            build_model(Geometry::TwoDRegular, 2, 6, Bounds{0, 2, -1, 1}, nullptr, 1e-5, InitConfig{9});
        save_checkpoint(model, path);
        const SolutionModel back = load_checkpoint(path);
        CHECK(back.geometry == model.geometry);
        CHECK(back.n == model.n);
        CHECK(back.epsilon == model.epsilon);
        CHECK(back.bounds.a == model.bounds.a);
        CHECK(back.bounds.d == model.bounds.d);
        CHECK((back.get_theta().array() == model.get_theta().array()).all());
        const Eigen::Vector2d p(0.4, 0.2);
        CHECK((forward(back, p, 1e-5).array() == forward(model, p, 1e-5).array()).all());
    }
    SUBCASE("irregular model needs its level set back") {
        const auto& prob = problem_by_id("ex7");
        const auto model = build_model(Geometry::TwoDIrregular, 1, 5, prob.domain().bounds,
                                       prob.domain().phi, 1e-4, InitConfig{10}, true);
        save_checkpoint(model, path);
        const SolutionModel back = load_checkpoint(path, prob.domain().phi);
        CHECK(back.full_inputs);
        CHECK((back.get_theta().array() == model.get_theta().array()).all());
        const Eigen::Vector2d p(0.05, 0.78);
        CHECK((forward(back, p, 1e-4).array() == forward(model, p, 1e-4).array()).all());
    }
    std::remove(path.c_str());
}
