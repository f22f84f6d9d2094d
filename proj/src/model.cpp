#include "slpinn/model.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "ansatz_detail.hpp"
#include "slpinn/errors.hpp"
#include "slpinn/jet.hpp"
#include "slpinn/rng.hpp"

namespace slpinn {

std::string geometry_name(Geometry g) {
    switch (g) {
        case Geometry::OneD: return "one_d";
        case Geometry::TwoDRegular: return "two_d_regular";
        case Geometry::TwoDIrregular: return "two_d_irregular";
    }
    throw ConfigError("unknown geometry");
}

Geometry geometry_from_name(const std::string& name) {
    if (name == "one_d") return Geometry::OneD;
    if (name == "two_d_regular") return Geometry::TwoDRegular;
    if (name == "two_d_irregular") return Geometry::TwoDIrregular;
    throw ConfigError("unknown geometry name '" + name + "'");
}

int SolutionModel::param_count() const {
    int p = 0;
    for (const auto& b : blocks) p += b.param_count();
    return p;
}

Eigen::VectorXd SolutionModel::get_theta() const {
    Eigen::VectorXd theta(param_count());
    int off = 0;
    for (const auto& b : blocks) {
        b.write_params(theta, off);
        off += b.param_count();
    }
    return theta;
}

void SolutionModel::set_theta(const Eigen::VectorXd& theta) {
    if (theta.size() != param_count())
        throw ConfigError("theta size " + std::to_string(theta.size()) + " != parameter count " +
                          std::to_string(param_count()));
    int off = 0;
    for (auto& b : blocks) {
        b.read_params(theta, off);
        off += b.param_count();
    }
}

const MlpBlock& SolutionModel::block(const std::string& name) const {
    for (const auto& b : blocks)
        if (b.name == name) return b;
    throw ConfigError("no block named '" + name + "'");
}

SolutionModel build_model(Geometry geometry, int n_components, int hidden, const Bounds& bounds,
                          const LevelSetFn& phi, double epsilon, const InitConfig& init,
                          bool irregular_full_inputs) {
    if (hidden < 1) throw ConfigError("hidden must be >= 1");
    if (n_components < 1) throw ConfigError("n_components must be >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (geometry == Geometry::TwoDIrregular && !phi)
        throw ConfigError("irregular geometry requires a level-set function");

    SolutionModel model;
    model.geometry = geometry;
    model.n = n_components;
    model.epsilon = epsilon;
    model.bounds = bounds;
    model.phi = phi;
    model.full_inputs = irregular_full_inputs;

    Rng rng(init.seed);
    int bi = 0;
    for (const auto& [name, k] : detail::block_layout(geometry, irregular_full_inputs)) {
        MlpBlock b;
        b.name = name;
        b.hidden_weights.resize(hidden, k);
        b.hidden_biases.resize(hidden);
        b.output_weights.resize(n_components, hidden);
        const double s = 1.0 / std::sqrt(static_cast<double>(k));
        const double so = 1.0 / std::sqrt(static_cast<double>(hidden));
        for (int j = 0; j < hidden; ++j)
            for (int l = 0; l < k; ++l) {
                const double u = rng.uniform(-s, s);
                // scaled inputs: keep |w| in [s/2, s] so every sigmoid completes
                // its transition within an O(1) window of the scaled variable
                b.hidden_weights(j, l) =
                    detail::scaled_column(geometry, bi, l, irregular_full_inputs)
                        ? 0.5 * u + (u < 0.0 ? -0.5 * s : 0.5 * s)
                        : u;
            }
        for (int j = 0; j < hidden; ++j) b.hidden_biases[j] = rng.uniform(-s, s);
        for (int i = 0; i < n_components; ++i)
            for (int j = 0; j < hidden; ++j) b.output_weights(i, j) = rng.uniform(-so, so);
        model.blocks.push_back(std::move(b));
        ++bi;
    }
    return model;
}

namespace {

std::vector<Eigen::VectorXd> block_values(const SolutionModel& model, const Eigen::Vector2d& point,
                                          double epsilon) {
    if (!point.allFinite()) throw ConfigError("non-finite evaluation point");
    std::vector<Eigen::VectorXd> vals;
    vals.reserve(model.blocks.size());
    for (int bi = 0; bi < static_cast<int>(model.blocks.size()); ++bi)
        vals.push_back(model.blocks[bi].value(detail::block_inputs(model, bi, point, epsilon).xi));
    return vals;
}

}  // namespace

Eigen::VectorXd forward(const SolutionModel& model, const Eigen::Vector2d& point, double epsilon) {
    const auto v = block_values(model, point, epsilon);
    switch (model.geometry) {
        case Geometry::OneD:
            return v[0] + v[1] + v[2];
        case Geometry::TwoDRegular:
            return v[0].array() + (v[1] + v[3] + v[4]).array() * (v[2] + v[5] + v[6]).array();
        case Geometry::TwoDIrregular:
            return v[0] + v[1];
    }
    throw ConfigError("unknown geometry");
}

ComponentOutputs component_outputs(const SolutionModel& model, const Eigen::Vector2d& point,
                                   double epsilon) {
    const auto v = block_values(model, point, epsilon);
    ComponentOutputs out;
    for (size_t i = 0; i < v.size(); ++i) out.raw[model.blocks[i].name] = v[i];
    out.u_regular = v[0];
    switch (model.geometry) {
        case Geometry::OneD:
            out.u_singular = v[1] + v[2];
            break;
        case Geometry::TwoDRegular:
            out.u_singular = ((v[1] + v[3] + v[4]).array() * (v[2] + v[5] + v[6]).array()).matrix();
            break;
        case Geometry::TwoDIrregular:
            out.u_singular = v[1];
            break;
    }
    out.u = out.u_regular + out.u_singular;
    return out;
}

void save_checkpoint(const SolutionModel& model, const std::string& path) {
    nlohmann::json j;
    j["format"] = "slpinn-model-v1";
    j["geometry"] = geometry_name(model.geometry);
    j["n"] = model.n;
    j["epsilon"] = model.epsilon;
    j["bounds"] = {model.bounds.a, model.bounds.b, model.bounds.c, model.bounds.d};
    j["full_inputs"] = model.full_inputs;
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : model.blocks) {
        nlohmann::json jb;
        jb["name"] = b.name;
        jb["input_dim"] = b.input_dim();
        jb["hidden"] = b.hidden();
        jb["output_dim"] = b.output_dim();
        Eigen::VectorXd flat(b.param_count());
        b.write_params(flat, 0);
        jb["params"] = std::vector<double>(flat.data(), flat.data() + flat.size());
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write checkpoint '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed for checkpoint '" + path + "'");
}

SolutionModel load_checkpoint(const std::string& path, const LevelSetFn& phi) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read checkpoint '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed checkpoint '" + path + "': " + e.what());
    }
    if (j.value("format", "") != "slpinn-model-v1")
        throw IoError("unrecognized checkpoint format in '" + path + "'");

    SolutionModel model;
    model.geometry = geometry_from_name(j.at("geometry").get<std::string>());
    model.n = j.at("n").get<int>();
    model.epsilon = j.at("epsilon").get<double>();
    const auto bounds = j.at("bounds").get<std::vector<double>>();
    model.bounds = {bounds.at(0), bounds.at(1), bounds.at(2), bounds.at(3)};
    model.full_inputs = j.value("full_inputs", false);
    model.phi = phi;
    for (const auto& jb : j.at("blocks")) {
        MlpBlock b;
        b.name = jb.at("name").get<std::string>();
        const int k = jb.at("input_dim").get<int>();
        const int h = jb.at("hidden").get<int>();
        const int n = jb.at("output_dim").get<int>();
        b.hidden_weights.resize(h, k);
        b.hidden_biases.resize(h);
        b.output_weights.resize(n, h);
        const auto params = jb.at("params").get<std::vector<double>>();
        if (static_cast<int>(params.size()) != b.param_count())
            throw IoError("checkpoint block '" + b.name + "' has wrong parameter count");
        Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(params.data(), params.size());
        b.read_params(flat, 0);
        model.blocks.push_back(std::move(b));
    }
    return model;
}

}  // namespace slpinn
