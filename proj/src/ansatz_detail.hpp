#pragma once

// Internal helpers shared by the model and autodiff translation units:
// per-geometry block layout and the per-block input maps with their first and
// second axis derivatives.

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "slpinn/errors.hpp"
#include "slpinn/model.hpp"

namespace slpinn::detail {

// (name, input_dim) in flat-parameter order
inline std::vector<std::pair<std::string, int>> block_layout(Geometry g, bool full_inputs) {
    switch (g) {
        case Geometry::OneD:
            return {{"B_r", 1}, {"B_L", 1}, {"B_R", 1}};
        case Geometry::TwoDRegular:
            return {{"B_r", 2}, {"B_rx", 2}, {"B_ry", 2}, {"B_L", 1}, {"B_R", 1}, {"B_B", 1}, {"B_T", 1}};
        case Geometry::TwoDIrregular:
            return {{"B_r", full_inputs ? 3 : 2}, {"B_s", 3}};
    }
    throw ConfigError("unknown geometry");
}

// Columns that receive a phi/eps-scaled input. Their hidden weights must stay
// away from zero: a near-zero weight there turns the neuron into a ramp on an
// intermediate scale that no collocation group samples, and training can park
// solution jumps inside that blind spot.
inline bool scaled_column(Geometry g, int bi, int col, bool full_inputs) {
    switch (g) {
        case Geometry::OneD: return bi > 0;
        case Geometry::TwoDRegular: return bi >= 3;
        case Geometry::TwoDIrregular: return col == 2 && (bi == 1 || full_inputs);
    }
    return false;
}

// Inputs of one block at a point: values xi (k), first derivatives t (k x d)
// and second derivatives cc (k x d) with respect to each axis.
struct BlockInputs {
    Eigen::VectorXd xi;
    Eigen::MatrixXd t;
    Eigen::MatrixXd cc;
};

inline BlockInputs block_inputs(const SolutionModel& model, int bi, const Eigen::Vector2d& p,
                                double eps) {
    const double x = p[0], y = p[1];
    const double ie = 1.0 / eps;
    BlockInputs in;
    switch (model.geometry) {
        case Geometry::OneD: {
            in.xi.resize(1);
            in.t = Eigen::MatrixXd::Zero(1, 1);
            in.cc = Eigen::MatrixXd::Zero(1, 1);
            if (bi == 0) {
                in.xi[0] = x;
                in.t(0, 0) = 1.0;
            } else {
                in.xi[0] = (x - (bi == 1 ? model.bounds.a : model.bounds.b)) * ie;
                in.t(0, 0) = ie;
            }
            return in;
        }
        case Geometry::TwoDRegular: {
            if (bi < 3) {
                in.xi.resize(2);
                in.xi << x, y;
                in.t = Eigen::MatrixXd::Identity(2, 2);
                in.cc = Eigen::MatrixXd::Zero(2, 2);
                return in;
            }
            in.xi.resize(1);
            in.t = Eigen::MatrixXd::Zero(1, 2);
            in.cc = Eigen::MatrixXd::Zero(1, 2);
            switch (bi) {
                case 3: in.xi[0] = (x - model.bounds.a) * ie; in.t(0, 0) = ie; break;
                case 4: in.xi[0] = (x - model.bounds.b) * ie; in.t(0, 0) = ie; break;
                case 5: in.xi[0] = (y - model.bounds.c) * ie; in.t(0, 1) = ie; break;
                case 6: in.xi[0] = (y - model.bounds.d) * ie; in.t(0, 1) = ie; break;
                default: throw ConfigError("bad block index");
            }
            return in;
        }
        case Geometry::TwoDIrregular: {
            const bool takes_phi = (bi == 1) || model.full_inputs;
            const int k = takes_phi ? 3 : 2;
            in.xi.resize(k);
            in.t = Eigen::MatrixXd::Zero(k, 2);
            in.cc = Eigen::MatrixXd::Zero(k, 2);
            in.xi[0] = x;
            in.xi[1] = y;
            in.t(0, 0) = 1.0;
            in.t(1, 1) = 1.0;
            if (takes_phi) {
                if (!model.phi) throw ConfigError("irregular model has no level-set function");
                const PhiJet ph = model.phi(x, y);
                in.xi[2] = ph.v * ie;
                in.t(2, 0) = ph.dx * ie;
                in.t(2, 1) = ph.dy * ie;
                in.cc(2, 0) = ph.dxx * ie;
                in.cc(2, 1) = ph.dyy * ie;
            }
            return in;
        }
    }
    throw ConfigError("unknown geometry");
}

}  // namespace slpinn::detail
