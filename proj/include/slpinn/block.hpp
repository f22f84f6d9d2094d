#pragma once

#include <Eigen/Dense>
#include <string>

namespace slpinn {

/// One fully connected block: a single sigmoid hidden layer and a linear
/// output layer with no output bias (the bias is omitted deliberately; the
/// parameter count h*k + h + n*h is load-bearing for the model sizes).
struct MlpBlock {
    std::string name;
    Eigen::MatrixXd hidden_weights;  // h x input_dim
    Eigen::VectorXd hidden_biases;   // h
    Eigen::MatrixXd output_weights;  // output_dim x h

    int input_dim() const { return static_cast<int>(hidden_weights.cols()); }
    int hidden() const { return static_cast<int>(hidden_weights.rows()); }
    int output_dim() const { return static_cast<int>(output_weights.rows()); }

    int param_count() const { return hidden() * (input_dim() + 1) + output_dim() * hidden(); }

    /// Plain value forward pass.
    Eigen::VectorXd value(const Eigen::VectorXd& in) const;

    /// Flat parameter order: hidden weights row-major, hidden biases, output
    /// weights row-major. write_params fills dst[offset..offset+param_count).
    void write_params(Eigen::VectorXd& dst, int offset) const;
    void read_params(const Eigen::VectorXd& src, int offset);
};

}  // namespace slpinn
