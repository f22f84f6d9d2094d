#include "slpinn/block.hpp"

#include "slpinn/errors.hpp"
#include "slpinn/jet.hpp"

namespace slpinn {

Eigen::VectorXd MlpBlock::value(const Eigen::VectorXd& in) const {
    if (in.size() != input_dim())
        throw ConfigError("block '" + name + "': expected " + std::to_string(input_dim()) +
                          " inputs, got " + std::to_string(in.size()));
    Eigen::VectorXd z = hidden_weights * in + hidden_biases;
    for (int j = 0; j < z.size(); ++j) z[j] = sigmoid(z[j]);
    return output_weights * z;
}

void MlpBlock::write_params(Eigen::VectorXd& dst, int offset) const {
    const int h = hidden(), k = input_dim(), n = output_dim();
    for (int j = 0; j < h; ++j)
        for (int l = 0; l < k; ++l) dst[offset++] = hidden_weights(j, l);
    for (int j = 0; j < h; ++j) dst[offset++] = hidden_biases[j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < h; ++j) dst[offset++] = output_weights(i, j);
}

void MlpBlock::read_params(const Eigen::VectorXd& src, int offset) {
    const int h = hidden(), k = input_dim(), n = output_dim();
    for (int j = 0; j < h; ++j)
        for (int l = 0; l < k; ++l) hidden_weights(j, l) = src[offset++];
    for (int j = 0; j < h; ++j) hidden_biases[j] = src[offset++];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < h; ++j) output_weights(i, j) = src[offset++];
}

}  // namespace slpinn
