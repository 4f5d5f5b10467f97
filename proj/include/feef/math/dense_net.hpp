#ifndef FEEF_MATH_DENSE_NET_HPP
#define FEEF_MATH_DENSE_NET_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "feef/common.hpp"

namespace feef::math {

enum class Activation { swish, relu, linear };

struct LayerShape {
    std::size_t in = 0;
    std::size_t out = 0;
    Activation activation = Activation::linear;

    friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

/**
 * Fully connected feedforward network.
 *
 * All weights and biases live in one contiguous buffer so that optimizers and
 * checkpoints can treat the parameters as a flat vector. Layer k occupies
 * `out*in` column-major weights followed by `out` biases.
 *
 * Batched calls take inputs as columns (input_dim x N).
 */
class DenseNet {
public:
    using WeightMap = Eigen::Map<Matrix>;
    using ConstWeightMap = Eigen::Map<const Matrix>;
    using BiasMap = Eigen::Map<Vector>;
    using ConstBiasMap = Eigen::Map<const Vector>;

    DenseNet() = default;

    /// Zero-initialised network. Throws ContractViolation if the shapes do not chain.
    explicit DenseNet(std::vector<LayerShape> layers);

    /// Hidden layers use `hidden_activation`; the output layer is linear.
    static DenseNet mlp(std::size_t input_dim, std::span<const std::size_t> hidden,
                        std::size_t output_dim, Activation hidden_activation);

    /// Fan-in scaled uniform init, U(-1/sqrt(in), 1/sqrt(in)) for weights and biases.
    void init_uniform(Rng& rng);

    std::size_t input_dim() const { return layers_.empty() ? 0 : layers_.front().in; }
    std::size_t output_dim() const { return layers_.empty() ? 0 : layers_.back().out; }
    std::size_t num_layers() const { return layers_.size(); }
    std::size_t num_params() const { return params_.size(); }
    const std::vector<LayerShape>& layers() const { return layers_; }
    const LayerShape& layer(std::size_t k) const { return layers_.at(k); }

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    WeightMap weight(std::size_t k);
    ConstWeightMap weight(std::size_t k) const;
    BiasMap bias(std::size_t k);
    ConstBiasMap bias(std::size_t k) const;

    /// Offset of layer k's weights inside params(); its biases follow the weights.
    std::size_t offset(std::size_t k) const { return offsets_.at(k); }

    Vector forward(const Vector& input) const;
    Matrix forward_batch(const Matrix& inputs) const;

    bool all_finite() const;

    friend bool operator==(const DenseNet&, const DenseNet&) = default;

private:
    std::vector<LayerShape> layers_;
    std::vector<std::size_t> offsets_;
    AlignedBuffer params_;
};

double activate(Activation act, double z);
/// d activate / dz evaluated at the pre-activation z.
double activate_derivative(Activation act, double z);

/// Elementwise activation of a pre-activation matrix.
Matrix activate(Activation act, const Matrix& z);
/// Elementwise derivative of the activation at pre-activations z.
Matrix activate_derivative(Activation act, const Matrix& z);

/// Stable softplus: log(1 + e^x).
double softplus(double x);
double sigmoid(double x);

} // namespace feef::math

#endif
