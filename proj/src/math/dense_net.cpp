#include "feef/math/dense_net.hpp"

#include <cmath>
#include <string>

namespace feef::math {

double sigmoid(double x)
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x)
{
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double activate(Activation act, double z)
{
    switch (act) {
    case Activation::swish:
        return z * sigmoid(z);
    case Activation::relu:
        return z > 0.0 ? z : 0.0;
    case Activation::linear:
        break;
    }
    return z;
}

double activate_derivative(Activation act, double z)
{
    switch (act) {
    case Activation::swish: {
        const double s = sigmoid(z);
        return s + z * s * (1.0 - s);
    }
    case Activation::relu:
        return z > 0.0 ? 1.0 : 0.0;
    case Activation::linear:
        break;
    }
    return 1.0;
}

Matrix activate(Activation act, const Matrix& z)
{
    switch (act) {
    case Activation::swish:
        // z * sigmoid(z); exp overflow yields z / inf = 0, which is the limit.
        return (z.array() / (1.0 + (-z.array()).exp())).matrix();
    case Activation::relu:
        return z.cwiseMax(0.0);
    case Activation::linear:
        break;
    }
    return z;
}

Matrix activate_derivative(Activation act, const Matrix& z)
{
    switch (act) {
    case Activation::swish: {
        const Eigen::ArrayXXd s = 1.0 / (1.0 + (-z.array()).exp());
        return (s + z.array() * s * (1.0 - s)).matrix();
    }
    case Activation::relu:
        return (z.array() > 0.0).cast<double>().matrix();
    case Activation::linear:
        break;
    }
    return Matrix::Ones(z.rows(), z.cols());
}

DenseNet::DenseNet(std::vector<LayerShape> layers) : layers_(std::move(layers))
{
    require(!layers_.empty(), "DenseNet: at least one layer required");
    std::size_t total = 0;
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        const auto& l = layers_[k];
        require(l.in > 0 && l.out > 0, "DenseNet: layer dimensions must be positive");
        if (k > 0)
            require(layers_[k - 1].out == l.in,
                    "DenseNet: layer " + std::to_string(k) + " input does not chain with previous output");
        offsets_.push_back(total);
        total += l.out * l.in + l.out;
    }
    params_.assign(total, 0.0);
}

DenseNet DenseNet::mlp(std::size_t input_dim, std::span<const std::size_t> hidden,
                       std::size_t output_dim, Activation hidden_activation)
{
    std::vector<LayerShape> layers;
    std::size_t prev = input_dim;
    for (std::size_t h : hidden) {
        layers.push_back({prev, h, hidden_activation});
        prev = h;
    }
    layers.push_back({prev, output_dim, Activation::linear});
    return DenseNet(std::move(layers));
}

void DenseNet::init_uniform(Rng& rng)
{
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        const double bound = std::sqrt(1.0 / static_cast<double>(layers_[k].in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        const std::size_t begin = offsets_[k];
        const std::size_t end = begin + layers_[k].out * layers_[k].in + layers_[k].out;
        for (std::size_t i = begin; i < end; ++i)
            params_[i] = dist(rng);
    }
}

DenseNet::WeightMap DenseNet::weight(std::size_t k)
{
    const auto& l = layers_.at(k);
    return WeightMap(params_.data() + offsets_[k], static_cast<Eigen::Index>(l.out),
                     static_cast<Eigen::Index>(l.in));
}

DenseNet::ConstWeightMap DenseNet::weight(std::size_t k) const
{
    const auto& l = layers_.at(k);
    return ConstWeightMap(params_.data() + offsets_[k], static_cast<Eigen::Index>(l.out),
                          static_cast<Eigen::Index>(l.in));
}

DenseNet::BiasMap DenseNet::bias(std::size_t k)
{
    const auto& l = layers_.at(k);
    return BiasMap(params_.data() + offsets_[k] + l.out * l.in, static_cast<Eigen::Index>(l.out));
}

DenseNet::ConstBiasMap DenseNet::bias(std::size_t k) const
{
    const auto& l = layers_.at(k);
    return ConstBiasMap(params_.data() + offsets_[k] + l.out * l.in, static_cast<Eigen::Index>(l.out));
}

Vector DenseNet::forward(const Vector& input) const
{
    require(static_cast<std::size_t>(input.size()) == input_dim(),
            "DenseNet::forward: input has dimension " + std::to_string(input.size()) + ", expected " +
                std::to_string(input_dim()));
    Matrix out = forward_batch(input);
    return out.col(0);
}

Matrix DenseNet::forward_batch(const Matrix& inputs) const
{
    require(!layers_.empty(), "DenseNet::forward: empty network");
    require(static_cast<std::size_t>(inputs.rows()) == input_dim(),
            "DenseNet::forward: input has dimension " + std::to_string(inputs.rows()) + ", expected " +
                std::to_string(input_dim()));
    Matrix a = inputs;
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        Matrix z = weight(k) * a;
        z.colwise() += bias(k);
        a = layers_[k].activation == Activation::linear ? std::move(z) : activate(layers_[k].activation, z);
    }
    return a;
}

bool DenseNet::all_finite() const
{
    for (double p : params_)
        if (!std::isfinite(p))
            return false;
    return true;
}

} // namespace feef::math
