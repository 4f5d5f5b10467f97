#ifndef FEEF_MATH_NLL_LOSS_HPP
#define FEEF_MATH_NLL_LOSS_HPP

#include <vector>

#include "feef/math/dense_net.hpp"

namespace feef::math {

/// Floor applied after the softplus on a network's raw variance output.
inline constexpr double kHeadVarianceFloor = 1e-6;

enum class NllHead {
    /// Output is [mean; raw variance]; variance = max(softplus(raw), kHeadVarianceFloor).
    gaussian,
    /// Output is the mean; variance fixed at 1.
    fixed_unit_variance,
};

struct LossAndGrads {
    double loss = 0.0;
    AlignedBuffer grads; ///< same layout as DenseNet::params()
};

/// Splits a gaussian-head output column into mean and floored variance.
void split_gaussian_head(const Vector& raw, Vector& mean, Vector& variance);

/**
 * Mean over samples of the per-sample Gaussian negative log-likelihood
 * (summed over target dimensions) and its exact gradient.
 *
 * `inputs` is input_dim x N, `targets` is target_dim x N. For the gaussian head
 * the network output dimension must be 2 * target_dim.
 *
 * Throws ContractViolation on shape errors or an empty batch and
 * std::runtime_error naming the first sample whose loss is not finite.
 */
LossAndGrads nll_loss_and_grads(const DenseNet& net, const Matrix& inputs, const Matrix& targets,
                                NllHead head);

/// Loss only; same conventions as nll_loss_and_grads.
double nll_loss(const DenseNet& net, const Matrix& inputs, const Matrix& targets, NllHead head);

} // namespace feef::math

#endif
