#include "feef/math/nll_loss.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace feef::math {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void check_shapes(const DenseNet& net, const Matrix& inputs, const Matrix& targets, NllHead head)
{
    require(inputs.cols() > 0, "nll_loss: empty batch");
    require(inputs.cols() == targets.cols(), "nll_loss: input and target sample counts differ");
    require(static_cast<std::size_t>(inputs.rows()) == net.input_dim(), "nll_loss: input dimension mismatch");
    const std::size_t expected_out =
        head == NllHead::gaussian ? 2 * static_cast<std::size_t>(targets.rows()) : static_cast<std::size_t>(targets.rows());
    require(net.output_dim() == expected_out, "nll_loss: network output dimension does not match the head");
}

// Per-sample losses and dL_i/d(output) for each sample (unscaled by 1/N).
void head_loss(const Matrix& out, const Matrix& targets, NllHead head, Vector& per_sample, Matrix* d_out)
{
    const Eigen::Index n = targets.cols();
    const Eigen::Index d = targets.rows();
    per_sample.setZero(n);
    if (d_out)
        d_out->setZero(out.rows(), n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double loss = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double mu = out(j, i);
            const double err = mu - targets(j, i);
            if (head == NllHead::fixed_unit_variance) {
                loss += kHalfLog2Pi + 0.5 * err * err;
                if (d_out)
                    (*d_out)(j, i) = err;
                continue;
            }
            const double raw = out(d + j, i);
            const double sp = softplus(raw);
            const bool floored = sp < kHeadVarianceFloor;
            const double var = floored ? kHeadVarianceFloor : sp;
            loss += kHalfLog2Pi + 0.5 * std::log(var) + 0.5 * err * err / var;
            if (d_out) {
                (*d_out)(j, i) = err / var;
                const double dvar = 0.5 / var - 0.5 * err * err / (var * var);
                (*d_out)(d + j, i) = floored ? 0.0 : dvar * sigmoid(raw);
            }
        }
        per_sample(i) = loss;
    }
}

double finalize(const Vector& per_sample)
{
    for (Eigen::Index i = 0; i < per_sample.size(); ++i)
        if (!std::isfinite(per_sample(i)))
            throw std::runtime_error("nll_loss: non-finite loss at sample " + std::to_string(i));
    return per_sample.mean();
}

} // namespace

void split_gaussian_head(const Vector& raw, Vector& mean, Vector& variance)
{
    require(raw.size() % 2 == 0, "split_gaussian_head: odd output dimension");
    const Eigen::Index d = raw.size() / 2;
    mean = raw.head(d);
    variance.resize(d);
    for (Eigen::Index j = 0; j < d; ++j)
        variance(j) = std::max(softplus(raw(d + j)), kHeadVarianceFloor);
}

double nll_loss(const DenseNet& net, const Matrix& inputs, const Matrix& targets, NllHead head)
{
    check_shapes(net, inputs, targets, head);
    Vector per_sample;
    head_loss(net.forward_batch(inputs), targets, head, per_sample, nullptr);
    return finalize(per_sample);
}

LossAndGrads nll_loss_and_grads(const DenseNet& net, const Matrix& inputs, const Matrix& targets, NllHead head)
{
    check_shapes(net, inputs, targets, head);
    const std::size_t layers = net.num_layers();

    // Forward pass keeping pre-activations z_k and activations a_k (a_0 = input).
    std::vector<Matrix> pre(layers);
    std::vector<Matrix> act(layers + 1);
    act[0] = inputs;
    for (std::size_t k = 0; k < layers; ++k) {
        pre[k] = net.weight(k) * act[k];
        pre[k].colwise() += net.bias(k);
        act[k + 1] = activate(net.layer(k).activation, pre[k]);
    }

    Vector per_sample;
    Matrix delta;
    head_loss(act[layers], targets, head, per_sample, &delta);

    LossAndGrads result;
    result.loss = finalize(per_sample);
    result.grads.assign(net.num_params(), 0.0);

    delta /= static_cast<double>(inputs.cols());
    for (std::size_t k = layers; k-- > 0;) {
        const Activation a = net.layer(k).activation;
        if (a != Activation::linear)
            delta.array() *= activate_derivative(a, pre[k]).array();
        const auto& shape = net.layer(k);
        Eigen::Map<Matrix> gw(result.grads.data() + net.offset(k), static_cast<Eigen::Index>(shape.out),
                              static_cast<Eigen::Index>(shape.in));
        Eigen::Map<Vector> gb(result.grads.data() + net.offset(k) + shape.out * shape.in,
                              static_cast<Eigen::Index>(shape.out));
        gw.noalias() = delta * act[k].transpose();
        gb = delta.rowwise().sum();
        if (k > 0)
            delta = net.weight(k).transpose() * delta;
    }
    return result;
}

} // namespace feef::math
