#include "feef/model/world_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "feef/math/adam.hpp"
#include "feef/math/nll_loss.hpp"

namespace feef::model {

using math::DenseNet;
using math::DiagonalGaussian;

WorldModel::WorldModel(TransitionEnsemble ensemble, RewardModel reward, Normalizer normalizer)
    : ensemble_(std::move(ensemble)), reward_(std::move(reward)), normalizer_(std::move(normalizer))
{
    const std::size_t ds = normalizer_.state_dim();
    const std::size_t da = normalizer_.action_dim();
    require(!ensemble_.members.empty(), "WorldModel: empty ensemble");
    for (const auto& m : ensemble_.members) {
        require(m.layers() == ensemble_.members.front().layers(), "WorldModel: ensemble members differ in architecture");
        require(m.input_dim() == ds + da && m.output_dim() == 2 * ds, "WorldModel: transition net shape mismatch");
    }
    require(reward_.net.input_dim() == ds && reward_.net.output_dim() == 1, "WorldModel: reward net shape mismatch");
}

void WorldModel::predict_transition_batch(std::size_t member, const Matrix& states, const Matrix& actions,
                                          Matrix& mean, Matrix& variance) const
{
    require(member < ensemble_.size(),
            "predict_transition: member " + std::to_string(member) + " out of range for ensemble of " +
                std::to_string(ensemble_.size()));
    const Matrix out = ensemble_.members[member].forward_batch(normalizer_.transition_inputs(states, actions));
    const Eigen::Index ds = states.rows();
    const auto& scale = normalizer_.delta_scale;

    mean = states + (out.topRows(ds).array().colwise() * scale.array()).matrix();
    const Eigen::ArrayXXd raw = out.bottomRows(ds).array();
    // softplus(raw), written to stay finite for large |raw|
    const Eigen::ArrayXXd sp = raw.max(0.0) + (-raw.abs()).exp().log1p();
    variance = (sp.max(math::kHeadVarianceFloor).colwise() * scale.array().square()).matrix();
    variance = variance.cwiseMax(math::kMinVariance);
}

Vector WorldModel::predict_reward_batch(const Matrix& states) const
{
    return reward_.net.forward_batch(normalizer_.reward_inputs(states)).row(0).transpose();
}

Vector WorldModel::state_scale() const
{
    return normalizer_.input_std.head(static_cast<Eigen::Index>(state_dim()));
}

DiagonalGaussian predict_transition(const DynamicsModel& model, std::size_t member, const Vector& state,
                                    const Vector& action)
{
    require(member < model.ensemble_size(), "predict_transition: member index out of range");
    require(static_cast<std::size_t>(state.size()) == model.state_dim() &&
                static_cast<std::size_t>(action.size()) == model.action_dim(),
            "predict_transition: state/action dimension mismatch");
    Matrix mean, var;
    model.predict_transition_batch(member, state, action, mean, var);
    return DiagonalGaussian(mean.col(0), var.col(0));
}

DiagonalGaussian predict_reward(const DynamicsModel& model, const Vector& state)
{
    require(static_cast<std::size_t>(state.size()) == model.state_dim(), "predict_reward: state dimension mismatch");
    const Vector mean = model.predict_reward_batch(state);
    return DiagonalGaussian(mean, Vector::Ones(1));
}

void ModelConfig::validate() const
{
    require(ensemble_size >= 1, "ModelConfig: ensemble_size must be positive");
    require(learning_rate > 0.0, "ModelConfig: learning_rate must be positive");
    require(batch_size >= 1, "ModelConfig: batch_size must be positive");
    for (auto h : transition_hidden)
        require(h > 0, "ModelConfig: hidden sizes must be positive");
    for (auto h : reward_hidden)
        require(h > 0, "ModelConfig: hidden sizes must be positive");
}

std::vector<std::size_t> bootstrap_resample(std::size_t n, Rng& rng)
{
    require(n > 0, "bootstrap_resample: empty population");
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> idx(n);
    for (auto& i : idx)
        i = pick(rng);
    return idx;
}

namespace {

struct FitResult {
    double initial_loss = 0.0;
    double final_loss = 0.0;
};

Matrix gather(const Matrix& m, std::span<const std::size_t> cols)
{
    Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(cols[i]));
    return out;
}

// Full-pass mini-batch Adam; the last batch of an epoch may be short.
FitResult fit(DenseNet& net, const Matrix& inputs, const Matrix& targets, math::NllHead head,
              const ModelConfig& config, Rng& rng)
{
    FitResult result;
    result.initial_loss = math::nll_loss(net, inputs, targets, head);

    const std::size_t n = static_cast<std::size_t>(inputs.cols());
    const std::size_t batch = std::min(config.batch_size, n);
    math::AdamState adam(net.num_params(), config.learning_rate);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::span<const std::size_t> cols(order.data() + start, std::min(batch, n - start));
            const auto lg = math::nll_loss_and_grads(net, gather(inputs, cols), gather(targets, cols), head);
            math::adam_step(net.params(), lg.grads, adam);
        }
    }
    result.final_loss = math::nll_loss(net, inputs, targets, head);
    return result;
}

} // namespace

TrainedWorldModel train_world_model(const ReplayBuffer& buffer, const ModelConfig& config, Rng& rng)
{
    require(!buffer.empty(), "train_world_model: empty buffer");
    config.validate();

    const std::size_t ds = buffer.state_dim();
    const std::size_t da = buffer.action_dim();
    const auto n = static_cast<Eigen::Index>(buffer.size());
    Normalizer norm = Normalizer::fit(buffer);

    Matrix states(ds, n), actions(da, n), next(ds, n), rewards(1, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& t = buffer[static_cast<std::size_t>(i)];
        states.col(i) = t.state;
        actions.col(i) = t.action;
        next.col(i) = t.next_state;
        rewards(0, i) = t.reward;
    }
    const Matrix inputs = norm.transition_inputs(states, actions);
    const Matrix delta_targets = ((next - states).array().colwise() / norm.delta_scale.array()).matrix();

    TrainReport report;
    TransitionEnsemble ensemble;
    for (std::size_t b = 0; b < config.ensemble_size; ++b) {
        Rng member_rng(fork_seed(rng));
        DenseNet net = DenseNet::mlp(ds + da, config.transition_hidden, 2 * ds, math::Activation::swish);
        net.init_uniform(member_rng);
        auto idx = bootstrap_resample(buffer.size(), member_rng);
        const auto fr = fit(net, gather(inputs, idx), gather(delta_targets, idx), math::NllHead::gaussian, config,
                            member_rng);
        report.member_initial_loss.push_back(fr.initial_loss);
        report.member_final_loss.push_back(fr.final_loss);
        report.bootstrap_indices.push_back(std::move(idx));
        ensemble.members.push_back(std::move(net));
    }

    Rng reward_rng(fork_seed(rng));
    RewardModel reward{DenseNet::mlp(ds, config.reward_hidden, 1, math::Activation::relu)};
    reward.net.init_uniform(reward_rng);
    const auto rr = fit(reward.net, norm.reward_inputs(next), rewards, math::NllHead::fixed_unit_variance, config,
                        reward_rng);
    report.reward_initial_loss = rr.initial_loss;
    report.reward_final_loss = rr.final_loss;

    return {WorldModel(std::move(ensemble), std::move(reward), std::move(norm)), std::move(report)};
}

} // namespace feef::model
