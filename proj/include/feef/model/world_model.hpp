#ifndef FEEF_MODEL_WORLD_MODEL_HPP
#define FEEF_MODEL_WORLD_MODEL_HPP

#include <cstddef>
#include <vector>

#include "feef/math/dense_net.hpp"
#include "feef/math/gaussian.hpp"
#include "feef/model/normalizer.hpp"
#include "feef/model/replay_buffer.hpp"

namespace feef::model {

/**
 * What the planner needs from a generative model: per-member next-state
 * Gaussians and a unit-variance reward prediction. Batched over columns.
 *
 * Implementations must be safe for concurrent const use.
 */
class DynamicsModel {
public:
    virtual ~DynamicsModel() = default;

    virtual std::size_t ensemble_size() const = 0;
    virtual std::size_t state_dim() const = 0;
    virtual std::size_t action_dim() const = 0;

    /// states: d_s x N, actions: d_a x N. Writes d_s x N means and variances (environment units).
    virtual void predict_transition_batch(std::size_t member, const Matrix& states, const Matrix& actions,
                                          Matrix& mean, Matrix& variance) const = 0;

    /// Reward means for each state column. The reward variance is 1 by construction.
    virtual Vector predict_reward_batch(const Matrix& states) const = 0;

    /// Per-dimension state scale used to standardise entropy estimates.
    virtual Vector state_scale() const { return Vector::Ones(static_cast<Eigen::Index>(state_dim())); }
};

struct TransitionEnsemble {
    std::vector<math::DenseNet> members; ///< each maps (d_s + d_a) -> 2 d_s

    std::size_t size() const { return members.size(); }
    friend bool operator==(const TransitionEnsemble&, const TransitionEnsemble&) = default;
};

struct RewardModel {
    math::DenseNet net; ///< maps d_s -> 1

    friend bool operator==(const RewardModel&, const RewardModel&) = default;
};

/// Learned ensemble + reward model, with predictions returned in environment units.
class WorldModel : public DynamicsModel {
public:
    WorldModel() = default;
    WorldModel(TransitionEnsemble ensemble, RewardModel reward, Normalizer normalizer);

    std::size_t ensemble_size() const override { return ensemble_.size(); }
    std::size_t state_dim() const override { return normalizer_.state_dim(); }
    std::size_t action_dim() const override { return normalizer_.action_dim(); }

    void predict_transition_batch(std::size_t member, const Matrix& states, const Matrix& actions, Matrix& mean,
                                  Matrix& variance) const override;
    Vector predict_reward_batch(const Matrix& states) const override;
    Vector state_scale() const override;

    const TransitionEnsemble& ensemble() const { return ensemble_; }
    const RewardModel& reward_model() const { return reward_; }
    const Normalizer& normalizer() const { return normalizer_; }

    friend bool operator==(const WorldModel& a, const WorldModel& b)
    {
        return a.ensemble_ == b.ensemble_ && a.reward_ == b.reward_ && a.normalizer_ == b.normalizer_;
    }

private:
    TransitionEnsemble ensemble_;
    RewardModel reward_;
    Normalizer normalizer_;
};

/// Single-sample next-state prediction for one member. Throws ContractViolation on a bad index.
math::DiagonalGaussian predict_transition(const DynamicsModel& model, std::size_t member, const Vector& state,
                                          const Vector& action);

/// Single-sample reward prediction: N(f(state), 1).
math::DiagonalGaussian predict_reward(const DynamicsModel& model, const Vector& state);

struct ModelConfig {
    std::size_t ensemble_size = 5;
    std::vector<std::size_t> transition_hidden = {64, 64};
    std::vector<std::size_t> reward_hidden = {64, 64};
    std::size_t epochs = 100;
    double learning_rate = 1e-3;
    std::size_t batch_size = 64;

    void validate() const;
};

struct TrainReport {
    std::vector<double> member_initial_loss; ///< NLL on the member's resample before training
    std::vector<double> member_final_loss;   ///< NLL on the member's resample after training
    double reward_initial_loss = 0.0;
    double reward_final_loss = 0.0;
    std::vector<std::vector<std::size_t>> bootstrap_indices; ///< per member
};

struct TrainedWorldModel {
    WorldModel model;
    TrainReport report;
};

/// Indices of a size-n resample with replacement.
std::vector<std::size_t> bootstrap_resample(std::size_t n, Rng& rng);

/**
 * Cold-start training on the whole buffer: refits the normaliser, freshly
 * initialises every network, trains each ensemble member on its own bootstrap
 * resample and the reward model on the full buffer, all for `epochs` full
 * passes of shuffled mini-batches with Adam.
 *
 * Member b draws one seed from `rng` in index order; the reward model draws
 * the next one. Everything downstream is a function of those seeds.
 */
TrainedWorldModel train_world_model(const ReplayBuffer& buffer, const ModelConfig& config, Rng& rng);

} // namespace feef::model

#endif
