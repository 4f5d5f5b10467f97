#include "feef/objective/rollout.hpp"

#include <cmath>
#include <string>

namespace feef::objective {

math::DiagonalGaussian BeliefRollout::next_state(std::size_t step, std::size_t member) const
{
    require(step < valid_steps && member < members, "BeliefRollout::next_state: index out of range");
    const auto b = static_cast<Eigen::Index>(member);
    return math::DiagonalGaussian(next_mean[step].col(b), next_variance[step].col(b));
}

math::DiagonalGaussian BeliefRollout::reward(std::size_t step, std::size_t member) const
{
    require(step < valid_steps && member < members, "BeliefRollout::reward: index out of range");
    return math::DiagonalGaussian(Vector::Constant(1, reward_mean(static_cast<Eigen::Index>(member),
                                                                  static_cast<Eigen::Index>(step))),
                                  Vector::Ones(1));
}

std::vector<math::DiagonalGaussian> BeliefRollout::next_states(std::size_t step) const
{
    std::vector<math::DiagonalGaussian> out;
    out.reserve(members);
    for (std::size_t b = 0; b < members; ++b)
        out.push_back(next_state(step, b));
    return out;
}

std::vector<math::DiagonalGaussian> BeliefRollout::rewards(std::size_t step) const
{
    std::vector<math::DiagonalGaussian> out;
    out.reserve(members);
    for (std::size_t b = 0; b < members; ++b)
        out.push_back(reward(step, b));
    return out;
}

std::vector<BeliefRollout> rollout_batch(const model::DynamicsModel& model, const Matrix& start_particles,
                                         std::span<const Matrix> policies, std::span<RandomStream*> noise,
                                         Propagation mode)
{
    const std::size_t members = model.ensemble_size();
    const auto ds = static_cast<Eigen::Index>(model.state_dim());
    const auto da = static_cast<Eigen::Index>(model.action_dim());
    const auto count = static_cast<Eigen::Index>(policies.size());
    require(start_particles.rows() == ds && static_cast<std::size_t>(start_particles.cols()) == members,
            "rollout: start particles must be d_s x B");
    require(start_particles.allFinite(), "rollout: non-finite start state");
    require(mode == Propagation::mean || noise.size() == policies.size(), "rollout: one noise stream per candidate");
    if (policies.empty())
        return {};
    const auto horizon = static_cast<std::size_t>(policies.front().rows());
    for (const auto& p : policies)
        require(static_cast<std::size_t>(p.rows()) == horizon && p.cols() == da,
                "rollout: every policy must be H x d_a with H=" + std::to_string(horizon));

    std::vector<BeliefRollout> out(policies.size());
    const Vector scale = model.state_scale();
    for (auto& r : out) {
        r.horizon = horizon;
        r.members = members;
        r.state_dim = static_cast<std::size_t>(ds);
        r.particles.assign(horizon + 1, Matrix(ds, static_cast<Eigen::Index>(members)));
        r.particles[0] = start_particles;
        r.next_mean.assign(horizon, Matrix(ds, static_cast<Eigen::Index>(members)));
        r.next_variance.assign(horizon, Matrix(ds, static_cast<Eigen::Index>(members)));
        r.reward_mean.resize(static_cast<Eigen::Index>(members), static_cast<Eigen::Index>(horizon));
        r.state_scale = scale;
        r.valid_steps = horizon;
    }

    // Column j of current[b] is candidate j's particle for member b.
    std::vector<Matrix> current(members);
    for (std::size_t b = 0; b < members; ++b)
        current[b] = start_particles.col(static_cast<Eigen::Index>(b)).replicate(1, count);

    Matrix actions(da, count);
    Matrix mean, var;
    Matrix landed(ds, count * static_cast<Eigen::Index>(members));
    for (std::size_t t = 0; t < horizon; ++t) {
        for (Eigen::Index j = 0; j < count; ++j)
            actions.col(j) = policies[static_cast<std::size_t>(j)].row(static_cast<Eigen::Index>(t)).transpose();

        for (std::size_t b = 0; b < members; ++b) {
            const auto bi = static_cast<Eigen::Index>(b);
            model.predict_transition_batch(b, current[b], actions, mean, var);
            for (Eigen::Index j = 0; j < count; ++j) {
                auto& r = out[static_cast<std::size_t>(j)];
                r.next_mean[t].col(bi) = mean.col(j);
                r.next_variance[t].col(bi) = var.col(j);
            }
        }
        // Draw in (step, member, dimension) order per candidate.
        for (Eigen::Index j = 0; j < count; ++j) {
            auto& r = out[static_cast<std::size_t>(j)];
            for (std::size_t b = 0; b < members; ++b) {
                const auto bi = static_cast<Eigen::Index>(b);
                auto p = r.particles[t + 1].col(bi);
                if (mode == Propagation::mean) {
                    p = r.next_mean[t].col(bi);
                } else {
                    auto& stream = *noise[static_cast<std::size_t>(j)];
                    for (Eigen::Index d = 0; d < ds; ++d)
                        p(d) = r.next_mean[t](d, bi) + std::sqrt(r.next_variance[t](d, bi)) * stream.gaussian();
                }
                current[b].col(j) = p;
                landed.col(bi * count + j) = p;
            }
        }

        const Vector rewards = model.predict_reward_batch(landed);
        for (Eigen::Index j = 0; j < count; ++j) {
            auto& r = out[static_cast<std::size_t>(j)];
            for (std::size_t b = 0; b < members; ++b) {
                const auto bi = static_cast<Eigen::Index>(b);
                r.reward_mean(bi, static_cast<Eigen::Index>(t)) = rewards(bi * count + j);
            }
            if (!r.flagged && (!r.particles[t + 1].allFinite() || !r.next_variance[t].allFinite() ||
                               !r.reward_mean.col(static_cast<Eigen::Index>(t)).allFinite())) {
                r.flagged = true;
                r.valid_steps = t;
            }
        }
    }
    return out;
}

BeliefRollout rollout(const model::DynamicsModel& model, const Matrix& start_particles, const Matrix& policy,
                      RandomStream& noise, Propagation mode)
{
    RandomStream* stream = &noise;
    auto out = rollout_batch(model, start_particles, std::span<const Matrix>(&policy, 1),
                             std::span<RandomStream*>(&stream, 1), mode);
    return std::move(out.front());
}

BeliefRollout rollout(const model::DynamicsModel& model, const Vector& start_state, const Matrix& policy,
                      RandomStream& noise, Propagation mode)
{
    require(static_cast<std::size_t>(start_state.size()) == model.state_dim(), "rollout: start state dimension");
    const Matrix start = start_state.replicate(1, static_cast<Eigen::Index>(model.ensemble_size()));
    return rollout(model, start, policy, noise, mode);
}

} // namespace feef::objective
