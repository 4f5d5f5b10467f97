#ifndef FEEF_OBJECTIVE_ROLLOUT_HPP
#define FEEF_OBJECTIVE_ROLLOUT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "feef/math/gaussian.hpp"
#include "feef/model/world_model.hpp"

namespace feef::objective {

enum class Propagation {
    /// Each member's particle is resampled from that member's next-state Gaussian.
    sample,
    /// Particles follow the predicted means; no randomness is drawn.
    mean,
};

/**
 * Belief over a planning horizon under trajectory sampling: one particle per
 * ensemble member, each propagated only through its own member.
 *
 * Column b of every matrix belongs to member b. particles[0] is the start and
 * particles[t+1] is drawn from next_mean[t] / next_variance[t].
 */
struct BeliefRollout {
    std::size_t horizon = 0;
    std::size_t members = 0;
    std::size_t state_dim = 0;

    std::vector<Matrix> particles;     ///< horizon + 1 entries, d_s x B
    std::vector<Matrix> next_mean;     ///< horizon entries, d_s x B
    std::vector<Matrix> next_variance; ///< horizon entries, d_s x B
    Matrix reward_mean;                ///< B x horizon; reward variance is 1
    Vector state_scale;                ///< per-dimension scale for entropy estimation

    /// True when a particle became non-finite; only the first `valid_steps` steps are populated.
    bool flagged = false;
    std::size_t valid_steps = 0;

    math::DiagonalGaussian next_state(std::size_t step, std::size_t member) const;
    math::DiagonalGaussian reward(std::size_t step, std::size_t member) const;
    std::vector<math::DiagonalGaussian> next_states(std::size_t step) const;
    std::vector<math::DiagonalGaussian> rewards(std::size_t step) const;

    friend bool operator==(const BeliefRollout&, const BeliefRollout&) = default;
};

/// Per-candidate random streams: particle noise and mixture-entropy samples are drawn separately
/// so that scoring a horizon in pieces consumes the same numbers as scoring it whole.
struct CandidateStreams {
    RandomStream particles;
    RandomStream mixture;

    explicit CandidateStreams(Rng& parent) : particles(fork_seed(parent)), mixture(fork_seed(parent)) {}
};

/// Rollout from per-member start particles (d_s x B). `policy` is H x d_a.
BeliefRollout rollout(const model::DynamicsModel& model, const Matrix& start_particles, const Matrix& policy,
                      RandomStream& noise, Propagation mode = Propagation::sample);

/// Rollout where every member starts at `start_state`.
BeliefRollout rollout(const model::DynamicsModel& model, const Vector& start_state, const Matrix& policy,
                      RandomStream& noise, Propagation mode = Propagation::sample);

/**
 * Rolls out many candidates at once, batching network evaluations across
 * candidates. Candidate j draws particle noise only from `*noise[j]`, so the
 * result for j equals rollout(model, start, policies[j], *noise[j], mode).
 */
std::vector<BeliefRollout> rollout_batch(const model::DynamicsModel& model, const Matrix& start_particles,
                                         std::span<const Matrix> policies, std::span<RandomStream*> noise,
                                         Propagation mode = Propagation::sample);

} // namespace feef::objective

#endif
