#ifndef FEEF_OBJECTIVE_FEEF_SCORE_HPP
#define FEEF_OBJECTIVE_FEEF_SCORE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "feef/objective/rollout.hpp"

namespace feef::objective {

/// Preferred reward distribution: N(r_max, 1).
struct PreferredPrior {
    double mean = 0.0;
    double variance = 1.0;

    math::DiagonalGaussian gaussian() const;
};

/**
 * Score of one candidate, summed over the horizon. Higher is better.
 * total == info_gain - extrinsic_kl; a flagged rollout has total = -inf.
 */
struct FeefScore {
    double extrinsic_kl = 0.0;
    double info_gain = 0.0;
    double total = 0.0;

    friend bool operator==(const FeefScore&, const FeefScore&) = default;
};

/// Ensemble average of KL(N(r_b, 1) || prior). Requires at least one member.
double extrinsic_step(std::span<const math::DiagonalGaussian> reward_gaussians, const PreferredPrior& prior);

/**
 * Parameter information gain of one step: entropy of the equal-weight mixture
 * of member Gaussians (nearest-neighbour estimate over `samples_per_member`
 * draws per member) minus the mean analytic member entropy.
 *
 * If `scale` is non-empty every dimension is divided by it first. The
 * difference of entropies is invariant to that rescaling; the estimator's
 * neighbour search is better conditioned on standardised coordinates.
 *
 * Requires B >= 2.
 */
double info_gain_step(std::span<const math::DiagonalGaussian> next_state_gaussians, std::size_t samples_per_member,
                      RandomStream& noise, const Vector& scale = Vector());

struct ScoreOptions {
    std::size_t samples_per_member = 10;
    /// When false the information gain is skipped and total = -extrinsic_kl.
    bool include_info_gain = true;
};

/// Sums the per-step terms of a rollout. Draws mixture samples from `noise` in step order.
FeefScore score_rollout(const BeliefRollout& rollout, const PreferredPrior& prior, const ScoreOptions& options,
                        RandomStream& noise);

/// Sum over steps, members and dimensions of the predicted next-state variance.
double summed_predictive_variance(const BeliefRollout& rollout);

/// Rollout from `start_state` followed by score_rollout, using the two candidate streams.
FeefScore evaluate_candidate(const model::DynamicsModel& model, const Vector& start_state, const Matrix& policy,
                             const PreferredPrior& prior, CandidateStreams& streams, const ScoreOptions& options = {},
                             Propagation mode = Propagation::sample);

} // namespace feef::objective

#endif
