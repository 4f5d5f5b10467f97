#ifndef FEEF_HARNESS_AGENT_HPP
#define FEEF_HARNESS_AGENT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "feef/envs/environment.hpp"
#include "feef/harness/config.hpp"
#include "feef/model/replay_buffer.hpp"
#include "feef/objective/feef_score.hpp"
#include "feef/planner/cem.hpp"

namespace feef::harness {

/**
 * Planning score of one rollout for a given agent:
 *   feef         info_gain - extrinsic
 *   reward_only  -extrinsic
 *   variance     -extrinsic + summed predicted next-state variance
 * The random agent has no score; asking for one throws ContractViolation.
 */
double baseline_score(AgentKind kind, const objective::BeliefRollout& rollout, const objective::PreferredPrior& prior,
                      const objective::ScoreOptions& options, RandomStream& mixture);

/**
 * Batch scorer for the planner. With `shared_noise` one CandidateStreams is
 * forked from the planner's generator per call and copied to every candidate;
 * otherwise each candidate forks its own, in order.
 */
planner::ScoreFn make_score_fn(AgentKind kind, const model::DynamicsModel& model, const Vector& start_state,
                               const objective::PreferredPrior& prior, std::size_t mixture_samples,
                               objective::Propagation mode, bool shared_noise = false);

struct EpisodeRecord {
    std::uint64_t seed = 0;
    std::size_t episode = 0;
    double total_return = 0.0;
    std::size_t steps = 0;
    /// Filled in by the experiment loop (cumulative per seed).
    double coverage = 0.0;
    /// Means over executed steps of the extrinsic term and information gain of the plan's mean sequence.
    double extrinsic_mean = 0.0;
    double info_gain_mean = 0.0;
    double wall_ms = 0.0;
    bool degraded = false;
};

struct EpisodeResult {
    EpisodeRecord record;
    std::vector<model::Transition> transitions;
    /// Start state followed by every landed state.
    std::vector<Vector> visited;
    std::vector<double> rewards;
};

/**
 * One episode: reset with a seed drawn from `rng`, then plan, act and step
 * until done or the step limit. `model` may be null only for the random agent,
 * which draws uniform actions from `rng`.
 */
EpisodeResult run_episode(AgentKind kind, const envs::Environment& env, const model::DynamicsModel* model,
                          const ExperimentConfig& config, Rng& rng);

} // namespace feef::harness

#endif
