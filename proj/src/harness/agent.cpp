#include "feef/harness/agent.hpp"

#include <chrono>
#include <cmath>

namespace feef::harness {

double baseline_score(AgentKind kind, const objective::BeliefRollout& rollout, const objective::PreferredPrior& prior,
                      const objective::ScoreOptions& options, RandomStream& mixture)
{
    objective::ScoreOptions opts = options;
    switch (kind) {
    case AgentKind::feef:
        opts.include_info_gain = true;
        return objective::score_rollout(rollout, prior, opts, mixture).total;
    case AgentKind::reward_only:
        opts.include_info_gain = false;
        return objective::score_rollout(rollout, prior, opts, mixture).total;
    case AgentKind::variance: {
        opts.include_info_gain = false;
        const double base = objective::score_rollout(rollout, prior, opts, mixture).total;
        return std::isfinite(base) ? base + objective::summed_predictive_variance(rollout) : base;
    }
    case AgentKind::random:
        break;
    }
    throw ContractViolation("baseline_score: the random agent does not score rollouts");
}

planner::ScoreFn make_score_fn(AgentKind kind, const model::DynamicsModel& model, const Vector& start_state,
                               const objective::PreferredPrior& prior, std::size_t mixture_samples,
                               objective::Propagation mode, bool shared_noise)
{
    require(kind != AgentKind::random, "make_score_fn: the random agent does not plan");
    const Matrix start = start_state.replicate(1, static_cast<Eigen::Index>(model.ensemble_size()));
    objective::ScoreOptions options;
    options.samples_per_member = mixture_samples;
    return [kind, &model, start, prior, options, mode, shared_noise](std::span<const Matrix> candidates, Rng& rng) {
        std::vector<objective::CandidateStreams> streams;
        streams.reserve(candidates.size());
        if (shared_noise)
            streams.assign(candidates.size(), objective::CandidateStreams(rng));
        else
            for (std::size_t j = 0; j < candidates.size(); ++j)
                streams.emplace_back(rng);
        std::vector<RandomStream*> particle_noise(candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j)
            particle_noise[j] = &streams[j].particles;
        const auto rollouts = objective::rollout_batch(model, start, candidates, particle_noise, mode);
        std::vector<double> scores(candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j)
            scores[j] = baseline_score(kind, rollouts[j], prior, options, streams[j].mixture);
        return scores;
    };
}

EpisodeResult run_episode(AgentKind kind, const envs::Environment& env, const model::DynamicsModel* model,
                          const ExperimentConfig& config, Rng& rng)
{
    require(kind == AgentKind::random || model != nullptr, "run_episode: a planning agent needs a model");
    const auto& spec = env.spec();
    const std::size_t limit = config.max_steps ? std::min(config.max_steps, spec.max_steps) : spec.max_steps;
    const planner::ActionBounds bounds(spec.action_low, spec.action_high);
    const objective::PreferredPrior prior{spec.r_max, 1.0};
    objective::ScoreOptions diag_options;
    diag_options.samples_per_member = config.mixture_samples;

    const auto started = std::chrono::steady_clock::now();
    EpisodeResult out;
    Vector state = env.reset(fork_seed(rng));
    out.visited.push_back(state);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double ext_sum = 0.0;
    double info_sum = 0.0;
    for (std::size_t t = 0; t < limit; ++t) {
        Vector action(static_cast<Eigen::Index>(spec.action_dim));
        if (kind == AgentKind::random) {
            for (Eigen::Index k = 0; k < action.size(); ++k)
                action(k) = spec.action_low(k) + (spec.action_high(k) - spec.action_low(k)) * unit(rng);
        } else {
            const auto score = make_score_fn(kind, *model, state, prior, config.mixture_samples,
                                             config.propagation, config.shared_noise);
            const auto planned = planner::plan(score, bounds, config.planner, rng);
            out.record.degraded = out.record.degraded || planned.diagnostics.degraded;
            action = planner::act(planned.distribution);

            objective::CandidateStreams streams(rng);
            const auto diag = objective::evaluate_candidate(*model, state, planned.distribution.mean, prior, streams,
                                                            diag_options, config.propagation);
            if (std::isfinite(diag.extrinsic_kl)) {
                ext_sum += diag.extrinsic_kl;
                info_sum += diag.info_gain;
            }
        }

        const auto step = env.step(state, action);
        out.transitions.push_back({state, action, step.next_state, step.reward});
        out.rewards.push_back(step.reward);
        out.visited.push_back(step.next_state);
        out.record.total_return += step.reward;
        ++out.record.steps;
        state = step.next_state;
        if (step.done)
            break;
    }
    if (out.record.steps > 0) {
        out.record.extrinsic_mean = ext_sum / static_cast<double>(out.record.steps);
        out.record.info_gain_mean = info_sum / static_cast<double>(out.record.steps);
    }
    if (config.timing)
        out.record.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return out;
}

} // namespace feef::harness
