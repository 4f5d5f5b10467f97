#include "feef/objective/feef_score.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "feef/math/knn_entropy.hpp"

namespace feef::objective {

math::DiagonalGaussian PreferredPrior::gaussian() const
{
    return math::DiagonalGaussian(Vector::Constant(1, mean), Vector::Constant(1, variance));
}

double extrinsic_step(std::span<const math::DiagonalGaussian> reward_gaussians, const PreferredPrior& prior)
{
    require(!reward_gaussians.empty(), "extrinsic_step: no members");
    const auto target = prior.gaussian();
    double sum = 0.0;
    for (const auto& r : reward_gaussians)
        sum += math::gaussian_kl(r, target);
    return sum / static_cast<double>(reward_gaussians.size());
}

namespace {

// Member moments are columns of `mean` / `variance` (d x B). Samples are drawn
// member by member, sample by sample, dimension by dimension.
double info_gain_from_moments(const Matrix& mean, const Matrix& variance, std::size_t samples_per_member,
                              RandomStream& noise, const Vector& scale, Matrix& pooled)
{
    const Eigen::Index d = mean.rows();
    const Eigen::Index members = mean.cols();
    const auto m = static_cast<Eigen::Index>(samples_per_member);
    pooled.resize(d, members * m);
    double log_var_sum = 0.0;
    Eigen::Index col = 0;
    for (Eigen::Index b = 0; b < members; ++b) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double s = scale.size() ? scale(r) : 1.0;
            const double v = std::max(variance(r, b) / (s * s), math::kMinVariance);
            log_var_sum += std::log(v);
        }
        for (Eigen::Index k = 0; k < m; ++k, ++col)
            for (Eigen::Index r = 0; r < d; ++r) {
                const double s = scale.size() ? scale(r) : 1.0;
                const double v = std::max(variance(r, b) / (s * s), math::kMinVariance);
                pooled(r, col) = mean(r, b) / s + std::sqrt(v) * noise.gaussian();
            }
    }
    const double mean_entropy = 0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi * std::numbers::e) +
                                0.5 * log_var_sum / static_cast<double>(members);
    return math::knn_entropy(pooled, 1) - mean_entropy;
}

} // namespace

double info_gain_step(std::span<const math::DiagonalGaussian> next_state_gaussians, std::size_t samples_per_member,
                      RandomStream& noise, const Vector& scale)
{
    const std::size_t members = next_state_gaussians.size();
    require(members >= 2, "info_gain_step: need at least two ensemble members");
    require(samples_per_member >= 1, "info_gain_step: need at least one sample per member");
    const auto d = static_cast<Eigen::Index>(next_state_gaussians.front().dim());
    require(scale.size() == 0 || scale.size() == d, "info_gain_step: scale dimension mismatch");
    require(scale.size() == 0 || (scale.array() > 0.0).all(), "info_gain_step: scale must be positive");

    Matrix mean(d, static_cast<Eigen::Index>(members));
    Matrix variance(d, static_cast<Eigen::Index>(members));
    for (std::size_t b = 0; b < members; ++b) {
        const auto& g = next_state_gaussians[b];
        require(static_cast<Eigen::Index>(g.dim()) == d, "info_gain_step: members differ in dimension");
        mean.col(static_cast<Eigen::Index>(b)) = g.mean;
        variance.col(static_cast<Eigen::Index>(b)) = g.variance;
    }
    Matrix pooled;
    return info_gain_from_moments(mean, variance, samples_per_member, noise, scale, pooled);
}

FeefScore score_rollout(const BeliefRollout& rollout, const PreferredPrior& prior, const ScoreOptions& options,
                        RandomStream& noise)
{
    FeefScore s;
    if (rollout.flagged) {
        s.extrinsic_kl = std::numeric_limits<double>::infinity();
        s.info_gain = 0.0;
        s.total = -std::numeric_limits<double>::infinity();
        return s;
    }
    if (options.include_info_gain) {
        require(rollout.members >= 2, "score_rollout: information gain needs at least two ensemble members");
        require(options.samples_per_member >= 1, "score_rollout: need at least one sample per member");
    }
    Matrix pooled;
    for (std::size_t t = 0; t < rollout.valid_steps; ++t) {
        // KL(N(r, 1) || N(m, v)); reduces to (r - m)^2 / 2 for the unit-variance prior.
        double ext = 0.0;
        for (std::size_t b = 0; b < rollout.members; ++b) {
            const double diff = rollout.reward_mean(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(t)) -
                                prior.mean;
            ext += 0.5 * (std::log(prior.variance) + (1.0 - prior.variance + diff * diff) / prior.variance);
        }
        s.extrinsic_kl += ext / static_cast<double>(rollout.members);
        if (options.include_info_gain)
            s.info_gain += info_gain_from_moments(rollout.next_mean[t], rollout.next_variance[t],
                                                  options.samples_per_member, noise, rollout.state_scale, pooled);
    }
    s.total = s.info_gain - s.extrinsic_kl;
    return s;
}

double summed_predictive_variance(const BeliefRollout& rollout)
{
    double sum = 0.0;
    for (std::size_t t = 0; t < rollout.valid_steps; ++t)
        sum += rollout.next_variance[t].sum();
    return sum;
}

FeefScore evaluate_candidate(const model::DynamicsModel& model, const Vector& start_state, const Matrix& policy,
                             const PreferredPrior& prior, CandidateStreams& streams, const ScoreOptions& options,
                             Propagation mode)
{
    const auto r = rollout(model, start_state, policy, streams.particles, mode);
    return score_rollout(r, prior, options, streams.mixture);
}

} // namespace feef::objective
