#include "feef/planner/cem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "feef/math/softmax.hpp"

namespace feef::planner {

ActionBounds::ActionBounds(Vector lo, Vector hi) : low(std::move(lo)), high(std::move(hi))
{
    require(low.size() == high.size() && low.size() > 0, "ActionBounds: low and high must have the same positive size");
    require(low.allFinite() && high.allFinite(), "ActionBounds: bounds must be finite");
    require((low.array() <= high.array()).all(), "ActionBounds: low must not exceed high");
}

ActionBounds ActionBounds::symmetric(std::size_t dim, double limit)
{
    const auto n = static_cast<Eigen::Index>(dim);
    return ActionBounds(Vector::Constant(n, -limit), Vector::Constant(n, limit));
}

Vector ActionBounds::clamp(const Vector& action) const
{
    require(action.size() == low.size(), "ActionBounds::clamp: dimension mismatch");
    return action.cwiseMax(low).cwiseMin(high);
}

Matrix ActionBounds::clamp_rows(const Matrix& actions) const
{
    require(actions.cols() == low.size(), "ActionBounds::clamp_rows: dimension mismatch");
    Matrix out = actions;
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        out.row(r) = out.row(r).cwiseMax(low.transpose()).cwiseMin(high.transpose());
    return out;
}

void CemConfig::validate() const
{
    require(candidates >= 1, "CemConfig: candidates must be positive");
    require(elites >= 1 && elites <= candidates, "CemConfig: need 1 <= elites <= candidates");
    require(iterations >= 1, "CemConfig: iterations must be positive");
    require(horizon >= 1, "CemConfig: horizon must be positive");
    require(variance_floor > 0.0 && std::isfinite(variance_floor), "CemConfig: variance floor must be positive");
}

PolicyDist PolicyDist::standard(std::size_t horizon, const ActionBounds& bounds)
{
    const auto h = static_cast<Eigen::Index>(horizon);
    const auto d = static_cast<Eigen::Index>(bounds.dim());
    return PolicyDist{Matrix::Zero(h, d), Matrix::Ones(h, d), bounds};
}

namespace {

std::vector<std::size_t> rank_finite(std::span<const double> scores)
{
    std::vector<std::size_t> order;
    order.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (std::isfinite(scores[i]))
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

} // namespace

PolicyDist refit(std::span<const Matrix> candidates, std::span<const double> scores, std::size_t elites,
                 double variance_floor, const ActionBounds& bounds)
{
    require(candidates.size() == scores.size(), "refit: one score per candidate");
    require(elites >= 1, "refit: need at least one elite");
    const auto order = rank_finite(scores);
    require(order.size() >= elites, "refit: fewer finite scores than elites");
    const Matrix& first = candidates[order.front()];

    Matrix mean = Matrix::Zero(first.rows(), first.cols());
    for (std::size_t k = 0; k < elites; ++k) {
        require(candidates[order[k]].rows() == first.rows() && candidates[order[k]].cols() == first.cols(),
                "refit: candidates differ in shape");
        mean += candidates[order[k]];
    }
    mean /= static_cast<double>(elites);
    Matrix variance = Matrix::Zero(first.rows(), first.cols());
    for (std::size_t k = 0; k < elites; ++k)
        variance.array() += (candidates[order[k]] - mean).array().square();
    variance /= static_cast<double>(elites);
    variance = variance.cwiseMax(variance_floor);
    return PolicyDist{bounds.clamp_rows(mean), variance, bounds};
}

PlanResult plan(const ScoreFn& score, const ActionBounds& bounds, const CemConfig& config, Rng& rng)
{
    config.validate();
    require(bounds.dim() >= 1, "plan: action bounds are empty");
    const auto h = static_cast<Eigen::Index>(config.horizon);
    const auto d = static_cast<Eigen::Index>(bounds.dim());

    PlanResult result{PolicyDist::standard(config.horizon, bounds), {}};
    RandomStream sampler(fork_seed(rng));

    std::vector<Matrix> pool;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        const PolicyDist& dist = result.distribution;
        const Matrix sd = dist.variance.cwiseSqrt();
        std::vector<Matrix> fresh(config.candidates, Matrix(h, d));
        for (auto& c : fresh) {
            for (Eigen::Index t = 0; t < h; ++t)
                for (Eigen::Index k = 0; k < d; ++k)
                    c(t, k) = dist.mean(t, k) + sd(t, k) * sampler.gaussian();
            c = bounds.clamp_rows(c);
        }

        // Fresh candidates first so that ties prefer them over carried elites. Carried
        // elites are scored again with the fresh ones, so a noisy score function cannot
        // keep a lucky draw alive.
        const std::size_t fresh_count = fresh.size();
        std::vector<Matrix> ranked = std::move(fresh);
        if (config.keep_elites)
            ranked.insert(ranked.end(), pool.begin(), pool.end());
        const std::vector<double> ranked_scores = score(ranked, rng);
        require(ranked_scores.size() == ranked.size(), "plan: score function must return one score per candidate");

        double sum = 0.0;
        std::size_t finite = 0;
        for (std::size_t j = 0; j < fresh_count; ++j)
            if (std::isfinite(ranked_scores[j])) {
                sum += ranked_scores[j];
                ++finite;
            }
        result.diagnostics.mean_per_iteration.push_back(finite ? sum / static_cast<double>(finite)
                                                               : -std::numeric_limits<double>::infinity());

        const auto order = rank_finite(ranked_scores);
        if (order.empty()) {
            result.diagnostics.degraded = true;
            result.diagnostics.best_per_iteration.push_back(-std::numeric_limits<double>::infinity());
            continue;
        }
        result.diagnostics.best_per_iteration.push_back(ranked_scores[order.front()]);
        std::size_t elites = config.elites;
        if (order.size() < elites) {
            result.diagnostics.degraded = true;
            elites = order.size();
        }
        result.distribution = refit(ranked, ranked_scores, elites, config.variance_floor, bounds);

        pool.clear();
        for (std::size_t k = 0; k < elites; ++k)
            pool.push_back(ranked[order[k]]);
    }
    return result;
}

Vector act(const PolicyDist& dist)
{
    require(dist.mean.rows() >= 1, "act: empty policy");
    return dist.bounds.clamp(dist.mean.row(0).transpose());
}

Vector policy_weights(std::span<const double> scores)
{
    Vector v(static_cast<Eigen::Index>(scores.size()));
    for (std::size_t i = 0; i < scores.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = scores[i];
    return math::softmax_stable(v);
}

} // namespace feef::planner
