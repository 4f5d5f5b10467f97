#ifndef FEEF_PLANNER_CEM_HPP
#define FEEF_PLANNER_CEM_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "feef/common.hpp"

namespace feef::planner {

struct ActionBounds {
    Vector low;
    Vector high;

    ActionBounds() = default;
    /// Requires equal sizes, finite values and low <= high.
    ActionBounds(Vector low, Vector high);
    static ActionBounds symmetric(std::size_t dim, double limit);

    std::size_t dim() const { return static_cast<std::size_t>(low.size()); }
    Vector clamp(const Vector& action) const;
    /// Clamps every row of an H x d_a matrix.
    Matrix clamp_rows(const Matrix& actions) const;

    friend bool operator==(const ActionBounds&, const ActionBounds&) = default;
};

struct CemConfig {
    std::size_t candidates = 700;
    std::size_t elites = 70;
    std::size_t iterations = 7;
    std::size_t horizon = 30;
    double variance_floor = 1e-3;
    /// Score and rank last iteration's elites again alongside the new samples.
    bool keep_elites = true;

    void validate() const;

    friend bool operator==(const CemConfig&, const CemConfig&) = default;
};

/// Diagonal Gaussian over H x d_a action sequences.
struct PolicyDist {
    Matrix mean;
    Matrix variance;
    ActionBounds bounds;

    /// N(0, I) over `horizon` steps.
    static PolicyDist standard(std::size_t horizon, const ActionBounds& bounds);

    std::size_t horizon() const { return static_cast<std::size_t>(mean.rows()); }
    std::size_t action_dim() const { return static_cast<std::size_t>(mean.cols()); }

    friend bool operator==(const PolicyDist&, const PolicyDist&) = default;
};

/// Scores a batch of H x d_a candidates; higher is better, -inf marks an unusable candidate.
/// The generator is the planner's; score functions fork per-candidate streams from it.
using ScoreFn = std::function<std::vector<double>(std::span<const Matrix> candidates, Rng& rng)>;

struct PlanDiagnostics {
    /// Best score in the ranking pool after each iteration.
    std::vector<double> best_per_iteration;
    /// Mean over the finite scores of the freshly sampled candidates.
    std::vector<double> mean_per_iteration;
    /// Set when an iteration had fewer finite scores than elites.
    bool degraded = false;
};

struct PlanResult {
    PolicyDist distribution;
    PlanDiagnostics diagnostics;
};

/**
 * Elite-moment refit. Ranks by score (descending, ties to the lower index),
 * takes the top `elites`, and returns their per-entry mean and population
 * variance; variance is floored and the mean clamped to `bounds`.
 * Throws ContractViolation when fewer than `elites` scores are finite.
 */
PolicyDist refit(std::span<const Matrix> candidates, std::span<const double> scores, std::size_t elites,
                 double variance_floor, const ActionBounds& bounds);

/// Cross-entropy optimisation from N(0, I). Candidates are clamped to `bounds` before scoring.
PlanResult plan(const ScoreFn& score, const ActionBounds& bounds, const CemConfig& config, Rng& rng);

/// First mean action, clamped.
Vector act(const PolicyDist& dist);

/// softmax over scores, for diagnostics.
Vector policy_weights(std::span<const double> scores);

} // namespace feef::planner

#endif
