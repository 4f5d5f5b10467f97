#ifndef FEEF_OBJECTIVE_TABULAR_HPP
#define FEEF_OBJECTIVE_TABULAR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "feef/common.hpp"

namespace feef::objective {

/**
 * One-step finite model used as an exact-enumeration check of the objective's
 * identities. All tables are row-stochastic.
 *
 *   parameter_prior    q(theta)                  [Theta]
 *   state_given        q(s | theta, pi)          per policy: Theta x S
 *   observation_given  q(o | s, theta)           per theta:  S x O
 *   preferred          p_phi(o)                  [O]
 *   generative_posterior  p(s, theta | o)        per o: Theta x S, sums to 1
 *
 * When generative_posterior is empty the biased generative model uses the
 * exact Bayes posterior of q.
 */
struct TabularToyModel {
    Vector parameter_prior;
    std::vector<Matrix> state_given;
    std::vector<Matrix> observation_given;
    Vector preferred;
    std::vector<Matrix> generative_posterior;

    std::size_t num_parameters() const { return static_cast<std::size_t>(parameter_prior.size()); }
    std::size_t num_states() const { return observation_given.empty() ? 0 : static_cast<std::size_t>(observation_given.front().rows()); }
    std::size_t num_observations() const { return static_cast<std::size_t>(preferred.size()); }
    std::size_t num_policies() const { return state_given.size(); }

    /// Throws ContractViolation unless every table has consistent shape and sums to 1 within 1e-12.
    void validate() const;
};

struct TabularFeef {
    /// KL(q(o,s,theta|pi) || p_phi(o) p(s,theta|o)) with the toy's generative posterior.
    double feef = 0.0;
    /// Same divergence with p(s,theta|o) replaced by the exact posterior q(s,theta|o,pi).
    double feef_exact_posterior = 0.0;
    /// E_q(o)[KL(q(s,theta|o,pi) || q(s,theta|pi))].
    double info_gain = 0.0;
    /// E_q(s,theta)[KL(q(o|s,theta) || p_phi(o))].
    double extrinsic = 0.0;
    /// KL(q(o|pi) || p_phi(o)).
    double bound_rhs = 0.0;
    /// E_q(s)[KL(q(theta|s) || q(theta))].
    double parameter_info_gain = 0.0;
    /// H[E_theta q(s|theta)] - E_theta H[q(s|theta)].
    double parameter_info_gain_entropy_form = 0.0;
};

/// Exact enumeration for one policy. Zero-mass outcomes are left out of every expectation.
TabularFeef tabular_feef(const TabularToyModel& toy, std::size_t policy);

/// sum_pi q(pi) (F_pi + ln q(pi)), the free energy of a whole policy distribution.
double tabular_policy_free_energy(const TabularToyModel& toy, const Vector& policy_probs);

/// softmax(-F_pi) over the toy's policies.
Vector tabular_optimal_policy(const TabularToyModel& toy);

/// Random strictly positive toy. With `random_generative` the generative posterior is an
/// independent random table, otherwise it is left empty (exact posterior).
TabularToyModel make_random_toy(Rng& rng, std::size_t states, std::size_t observations, std::size_t parameters,
                                std::size_t policies, bool random_generative = true);

/// `count` random toys from one seed, each with 2..5 states, observations, parameters and policies.
std::vector<TabularToyModel> make_toy_suite(std::size_t count, std::uint64_t seed);

} // namespace feef::objective

#endif
