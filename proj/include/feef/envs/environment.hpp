#ifndef FEEF_ENVS_ENVIRONMENT_HPP
#define FEEF_ENVS_ENVIRONMENT_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "feef/common.hpp"
#include "feef/envs/coverage.hpp"

namespace feef::envs {

struct EnvSpec {
    std::string name;
    std::size_t state_dim = 0;
    std::size_t action_dim = 0;
    Vector action_low;
    Vector action_high;
    std::size_t max_steps = 0;
    /// Largest per-step reward the environment can emit.
    double r_max = 0.0;
};

struct StepResult {
    Vector next_state;
    double reward = 0.0;
    bool done = false;
};

/**
 * Deterministic continuous-control task. Instances hold no episode state:
 * step() is a pure function of (state, action) and the caller counts steps
 * against spec().max_steps.
 */
class Environment {
public:
    virtual ~Environment() = default;

    virtual const EnvSpec& spec() const = 0;
    virtual Vector reset(std::uint64_t seed) const = 0;
    /// Actions outside the bounds are clamped.
    virtual StepResult step(const Vector& state, const Vector& action) const = 0;

    /// Empty grid over the subspace used for coverage.
    virtual CoverageGrid coverage_grid() const = 0;
    /// Projection of a state onto the coverage subspace.
    virtual Vector coverage_point(const Vector& state) const = 0;

    Vector clamp_action(const Vector& action) const;
};

} // namespace feef::envs

#endif
