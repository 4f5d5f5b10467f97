#ifndef FEEF_ENVS_MOUNTAIN_CAR_HPP
#define FEEF_ENVS_MOUNTAIN_CAR_HPP

#include "feef/envs/environment.hpp"

namespace feef::envs {

/**
 * Continuous mountain car. State (position, velocity), one action in [-1, 1].
 *
 *   v <- clip(v + 0.0015 a - 0.0025 cos(3p), -0.07, 0.07)
 *   p <- clip(p + v, -1.2, 0.6), and v <- 0 when the left wall is hit moving left
 *
 * Reward 1 and done once p >= 0.45, otherwise 0. Episodes last 200 steps and
 * start at rest with p ~ U[-0.6, -0.4].
 */
class MountainCar final : public Environment {
public:
    static constexpr double kMinPosition = -1.2;
    static constexpr double kMaxPosition = 0.6;
    static constexpr double kMaxSpeed = 0.07;
    static constexpr double kGoalPosition = 0.45;
    static constexpr double kPower = 0.0015;
    static constexpr double kGravity = 0.0025;

    MountainCar();

    const EnvSpec& spec() const override { return spec_; }
    Vector reset(std::uint64_t seed) const override;
    StepResult step(const Vector& state, const Vector& action) const override;
    CoverageGrid coverage_grid() const override;
    Vector coverage_point(const Vector& state) const override { return state; }

    /// v^2 / 2 + (0.0025 / 3) sin(3p); the potential matches the gravity term of the update.
    static double mechanical_energy(const Vector& state);

private:
    EnvSpec spec_;
};

} // namespace feef::envs

#endif
