#ifndef FEEF_ENVS_PENDULUM_HPP
#define FEEF_ENVS_PENDULUM_HPP

#include "feef/envs/environment.hpp"

namespace feef::envs {

/**
 * Torque-limited pendulum swing-up. theta = 0 is upright.
 *
 *   omega <- clip(omega + dt (10 sin(theta) + 15 a), -8, 8)
 *   theta <- theta + dt omega,   dt = 0.05, a in [-1, 1]
 *
 * The agent sees (cos theta, sin theta, omega). The reward is evaluated on the
 * landed state, -(theta^2 + 0.1 omega^2 + 0.001 a^2) with theta wrapped to
 * (-pi, pi], so the maximum is 0. Episodes last 100 steps from theta = pi +- 0.1.
 */
class Pendulum final : public Environment {
public:
    static constexpr double kGravityOverLength = 10.0;
    static constexpr double kTorqueGain = 15.0;
    static constexpr double kDt = 0.05;
    static constexpr double kMaxSpeed = 8.0;

    Pendulum();

    const EnvSpec& spec() const override { return spec_; }
    Vector reset(std::uint64_t seed) const override;
    StepResult step(const Vector& state, const Vector& action) const override;
    CoverageGrid coverage_grid() const override;
    Vector coverage_point(const Vector& state) const override;

    static Vector observe(double theta, double omega);
    /// Angle in (-pi, pi].
    static double angle(const Vector& state);

private:
    EnvSpec spec_;
};

} // namespace feef::envs

#endif
