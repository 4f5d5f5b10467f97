#include "feef/envs/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace feef::envs {

Pendulum::Pendulum()
{
    spec_.name = "pendulum";
    spec_.state_dim = 3;
    spec_.action_dim = 1;
    spec_.action_low = Vector::Constant(1, -1.0);
    spec_.action_high = Vector::Constant(1, 1.0);
    spec_.max_steps = 100;
    spec_.r_max = 0.0;
}

Vector Pendulum::observe(double theta, double omega)
{
    Vector s(3);
    s << std::cos(theta), std::sin(theta), omega;
    return s;
}

double Pendulum::angle(const Vector& state)
{
    return std::atan2(state(1), state(0));
}

Vector Pendulum::reset(std::uint64_t seed) const
{
    Rng rng(seed);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    return observe(std::numbers::pi + jitter(rng), 0.0);
}

StepResult Pendulum::step(const Vector& state, const Vector& action) const
{
    require(state.size() == 3 && action.size() == 1, "Pendulum::step: expected 3-d state and 1-d action");
    const double a = std::clamp(action(0), -1.0, 1.0);
    double theta = angle(state);
    double omega = state(2);
    omega = std::clamp(omega + kDt * (kGravityOverLength * std::sin(theta) + kTorqueGain * a), -kMaxSpeed, kMaxSpeed);
    theta += kDt * omega;
    StepResult r;
    r.next_state = observe(theta, omega);
    const double err = angle(r.next_state);
    r.reward = -(err * err + 0.1 * omega * omega + 0.001 * a * a);
    r.done = false;
    return r;
}

CoverageGrid Pendulum::coverage_grid() const
{
    Vector low(2), high(2);
    low << -std::numbers::pi, -kMaxSpeed;
    high << std::numbers::pi, kMaxSpeed;
    return CoverageGrid(low, high, {20, 20});
}

Vector Pendulum::coverage_point(const Vector& state) const
{
    Vector p(2);
    p << angle(state), state(2);
    return p;
}

} // namespace feef::envs
