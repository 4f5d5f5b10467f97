#include "feef/envs/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace feef::envs {

MountainCar::MountainCar()
{
    spec_.name = "mountain_car";
    spec_.state_dim = 2;
    spec_.action_dim = 1;
    spec_.action_low = Vector::Constant(1, -1.0);
    spec_.action_high = Vector::Constant(1, 1.0);
    spec_.max_steps = 200;
    spec_.r_max = 1.0;
}

Vector MountainCar::reset(std::uint64_t seed) const
{
    Rng rng(seed);
    std::uniform_real_distribution<double> position(-0.6, -0.4);
    Vector s(2);
    s << position(rng), 0.0;
    return s;
}

StepResult MountainCar::step(const Vector& state, const Vector& action) const
{
    require(state.size() == 2 && action.size() == 1, "MountainCar::step: expected 2-d state and 1-d action");
    const double a = std::clamp(action(0), -1.0, 1.0);
    double p = state(0);
    double v = state(1);
    v = std::clamp(v + kPower * a - kGravity * std::cos(3.0 * p), -kMaxSpeed, kMaxSpeed);
    p = std::clamp(p + v, kMinPosition, kMaxPosition);
    if (p == kMinPosition && v < 0.0)
        v = 0.0;
    StepResult r;
    r.next_state.resize(2);
    r.next_state << p, v;
    r.done = p >= kGoalPosition;
    r.reward = r.done ? 1.0 : 0.0;
    return r;
}

CoverageGrid MountainCar::coverage_grid() const
{
    Vector low(2), high(2);
    low << kMinPosition, -kMaxSpeed;
    high << kMaxPosition, kMaxSpeed;
    return CoverageGrid(low, high, {20, 20});
}

double MountainCar::mechanical_energy(const Vector& state)
{
    return 0.5 * state(1) * state(1) + kGravity / 3.0 * std::sin(3.0 * state(0));
}

} // namespace feef::envs
