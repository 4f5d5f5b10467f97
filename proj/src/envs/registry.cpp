#include "feef/envs/registry.hpp"

#include "feef/envs/mountain_car.hpp"
#include "feef/envs/pendulum.hpp"
#include "feef/envs/point_maze.hpp"

namespace feef::envs {

Vector Environment::clamp_action(const Vector& action) const
{
    const auto& s = spec();
    require(static_cast<std::size_t>(action.size()) == s.action_dim, "Environment: action dimension mismatch");
    return action.cwiseMax(s.action_low).cwiseMin(s.action_high);
}

std::vector<std::string> environment_names() { return {"mountain_car", "pendulum", "point_maze"}; }

std::unique_ptr<Environment> make_environment(const std::string& name)
{
    if (name == "mountain_car")
        return std::make_unique<MountainCar>();
    if (name == "pendulum")
        return std::make_unique<Pendulum>();
    if (name == "point_maze")
        return std::make_unique<PointMaze>();
    throw ContractViolation("unknown environment '" + name + "'");
}

} // namespace feef::envs
