#ifndef FEEF_ENVS_REGISTRY_HPP
#define FEEF_ENVS_REGISTRY_HPP

#include <memory>
#include <string>
#include <vector>

#include "feef/envs/environment.hpp"

namespace feef::envs {

/// "mountain_car", "pendulum", "point_maze".
std::vector<std::string> environment_names();

/// Throws ContractViolation for an unknown name.
std::unique_ptr<Environment> make_environment(const std::string& name);

} // namespace feef::envs

#endif
