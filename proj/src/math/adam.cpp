#include "feef/math/adam.hpp"

#include <cmath>

#include "feef/common.hpp"

namespace feef::math {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state)
{
    require(params.size() == grads.size(), "adam_step: parameter and gradient sizes differ");
    require(state.first_moment.size() == params.size() && state.second_moment.size() == params.size(),
            "adam_step: optimizer state does not match parameter shape");

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        double& m = state.first_moment[i];
        double& v = state.second_moment[i];
        m = state.beta1 * m + (1.0 - state.beta1) * g;
        v = state.beta2 * v + (1.0 - state.beta2) * g * g;
        params[i] -= state.learning_rate * (m / c1) / (std::sqrt(v / c2) + state.epsilon);
    }
}

} // namespace feef::math
