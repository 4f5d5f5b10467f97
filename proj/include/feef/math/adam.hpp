#ifndef FEEF_MATH_ADAM_HPP
#define FEEF_MATH_ADAM_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace feef::math {

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step = 0;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    AdamState() = default;
    AdamState(std::size_t num_params, double lr)
        : first_moment(num_params, 0.0), second_moment(num_params, 0.0), learning_rate(lr)
    {
    }
};

/// One bias-corrected Adam update of `params` in place. Throws ContractViolation on shape mismatch.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

} // namespace feef::math

#endif
