#ifndef FEEF_MODEL_NORMALIZER_HPP
#define FEEF_MODEL_NORMALIZER_HPP

#include "feef/model/replay_buffer.hpp"

namespace feef::model {

/**
 * Input standardisation for the transition and reward networks.
 *
 * Transition inputs (state, action) and reward inputs (next state) are shifted
 * and scaled to zero mean / unit variance over the fitting buffer. State deltas
 * are only scaled (by their root-mean-square), so a zero network output maps to
 * a zero delta. Rewards are left raw. All scales are floored at kStdFloor.
 */
struct Normalizer {
    static constexpr double kStdFloor = 1e-6;

    Vector input_mean;         ///< d_s + d_a
    Vector input_std;          ///< d_s + d_a
    Vector delta_scale;        ///< d_s
    Vector reward_input_mean;  ///< d_s
    Vector reward_input_std;   ///< d_s

    /// No-op normalizer for the given dimensions.
    static Normalizer identity(std::size_t state_dim, std::size_t action_dim);
    /// Population statistics over the whole buffer. Throws on an empty buffer.
    static Normalizer fit(const ReplayBuffer& buffer);

    std::size_t state_dim() const { return static_cast<std::size_t>(delta_scale.size()); }
    std::size_t action_dim() const { return static_cast<std::size_t>(input_mean.size()) - state_dim(); }

    /// Columns of (state; action), standardised.
    Matrix transition_inputs(const Matrix& states, const Matrix& actions) const;
    Matrix reward_inputs(const Matrix& states) const;

    friend bool operator==(const Normalizer&, const Normalizer&) = default;
};

} // namespace feef::model

#endif
