#ifndef FEEF_MODEL_REPLAY_BUFFER_HPP
#define FEEF_MODEL_REPLAY_BUFFER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "feef/common.hpp"

namespace feef::model {

struct Transition {
    Vector state;
    Vector action;
    Vector next_state;
    double reward = 0.0;

    friend bool operator==(const Transition& a, const Transition& b)
    {
        return a.state == b.state && a.action == b.action && a.next_state == b.next_state && a.reward == b.reward;
    }
};

/// Append-only dataset of transitions in collection order.
class ReplayBuffer {
public:
    ReplayBuffer() = default;
    ReplayBuffer(std::size_t state_dim, std::size_t action_dim) : state_dim_(state_dim), action_dim_(action_dim) {}

    /// Appends an episode. Dimensions are fixed by the first transition ever appended
    /// (or the constructor); mismatches and non-finite values throw ContractViolation.
    void append(std::span<const Transition> episode);

    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    std::size_t state_dim() const { return state_dim_; }
    std::size_t action_dim() const { return action_dim_; }

    const Transition& operator[](std::size_t i) const { return data_[i]; }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

    friend bool operator==(const ReplayBuffer&, const ReplayBuffer&) = default;

private:
    std::size_t state_dim_ = 0;
    std::size_t action_dim_ = 0;
    std::vector<Transition> data_;
};

/// Free-function form: returns the buffer with the episode appended.
ReplayBuffer buffer_append(ReplayBuffer buffer, std::span<const Transition> episode);

} // namespace feef::model

#endif
