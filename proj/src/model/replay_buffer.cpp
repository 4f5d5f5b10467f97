#include "feef/model/replay_buffer.hpp"

#include <cmath>

namespace feef::model {

void ReplayBuffer::append(std::span<const Transition> episode)
{
    if (episode.empty())
        return;
    if (state_dim_ == 0 && action_dim_ == 0) {
        state_dim_ = static_cast<std::size_t>(episode.front().state.size());
        action_dim_ = static_cast<std::size_t>(episode.front().action.size());
    }
    for (const auto& t : episode) {
        require(static_cast<std::size_t>(t.state.size()) == state_dim_ &&
                    static_cast<std::size_t>(t.next_state.size()) == state_dim_ &&
                    static_cast<std::size_t>(t.action.size()) == action_dim_,
                "ReplayBuffer: transition dimensions do not match the buffer");
        require(t.state.allFinite() && t.action.allFinite() && t.next_state.allFinite() && std::isfinite(t.reward),
                "ReplayBuffer: non-finite transition");
    }
    data_.insert(data_.end(), episode.begin(), episode.end());
}

ReplayBuffer buffer_append(ReplayBuffer buffer, std::span<const Transition> episode)
{
    buffer.append(episode);
    return buffer;
}

} // namespace feef::model
