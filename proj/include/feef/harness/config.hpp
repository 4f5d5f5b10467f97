#ifndef FEEF_HARNESS_CONFIG_HPP
#define FEEF_HARNESS_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "feef/model/world_model.hpp"
#include "feef/objective/rollout.hpp"
#include "feef/planner/cem.hpp"

namespace feef::harness {

/// Bad configuration input: unknown key, malformed value, missing file. Maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum class AgentKind { feef, reward_only, variance, random };

std::string to_string(AgentKind kind);
/// Throws UsageError for an unknown name.
AgentKind parse_agent(const std::string& name);

struct ExperimentConfig {
    std::string env = "mountain_car";
    AgentKind agent = AgentKind::feef;
    std::size_t episodes = 10;
    std::vector<std::uint64_t> seeds = {0};
    model::ModelConfig model;
    planner::CemConfig planner{200, 20, 4, 30};
    std::size_t mixture_samples = 10;
    objective::Propagation propagation = objective::Propagation::sample;
    /// All candidates of one planning iteration share particle and mixture noise
    /// (common random numbers), so their scores differ only through the actions.
    bool shared_noise = true;
    /// 0 keeps the environment's episode length.
    std::size_t max_steps = 0;
    std::string output_dir = "out";
    /// Record wall-clock milliseconds; off by default so repeated runs are byte-identical.
    bool timing = false;
    /// Also write coverage_seed<S>.csv with the visited points of every episode.
    bool coverage_points = false;

    /// Throws UsageError when a count is zero, a name is unknown, or a sub-config is invalid.
    void validate() const;
};

/// Setting keys in the order the manifest prints them. Each one is also a CLI flag
/// (`--` prefix, `_` written as `-`).
const std::vector<std::string>& setting_keys();

/// Applies one key=value pair. `-` and `_` are interchangeable in keys.
/// `paper_config=true` switches the network and planner sizes to the full-scale values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
void apply_config_file(ExperimentConfig& config, const std::string& path);

/// Resolved settings, one `key=value` line each, in setting_keys() order.
std::string describe(const ExperimentConfig& config);

} // namespace feef::harness

#endif
