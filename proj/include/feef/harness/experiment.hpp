#ifndef FEEF_HARNESS_EXPERIMENT_HPP
#define FEEF_HARNESS_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "feef/harness/agent.hpp"
#include "feef/harness/config.hpp"
#include "feef/model/replay_buffer.hpp"

namespace feef::harness {

inline constexpr const char* kMetricsHeader = "seed,episode,return,steps,coverage,extrinsic_mean,info_gain_mean,wall_ms";

struct SeedResult {
    /// Agent episodes 1..N; the random seed episode is not recorded here.
    std::vector<EpisodeRecord> records;
    /// Coverage-space points per episode; index 0 is the seed episode.
    std::vector<std::vector<Vector>> points;
    model::ReplayBuffer buffer;
};

/**
 * One seed of the training loop: a random-agent seed episode fills the buffer,
 * then every agent episode retrains the world model from scratch on the whole
 * buffer, runs, and appends its transitions. Coverage is cumulative over the
 * agent episodes.
 */
SeedResult run_seed(const ExperimentConfig& config, std::uint64_t seed, std::ostream* log = nullptr);

/// One CSV row (no newline) in the kMetricsHeader schema.
std::string format_record(const EpisodeRecord& record);

/// Writes episode,step,s0,s1 rows.
void write_coverage_csv(std::ostream& out, const std::vector<std::vector<Vector>>& points);

/**
 * Runs every seed and writes metrics.csv and manifest.txt (plus coverage CSVs
 * when enabled) under config.output_dir. The output location is checked
 * before any training. Throws UsageError for a bad config and
 * std::runtime_error for I/O failures.
 */
void run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

} // namespace feef::harness

#endif
