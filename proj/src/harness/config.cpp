#include "feef/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "feef/envs/registry.hpp"

namespace feef::harness {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key)
{
    key = trim(key);
    while (!key.empty() && key.front() == '-')
        key.erase(key.begin());
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        throw UsageError("setting '" + key + "': expected a non-negative integer, got '" + value + "'");
    return out;
}

double parse_real(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    std::istringstream in(v);
    in.imbue(std::locale::classic());
    double out = 0.0;
    in >> out;
    if (v.empty() || in.fail() || !in.eof() || !std::isfinite(out))
        throw UsageError("setting '" + key + "': expected a finite number, got '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw UsageError("setting '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<std::uint64_t> parse_seeds(const std::string& key, const std::string& value)
{
    std::vector<std::uint64_t> seeds;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ','))
        seeds.push_back(parse_unsigned(key, item));
    if (seeds.empty())
        throw UsageError("setting '" + key + "': expected a comma-separated list of seeds");
    return seeds;
}

std::string format_real(double v)
{
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    out << v;
    return out.str();
}

std::string join_sizes(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

} // namespace

std::string to_string(AgentKind kind)
{
    switch (kind) {
    case AgentKind::feef:
        return "feef";
    case AgentKind::reward_only:
        return "reward_only";
    case AgentKind::variance:
        return "variance";
    case AgentKind::random:
        return "random";
    }
    return "unknown";
}

AgentKind parse_agent(const std::string& name)
{
    for (auto k : {AgentKind::feef, AgentKind::reward_only, AgentKind::variance, AgentKind::random})
        if (to_string(k) == name)
            return k;
    throw UsageError("unknown agent '" + name + "' (expected feef, reward_only, variance or random)");
}

void ExperimentConfig::validate() const
{
    const auto names = envs::environment_names();
    if (std::find(names.begin(), names.end(), env) == names.end())
        throw UsageError("unknown environment '" + env + "'");
    if (seeds.empty())
        throw UsageError("at least one seed is required");
    if (mixture_samples == 0)
        throw UsageError("mixture_samples must be positive");
    if (output_dir.empty())
        throw UsageError("output_dir must not be empty");
    try {
        model.validate();
        planner.validate();
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
}

const std::vector<std::string>& setting_keys()
{
    static const std::vector<std::string> keys = {
        "env",        "agent",          "episodes",   "seeds",      "ensemble_size", "hidden",     "hidden_layers",
        "epochs",     "learning_rate",  "batch_size", "candidates", "elites",        "iterations", "horizon",
        "variance_floor", "keep_elites", "mixture_samples", "propagation", "shared_noise", "max_steps", "output_dir", "timing",
        "coverage_points"};
    return keys;
}

void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value)
{
    const std::string key = normalize_key(raw_key);
    const std::string value = trim(raw_value);
    auto size = [&] { return static_cast<std::size_t>(parse_unsigned(key, value)); };

    if (key == "env")
        c.env = value;
    else if (key == "agent")
        c.agent = parse_agent(value);
    else if (key == "episodes")
        c.episodes = size();
    else if (key == "seeds")
        c.seeds = parse_seeds(key, value);
    else if (key == "ensemble_size")
        c.model.ensemble_size = size();
    else if (key == "hidden") {
        const auto width = size();
        std::fill(c.model.transition_hidden.begin(), c.model.transition_hidden.end(), width);
        std::fill(c.model.reward_hidden.begin(), c.model.reward_hidden.end(), width);
    } else if (key == "hidden_layers") {
        const auto layers = size();
        const auto width = c.model.transition_hidden.empty() ? std::size_t{64} : c.model.transition_hidden.front();
        c.model.transition_hidden.assign(layers, width);
        c.model.reward_hidden.assign(layers, width);
    } else if (key == "epochs")
        c.model.epochs = size();
    else if (key == "learning_rate")
        c.model.learning_rate = parse_real(key, value);
    else if (key == "batch_size")
        c.model.batch_size = size();
    else if (key == "candidates")
        c.planner.candidates = size();
    else if (key == "elites")
        c.planner.elites = size();
    else if (key == "iterations")
        c.planner.iterations = size();
    else if (key == "horizon")
        c.planner.horizon = size();
    else if (key == "variance_floor")
        c.planner.variance_floor = parse_real(key, value);
    else if (key == "keep_elites")
        c.planner.keep_elites = parse_bool(key, value);
    else if (key == "mixture_samples")
        c.mixture_samples = size();
    else if (key == "shared_noise")
        c.shared_noise = parse_bool(key, value);
    else if (key == "propagation") {
        if (value == "sample")
            c.propagation = objective::Propagation::sample;
        else if (value == "mean")
            c.propagation = objective::Propagation::mean;
        else
            throw UsageError("setting 'propagation': expected sample or mean, got '" + value + "'");
    } else if (key == "max_steps")
        c.max_steps = size();
    else if (key == "output_dir" || key == "out")
        c.output_dir = value;
    else if (key == "timing")
        c.timing = parse_bool(key, value);
    else if (key == "coverage_points")
        c.coverage_points = parse_bool(key, value);
    else if (key == "paper_config") {
        if (parse_bool(key, value)) {
            c.model.transition_hidden.assign(2, 400);
            c.model.reward_hidden.assign(2, 400);
            c.planner.candidates = 700;
            c.planner.elites = 70;
            c.planner.iterations = 7;
            c.planner.horizon = 30;
        }
    } else
        throw UsageError("unknown setting '" + raw_key + "'");
}

void apply_config_file(ExperimentConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file '" + path + "'");
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    }
}

std::string describe(const ExperimentConfig& c)
{
    std::ostringstream out;
    std::string seeds;
    for (std::size_t i = 0; i < c.seeds.size(); ++i)
        seeds += (i ? "," : "") + std::to_string(c.seeds[i]);
    out << "env=" << c.env << '\n'
        << "agent=" << to_string(c.agent) << '\n'
        << "episodes=" << c.episodes << '\n'
        << "seeds=" << seeds << '\n'
        << "ensemble_size=" << c.model.ensemble_size << '\n'
        << "transition_hidden=" << join_sizes(c.model.transition_hidden) << '\n'
        << "reward_hidden=" << join_sizes(c.model.reward_hidden) << '\n'
        << "epochs=" << c.model.epochs << '\n'
        << "learning_rate=" << format_real(c.model.learning_rate) << '\n'
        << "batch_size=" << c.model.batch_size << '\n'
        << "candidates=" << c.planner.candidates << '\n'
        << "elites=" << c.planner.elites << '\n'
        << "iterations=" << c.planner.iterations << '\n'
        << "horizon=" << c.planner.horizon << '\n'
        << "variance_floor=" << format_real(c.planner.variance_floor) << '\n'
        << "keep_elites=" << (c.planner.keep_elites ? "true" : "false") << '\n'
        << "mixture_samples=" << c.mixture_samples << '\n'
        << "propagation=" << (c.propagation == objective::Propagation::mean ? "mean" : "sample") << '\n'
        << "shared_noise=" << (c.shared_noise ? "true" : "false") << '\n'
        << "max_steps=" << c.max_steps << '\n'
        << "output_dir=" << c.output_dir << '\n'
        << "timing=" << (c.timing ? "true" : "false") << '\n'
        << "coverage_points=" << (c.coverage_points ? "true" : "false") << '\n';
    return out.str();
}

} // namespace feef::harness
