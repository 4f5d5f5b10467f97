#include "feef/harness/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "feef/envs/registry.hpp"
#include "feef/model/world_model.hpp"

namespace feef::harness {

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

} // namespace

SeedResult run_seed(const ExperimentConfig& config, std::uint64_t seed, std::ostream* log)
{
    config.validate();
    const auto env = envs::make_environment(config.env);
    const auto& spec = env->spec();
    Rng rng(seed);
    SeedResult result;
    result.buffer = model::ReplayBuffer(spec.state_dim, spec.action_dim);

    auto project = [&](const std::vector<Vector>& states) {
        std::vector<Vector> pts;
        pts.reserve(states.size());
        for (const auto& s : states)
            pts.push_back(env->coverage_point(s));
        return pts;
    };

    const auto seed_episode = run_episode(AgentKind::random, *env, nullptr, config, rng);
    result.buffer.append(seed_episode.transitions);
    result.points.push_back(project(seed_episode.visited));

    auto grid = env->coverage_grid();
    for (std::size_t ep = 1; ep <= config.episodes; ++ep) {
        EpisodeResult episode;
        if (config.agent == AgentKind::random) {
            episode = run_episode(AgentKind::random, *env, nullptr, config, rng);
        } else {
            const auto trained = model::train_world_model(result.buffer, config.model, rng);
            episode = run_episode(config.agent, *env, &trained.model, config, rng);
        }
        result.buffer.append(episode.transitions);
        auto pts = project(episode.visited);
        for (const auto& p : pts)
            grid.add(p);
        result.points.push_back(std::move(pts));

        episode.record.seed = seed;
        episode.record.episode = ep;
        episode.record.coverage = grid.fraction();
        if (log) {
            *log << "seed " << seed << " episode " << ep << " return " << fmt(episode.record.total_return)
                 << " steps " << episode.record.steps << " coverage " << fmt(episode.record.coverage)
                 << (episode.record.degraded ? " (degraded planning)" : "") << std::endl;
        }
        result.records.push_back(episode.record);
    }
    return result;
}

std::string format_record(const EpisodeRecord& r)
{
    return std::to_string(r.seed) + "," + std::to_string(r.episode) + "," + fmt(r.total_return) + "," +
           std::to_string(r.steps) + "," + fmt(r.coverage) + "," + fmt(r.extrinsic_mean) + "," +
           fmt(r.info_gain_mean) + "," + fmt(r.wall_ms);
}

void write_coverage_csv(std::ostream& out, const std::vector<std::vector<Vector>>& points)
{
    out << "episode,step,s0,s1\n";
    for (std::size_t ep = 0; ep < points.size(); ++ep)
        for (std::size_t t = 0; t < points[ep].size(); ++t) {
            const auto& p = points[ep][t];
            out << ep << ',' << t << ',' << fmt(p(0)) << ',' << fmt(p.size() > 1 ? p(1) : 0.0) << '\n';
        }
}

void run_experiment(const ExperimentConfig& config, std::ostream* log)
{
    config.validate();
    const std::filesystem::path dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    auto metrics = open_output(dir / "metrics.csv");
    {
        auto manifest = open_output(dir / "manifest.txt");
        manifest << "feef-run-manifest 1\n" << describe(config);
        if (!manifest)
            throw std::runtime_error("failed writing manifest");
    }
    metrics << kMetricsHeader << '\n';
    metrics.flush();

    for (auto seed : config.seeds) {
        const auto result = run_seed(config, seed, log);
        for (const auto& r : result.records)
            metrics << format_record(r) << '\n';
        metrics.flush();
        if (config.coverage_points) {
            auto cov = open_output(dir / ("coverage_seed" + std::to_string(seed) + ".csv"));
            write_coverage_csv(cov, result.points);
        }
    }
    if (!metrics)
        throw std::runtime_error("failed writing metrics");
}

} // namespace feef::harness
