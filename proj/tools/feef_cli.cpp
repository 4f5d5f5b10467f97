// Command-line front end: run experiments, check the tabular bound, export coverage points.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "feef/harness/experiment.hpp"
#include "feef/objective/tabular.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

struct RunOptions {
    std::string config_file;
    bool paper_config = false;
    bool quiet = false;
    std::map<std::string, std::string> flags;
};

void add_run_options(CLI::App& cmd, RunOptions& opts)
{
    cmd.add_option("--config", opts.config_file, "key=value config file; flags override it");
    cmd.add_flag("--paper-config", opts.paper_config, "full-size networks and planner (400 units, 700/70/7)");
    cmd.add_flag("--quiet", opts.quiet, "no per-episode progress on stderr");
    for (const auto& key : feef::harness::setting_keys()) {
        std::string flag = key;
        for (auto& c : flag)
            if (c == '_')
                c = '-';
        const std::string names = key == "output_dir" ? "--output-dir,--out" : "--" + flag;
        cmd.add_option(names, opts.flags[key], "overrides '" + key + "'");
    }
}

feef::harness::ExperimentConfig resolve(const RunOptions& opts)
{
    feef::harness::ExperimentConfig config;
    if (opts.paper_config)
        feef::harness::apply_setting(config, "paper_config", "true");
    if (!opts.config_file.empty())
        feef::harness::apply_config_file(config, opts.config_file);
    for (const auto& key : feef::harness::setting_keys()) {
        const auto it = opts.flags.find(key);
        if (it != opts.flags.end() && !it->second.empty())
            feef::harness::apply_setting(config, key, it->second);
    }
    config.validate();
    return config;
}

int bound_check(std::size_t toys, std::uint64_t seed)
{
    bool all = true;
    const auto suite = feef::objective::make_toy_suite(toys, seed);
    for (std::size_t i = 0; i < suite.size(); ++i) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < suite[i].num_policies(); ++p) {
            const auto r = feef::objective::tabular_feef(suite[i], p);
            worst = std::min(worst, r.feef - r.bound_rhs);
        }
        const bool ok = worst >= -1e-9;
        all = all && ok;
        std::printf("toy %zu: %zu policies, min slack %.6g  %s\n", i, suite[i].num_policies(), worst,
                    ok ? "PASS" : "FAIL");
    }
    std::printf("%s\n", all ? "all bounds hold" : "bound violated");
    return all ? 0 : kRuntime;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Model-based planning with the free energy of the expected future"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "train and evaluate an agent; writes metrics.csv and manifest.txt");
    add_run_options(*run, run_opts);

    RunOptions cov_opts;
    auto* cov = app.add_subcommand("export-coverage", "like run, and also writes coverage_seed<S>.csv point files");
    add_run_options(*cov, cov_opts);

    std::size_t toys = 20;
    std::uint64_t seed = 0;
    auto* bound = app.add_subcommand("bound-check", "check the free-energy bound on random tabular models");
    bound->add_option("--toys", toys, "number of random models")->check(CLI::PositiveNumber);
    bound->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*bound)
            return bound_check(toys, seed);
        const bool exporting = static_cast<bool>(*cov);
        const RunOptions& opts = exporting ? cov_opts : run_opts;
        auto config = resolve(opts);
        if (exporting)
            config.coverage_points = true;
        feef::harness::run_experiment(config, opts.quiet ? nullptr : &std::cerr);
        return 0;
    } catch (const feef::harness::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntime;
    }
}
