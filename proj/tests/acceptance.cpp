// Acceptance suite: one PASS/FAIL line per criterion on stdout, details on stderr.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feef/harness/agent.hpp"
#include "feef/harness/experiment.hpp"
#include "feef/math/gaussian.hpp"
#include "feef/math/knn_entropy.hpp"
#include "feef/math/nll_loss.hpp"
#include "feef/objective/feef_score.hpp"
#include "feef/objective/tabular.hpp"
#include "feef/planner/cem.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"
#include "support/random_nets.hpp"

using namespace feef;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes of every criterion.
constexpr double kGradientRelTol = 1e-4;
constexpr int kGradientNets = 50;
constexpr double kEntropy1dTol = 0.05;
constexpr double kEntropy2dTol = 0.1;
constexpr double kInfoGainFloor = -0.1;
constexpr double kLn2Tol = 0.1;
constexpr int kEntropySamples = 10000;
constexpr int kRandomEnsembles = 100;
constexpr std::size_t kInfoGainSamples = 500;
constexpr double kCemTol = 0.01;
constexpr int kCemSeeds = 20;
constexpr std::size_t kCemHorizon = 2;
constexpr std::size_t kCemActionDim = 2;
constexpr double kBoundSlack = -1e-9;
constexpr double kDecompositionTol = 1e-9;
constexpr int kToys = 20;
constexpr std::uint64_t kToySeed = 0;
constexpr int kExperimentSeeds = 5;
constexpr int kRequiredSeeds = 4;
constexpr std::size_t kSparseFirstEpisodes = 5;
constexpr std::size_t kSparseEpisodes = 10;
constexpr double kSparseCoverageRatio = 2.0;
constexpr std::size_t kMazeEpisodes = 10;
constexpr double kMazeCoverageRatio = 1.5;
constexpr int kPendulumSeeds = 3;
constexpr std::size_t kPendulumEpisodes = 20;
constexpr std::size_t kPendulumTail = 5;
constexpr double kPendulumRelTol = 0.10;

struct Outcome {
    bool pass = false;
    std::string summary;
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Outcome gradient()
{
    Rng rng(2024);
    double worst = 0.0;
    int checked = 0;
    int skipped = 0;
    while (checked < kGradientNets) {
        const bool gaussian = checked % 2 == 0;
        const auto in = static_cast<std::size_t>(1 + rng() % 4);
        const auto td = static_cast<std::size_t>(1 + rng() % 3);
        const auto net = testnets::random_net(rng, in, gaussian ? 2 * td : td);
        const Matrix x = testnets::gaussian_matrix(rng, static_cast<Eigen::Index>(in), 8);
        const Matrix y = testnets::gaussian_matrix(rng, static_cast<Eigen::Index>(td), 8);
        // Finite differences across a ReLU kink are meaningless; draw another batch.
        if (oracle::min_relu_margin(net, x) < 1e-3) {
            ++skipped;
            continue;
        }
        const auto head = gaussian ? math::NllHead::gaussian : math::NllHead::fixed_unit_variance;
        const auto lg = math::nll_loss_and_grads(net, x, y, head);
        const auto fd = oracle::nll_fd_grads(net, x, y, head);
        for (std::size_t i = 0; i < fd.size(); ++i)
            worst = std::max(worst, oracle::rel_err(lg.grads[i], fd[i]));
        ++checked;
    }
    return {worst < kGradientRelTol, "max relative error " + fmt(worst) + " over " + std::to_string(checked) +
                                         " nets (" + std::to_string(skipped) + " kink draws redrawn), tol " +
                                         fmt(kGradientRelTol)};
}

Outcome entropy()
{
    Rng rng(7);
    std::normal_distribution<double> g;
    Matrix one(1, kEntropySamples), two(2, kEntropySamples);
    for (Eigen::Index i = 0; i < kEntropySamples; ++i) {
        one(0, i) = g(rng);
        two(0, i) = g(rng);
        two(1, i) = g(rng);
    }
    const double h1 = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    const double err1 = std::abs(math::knn_entropy(one, 1) - h1);
    const double err2 = std::abs(math::knn_entropy(two, 1) - 2.0 * h1);

    std::uniform_real_distribution<double> var(0.05, 3.0);
    std::uniform_int_distribution<int> bsize(2, 5), dsize(1, 3);
    double lowest = INFINITY;
    for (int i = 0; i < kRandomEnsembles; ++i) {
        const int b = bsize(rng), d = dsize(rng);
        std::vector<math::DiagonalGaussian> members;
        for (int k = 0; k < b; ++k) {
            Vector m(d), v(d);
            for (int r = 0; r < d; ++r) {
                m(r) = g(rng);
                v(r) = var(rng);
            }
            members.emplace_back(m, v);
        }
        RandomStream noise(rng());
        lowest = std::min(lowest, objective::info_gain_step(members, kInfoGainSamples, noise));
    }

    const math::DiagonalGaussian pair[] = {{Vector::Constant(1, -10.0), Vector::Ones(1)},
                                           {Vector::Constant(1, 10.0), Vector::Ones(1)}};
    RandomStream noise(11);
    const double sep = objective::info_gain_step(pair, kInfoGainSamples, noise);
    const double err_ln2 = std::abs(sep - std::numbers::ln2);

    const bool pass = err1 < kEntropy1dTol && err2 < kEntropy2dTol && lowest >= kInfoGainFloor && err_ln2 < kLn2Tol;
    return {pass, "1-D error " + fmt(err1) + ", 2-D error " + fmt(err2) + ", lowest info gain " + fmt(lowest) +
                      ", separated pair " + fmt(sep) + " (ln 2 = " + fmt(std::numbers::ln2) + ")"};
}

Outcome cem()
{
    double worst = 0.0;
    bool monotone = true;
    for (int seed = 0; seed < kCemSeeds; ++seed) {
        Rng draw(100 + static_cast<std::uint64_t>(seed));
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        Matrix target(kCemHorizon, kCemActionDim);
        for (Eigen::Index i = 0; i < target.size(); ++i)
            target.data()[i] = u(draw);
        const planner::ScoreFn quadratic = [target](std::span<const Matrix> cands, Rng&) {
            std::vector<double> s;
            for (const auto& c : cands)
                s.push_back(-(c - target).squaredNorm());
            return s;
        };
        Rng rng(static_cast<std::uint64_t>(seed));
        const auto r = planner::plan(quadratic, planner::ActionBounds::symmetric(kCemActionDim, 1.0),
                                     {200, 20, 7, kCemHorizon}, rng);
        worst = std::max(worst, (r.distribution.mean - target).cwiseAbs().maxCoeff());
        const auto& best = r.diagnostics.best_per_iteration;
        monotone = monotone && std::is_sorted(best.begin(), best.end());
    }

    // Deterministic scoring: exact dynamics, mean propagation, reward-only objective.
    const testmodels::MountainCarOracle oracle(2);
    for (int seed = 0; seed < 5; ++seed) {
        Vector start(2);
        start << -0.5 + 0.1 * seed, 0.01 * seed;
        const auto score = harness::make_score_fn(harness::AgentKind::reward_only, oracle, start, {1.0, 1.0}, 1,
                                                  objective::Propagation::mean);
        Rng rng(static_cast<std::uint64_t>(seed));
        const auto r = planner::plan(score, planner::ActionBounds::symmetric(1, 1.0), {200, 20, 7, 30}, rng);
        const auto& best = r.diagnostics.best_per_iteration;
        monotone = monotone && std::is_sorted(best.begin(), best.end());
    }
    return {worst < kCemTol && monotone, "worst per-dimension error " + fmt(worst) + " over " +
                                             std::to_string(kCemSeeds) + " quadratics (tol " + fmt(kCemTol) +
                                             "), best score non-decreasing: " + (monotone ? "yes" : "no")};
}

Outcome tabular_bound()
{
    double lowest = INFINITY;
    int cases = 0;
    for (const auto& toy : objective::make_toy_suite(kToys, kToySeed))
        for (std::size_t p = 0; p < toy.num_policies(); ++p) {
            const auto r = objective::tabular_feef(toy, p);
            lowest = std::min(lowest, r.feef - r.bound_rhs);
            ++cases;
        }
    return {lowest >= kBoundSlack, "min slack " + fmt(lowest) + " over " + std::to_string(cases) + " policies"};
}

Outcome tabular_decomposition()
{
    double worst = 0.0;
    for (const auto& toy : objective::make_toy_suite(kToys, kToySeed))
        for (std::size_t p = 0; p < toy.num_policies(); ++p) {
            const auto r = objective::tabular_feef(toy, p);
            worst = std::max(worst, std::abs(-r.feef_exact_posterior - (r.info_gain - r.extrinsic)));
        }
    return {worst <= kDecompositionTol, "max |(-F) - (info gain - extrinsic)| = " + fmt(worst)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    bool same = true;
    std::string detail;
    const auto root = fs::temp_directory_path() / "feef_acceptance_determinism";
    for (const char* env : {"mountain_car", "pendulum", "point_maze"}) {
        harness::ExperimentConfig c;
        c.env = env;
        c.episodes = 2;
        c.seeds = {0, 1};
        c.max_steps = 10;
        c.model.epochs = 5;
        c.coverage_points = true;
        std::string files[2];
        for (int rep = 0; rep < 2; ++rep) {
            const auto dir = root / (std::string(env) + std::to_string(rep));
            fs::remove_all(dir);
            c.output_dir = dir.string();
            harness::run_experiment(c);
            files[rep] = slurp(dir / "metrics.csv") + slurp(dir / "coverage_seed0.csv") + slurp(dir / "coverage_seed1.csv");
        }
        const bool ok = !files[0].empty() && files[0] == files[1];
        same = same && ok;
        detail += std::string(env) + (ok ? " identical; " : " DIFFERENT; ");
    }
    fs::remove_all(root);
    return {same, detail + "2 seeds x 2 episodes each"};
}

struct AgentRun {
    std::vector<harness::EpisodeRecord> records;
    double seconds = 0.0;
};

AgentRun run_agent(const std::string& env, harness::AgentKind agent, std::size_t episodes, std::uint64_t seed)
{
    harness::ExperimentConfig c;
    c.env = env;
    c.agent = agent;
    c.episodes = episodes;
    const auto t0 = std::chrono::steady_clock::now();
    auto res = harness::run_seed(c, seed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "  " << env << " " << harness::to_string(agent) << " seed " << seed << " (" << fmt(secs) << " s):";
    for (const auto& r : res.records)
        std::cerr << " " << r.total_return << "/" << fmt(r.coverage);
    std::cerr << std::endl;
    return {std::move(res.records), secs};
}

Outcome mountain_car()
{
    int feef_hits = 0, reward_quiet = 0;
    double feef_cov = 0.0, reward_cov = 0.0, slowest = 0.0;
    for (int s = 0; s < kExperimentSeeds; ++s) {
        const auto seed = static_cast<std::uint64_t>(s);
        const auto f = run_agent("mountain_car", harness::AgentKind::feef, kSparseEpisodes, seed);
        const auto r = run_agent("mountain_car", harness::AgentKind::reward_only, kSparseEpisodes, seed);
        slowest = std::max(slowest, f.seconds);
        bool hit = false;
        for (std::size_t e = 0; e < kSparseFirstEpisodes; ++e)
            hit = hit || f.records[e].total_return >= 1.0;
        feef_hits += hit;
        reward_quiet += std::all_of(r.records.begin(), r.records.end(), [](const auto& x) { return x.total_return == 0.0; });
        feef_cov += f.records.back().coverage / kExperimentSeeds;
        reward_cov += r.records.back().coverage / kExperimentSeeds;
    }
    const bool pass = feef_hits >= kRequiredSeeds && reward_quiet >= kRequiredSeeds &&
                      feef_cov >= kSparseCoverageRatio * reward_cov;
    return {pass, "feef reached the goal within 5 episodes on " + std::to_string(feef_hits) + "/5 seeds, reward_only stayed at 0 on " +
                      std::to_string(reward_quiet) + "/5, mean coverage " + fmt(feef_cov) + " vs " + fmt(reward_cov) +
                      ", slowest feef seed " + fmt(slowest / 60.0) + " min"};
}

Outcome maze()
{
    int wins = 0;
    std::string ratios;
    for (int s = 0; s < kExperimentSeeds; ++s) {
        const auto seed = static_cast<std::uint64_t>(s);
        const auto f = run_agent("point_maze", harness::AgentKind::feef, kMazeEpisodes, seed);
        const auto r = run_agent("point_maze", harness::AgentKind::random, kMazeEpisodes, seed);
        const double ratio = f.records.back().coverage / r.records.back().coverage;
        wins += ratio >= kMazeCoverageRatio;
        ratios += (ratios.empty() ? "" : ", ") + fmt(ratio);
    }
    return {wins >= kRequiredSeeds, "feef/random coverage ratio >= 1.5 on " + std::to_string(wins) + "/5 seeds (" + ratios + ")"};
}

Outcome pendulum()
{
    double feef_tail = 0.0, reward_tail = 0.0;
    for (int s = 0; s < kPendulumSeeds; ++s) {
        const auto seed = static_cast<std::uint64_t>(s);
        for (const auto agent : {harness::AgentKind::feef, harness::AgentKind::reward_only}) {
            const auto run = run_agent("pendulum", agent, kPendulumEpisodes, seed);
            double tail = 0.0;
            for (std::size_t e = kPendulumEpisodes - kPendulumTail; e < kPendulumEpisodes; ++e)
                tail += run.records[e].total_return / static_cast<double>(kPendulumTail * kPendulumSeeds);
            (agent == harness::AgentKind::feef ? feef_tail : reward_tail) += tail;
        }
    }
    // Returns are negative; "within 10% or better" means feef >= reward - 10% of |reward|.
    const bool pass = feef_tail >= reward_tail - kPendulumRelTol * std::abs(reward_tail);
    return {pass, "mean return over the last 5 episodes: feef " + fmt(feef_tail) + ", reward_only " + fmt(reward_tail) +
                      " (" + std::to_string(kPendulumSeeds) + " seeds)"};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"gradient", gradient},
        {"entropy", entropy},
        {"cem", cem},
        {"tabular_bound", tabular_bound},
        {"tabular_decomposition", tabular_decomposition},
        {"determinism", determinism},
        {"mountain_car", mountain_car},
        {"maze", maze},
        {"pendulum", pendulum},
    };

    CLI::App app{"FEEF acceptance criteria"};
    std::vector<std::string> only;
    bool list = false;
    app.add_option("--only", only, "Run only the named criteria");
    app.add_flag("--list", list, "Print criterion names and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& [name, fn] : criteria)
            std::cout << name << '\n';
        return 0;
    }
    for (const auto& name : only)
        if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == name; })) {
            std::cerr << "unknown criterion: " << name << '\n';
            return 1;
        }

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end())
            continue;
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("threw: ") + e.what()};
        }
        std::cout << (out.pass ? "PASS " : "FAIL ") << name << ": " << out.summary << std::endl;
        failed += !out.pass;
    }
    return failed == 0 ? 0 : 1;
}
