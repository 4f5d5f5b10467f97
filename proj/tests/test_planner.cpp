#include <doctest.h>

#include <cmath>
#include <limits>

#include "feef/harness/agent.hpp"
#include "feef/planner/cem.hpp"
#include "support/models.hpp"

using namespace feef;
using namespace feef::planner;

namespace {

ScoreFn quadratic(const Matrix& target)
{
    return [target](std::span<const Matrix> cands, Rng&) {
        std::vector<double> s;
        for (const auto& c : cands)
            s.push_back(-(c - target).squaredNorm());
        return s;
    };
}

Matrix one_by(double v) { return Matrix::Constant(1, 1, v); }

} // namespace

TEST_CASE("cem: recovers the optimum of a quadratic")
{
    Matrix target(2, 2);
    target << 0.3, -0.5, 0.8, -0.9;
    CemConfig cfg{200, 20, 7, 2};
    Rng rng(0);
    const auto result = plan(quadratic(target), ActionBounds::symmetric(2, 1.0), cfg, rng);
    CHECK((result.distribution.mean - target).cwiseAbs().maxCoeff() < 0.01);
    CHECK_FALSE(result.diagnostics.degraded);
    CHECK(result.diagnostics.best_per_iteration.size() == 7);
}

TEST_CASE("cem: same seed, same result")
{
    const Matrix target = Matrix::Constant(4, 1, 0.2);
    CemConfig cfg{50, 5, 3, 4};
    Rng a(5), b(5);
    const auto r1 = plan(quadratic(target), ActionBounds::symmetric(1, 1.0), cfg, a);
    const auto r2 = plan(quadratic(target), ActionBounds::symmetric(1, 1.0), cfg, b);
    CHECK(r1.distribution == r2.distribution);
    CHECK(r1.diagnostics.best_per_iteration == r2.diagnostics.best_per_iteration);
}

TEST_CASE("cem: a constant score leaves the mean near zero")
{
    CemConfig cfg{500, 500, 3, 2};
    Rng rng(1);
    const ScoreFn flat = [](std::span<const Matrix> c, Rng&) { return std::vector<double>(c.size(), 1.0); };
    const auto r = plan(flat, ActionBounds::symmetric(2, 1.0), cfg, rng);
    CHECK(r.distribution.mean.cwiseAbs().maxCoeff() < 0.2);
}

TEST_CASE("cem: one iteration with K = J reproduces the clamped N(0, I) moments")
{
    CemConfig cfg{4000, 4000, 1, 3};
    Rng rng(2);
    const ScoreFn flat = [](std::span<const Matrix> c, Rng&) { return std::vector<double>(c.size(), 0.0); };
    const auto r = plan(flat, ActionBounds::symmetric(1, 1.0), cfg, rng);
    // variance of N(0, 1) clamped to [-1, 1], by numerical integration
    constexpr double clamped_variance = 0.5160585509617133;
    CHECK(r.distribution.mean.cwiseAbs().maxCoeff() < 0.05);
    CHECK((r.distribution.variance.array() - clamped_variance).abs().maxCoeff() < 0.05);
}

TEST_CASE("cem: every scored candidate is inside the bounds")
{
    const ActionBounds bounds(Vector::Constant(2, -0.3), Vector::Constant(2, 0.5));
    bool inside = true;
    const ScoreFn check = [&](std::span<const Matrix> cands, Rng&) {
        std::vector<double> s;
        for (const auto& c : cands) {
            for (Eigen::Index t = 0; t < c.rows(); ++t)
                inside = inside && (c.row(t).transpose().array() >= bounds.low.array()).all() &&
                         (c.row(t).transpose().array() <= bounds.high.array()).all();
            s.push_back(c.sum());
        }
        return s;
    };
    Rng rng(3);
    const auto r = plan(check, bounds, CemConfig{100, 10, 4, 6}, rng);
    CHECK(inside);
    const Vector a = act(r.distribution);
    CHECK((a.array() >= bounds.low.array()).all());
    CHECK((a.array() <= bounds.high.array()).all());
}

TEST_CASE("cem: best elite score never decreases for a deterministic objective")
{
    // rugged objective with many local optima
    const ScoreFn rugged = [](std::span<const Matrix> cands, Rng&) {
        std::vector<double> s;
        for (const auto& c : cands)
            s.push_back((c.array() * 7.0).sin().sum() - c.squaredNorm());
        return s;
    };
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const auto r = plan(rugged, ActionBounds::symmetric(1, 1.0), CemConfig{30, 5, 8, 6}, rng);
        const auto& best = r.diagnostics.best_per_iteration;
        for (std::size_t i = 1; i < best.size(); ++i)
            CHECK(best[i] >= best[i - 1]);
    }
}

TEST_CASE("cem: monotone best elite with a mean-propagation planning score")
{
    const testmodels::MountainCarOracle model(2);
    Vector start(2);
    start << -0.5, 0.0;
    const auto score = harness::make_score_fn(harness::AgentKind::reward_only, model, start, {1.0, 1.0}, 10,
                                              objective::Propagation::mean);
    Rng rng(4);
    const auto r = plan(score, ActionBounds::symmetric(1, 1.0), CemConfig{40, 8, 6, 10}, rng);
    const auto& best = r.diagnostics.best_per_iteration;
    for (std::size_t i = 1; i < best.size(); ++i)
        CHECK(best[i] >= best[i - 1]);
}

TEST_CASE("cem: carried elites are scored again")
{
    // A one-off lucky score on the first call must not survive into later iterations.
    int calls = 0;
    const ScoreFn lucky = [&calls](std::span<const Matrix> c, Rng&) {
        std::vector<double> s(c.size(), 0.0);
        if (calls++ == 0)
            s[3] = 100.0;
        return s;
    };
    Rng rng(2);
    const auto r = plan(lucky, ActionBounds::symmetric(1, 1.0), CemConfig{30, 5, 3, 2}, rng);
    CHECK(calls == 3);
    CHECK(r.diagnostics.best_per_iteration == std::vector<double>{100.0, 0.0, 0.0});
}

TEST_CASE("cem: the scorer sees fresh candidates first, then last iteration's elites")
{
    std::vector<std::size_t> sizes;
    const ScoreFn count = [&sizes](std::span<const Matrix> c, Rng&) {
        sizes.push_back(c.size());
        return std::vector<double>(c.size(), 0.0);
    };
    Rng rng(0);
    plan(count, ActionBounds::symmetric(1, 1.0), CemConfig{30, 5, 3, 2}, rng);
    CHECK(sizes == std::vector<std::size_t>{30, 35, 35});

    sizes.clear();
    CemConfig plain{30, 5, 3, 2};
    plain.keep_elites = false;
    plan(count, ActionBounds::symmetric(1, 1.0), plain, rng);
    CHECK(sizes == std::vector<std::size_t>{30, 30, 30});
}

TEST_CASE("score function: shared noise gives equal candidates equal scores")
{
    const testmodels::ShiftModel model({Vector::Constant(1, 0.1), Vector::Constant(1, -0.1)},
                                       {Vector::Constant(1, 0.2), Vector::Constant(1, 0.3)}, 0.0);
    const std::vector<Matrix> same(4, Matrix::Constant(5, 1, 0.2));
    for (const auto kind : {harness::AgentKind::feef, harness::AgentKind::variance}) {
        Rng a(1), b(1);
        const auto shared = harness::make_score_fn(kind, model, Vector::Zero(1), {0.0, 1.0}, 10,
                                                   objective::Propagation::sample, true)(same, a);
        const auto independent = harness::make_score_fn(kind, model, Vector::Zero(1), {0.0, 1.0}, 10,
                                                        objective::Propagation::sample, false)(same, b);
        for (std::size_t j = 1; j < same.size(); ++j)
            CHECK(shared[j] == shared[0]);
        // Independent streams: the first candidate forks exactly what the shared scorer forks once.
        CHECK(independent[0] == shared[0]);
        if (kind == harness::AgentKind::feef)
            CHECK(independent[1] != independent[0]);
    }
}

TEST_CASE("cem: all candidates -inf returns the prior with the degraded flag")
{
    const ScoreFn dead = [](std::span<const Matrix> c, Rng&) {
        return std::vector<double>(c.size(), -std::numeric_limits<double>::infinity());
    };
    Rng rng(0);
    const auto bounds = ActionBounds::symmetric(1, 1.0);
    const auto r = plan(dead, bounds, CemConfig{20, 4, 2, 3}, rng);
    CHECK(r.diagnostics.degraded);
    CHECK(r.distribution == PolicyDist::standard(3, bounds));
}

TEST_CASE("cem: config validation")
{
    CHECK_THROWS_AS((CemConfig{10, 11, 1, 1}.validate()), ContractViolation);
    CHECK_THROWS_AS((CemConfig{10, 0, 1, 1}.validate()), ContractViolation);
    CHECK_THROWS_AS((CemConfig{10, 5, 0, 1}.validate()), ContractViolation);
    CHECK_THROWS_AS((CemConfig{10, 5, 1, 0}.validate()), ContractViolation);
    CHECK_NOTHROW((CemConfig{}.validate()));
    CHECK(CemConfig{}.candidates == 700);
    CHECK(CemConfig{}.elites == 70);
    CHECK(CemConfig{}.iterations == 7);
    CHECK(CemConfig{}.horizon == 30);
}

TEST_CASE("refit: identical elites collapse to the floor")
{
    const auto bounds = ActionBounds::symmetric(1, 5.0);
    const std::vector<Matrix> cands = {one_by(0.7), one_by(0.7), one_by(0.7), one_by(-3.0)};
    const std::vector<double> scores = {2.0, 2.0, 2.0, 1.0};
    const auto d = refit(cands, scores, 3, 1e-3, bounds);
    CHECK(d.mean(0, 0) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(d.variance(0, 0) == 1e-3);
}

TEST_CASE("refit: two-point population moments")
{
    const auto bounds = ActionBounds::symmetric(1, 5.0);
    const std::vector<Matrix> cands = {one_by(0.0), one_by(4.0), one_by(2.0)};
    const std::vector<double> scores = {5.0, -1.0, 4.0};
    const auto d = refit(cands, scores, 2, 1e-3, bounds);
    CHECK(d.mean(0, 0) == 1.0);
    CHECK(d.variance(0, 0) == 1.0);
}

TEST_CASE("refit: order independence and lower-index tie breaking")
{
    const auto bounds = ActionBounds::symmetric(1, 5.0);
    std::vector<Matrix> cands = {one_by(0.1), one_by(0.2), one_by(0.3), one_by(0.4)};
    std::vector<double> scores = {1.0, 4.0, 3.0, 2.0};
    const auto d1 = refit(cands, scores, 2, 1e-3, bounds);
    std::vector<Matrix> perm = {cands[3], cands[1], cands[0], cands[2]};
    std::vector<double> perm_scores = {scores[3], scores[1], scores[0], scores[2]};
    CHECK(refit(perm, perm_scores, 2, 1e-3, bounds) == d1);

    const std::vector<double> tied = {1.0, 1.0, 1.0, 1.0};
    CHECK(refit(cands, tied, 1, 1e-3, bounds).mean(0, 0) == 0.1);
}

TEST_CASE("refit: clamps the mean and needs enough finite scores")
{
    const auto bounds = ActionBounds::symmetric(1, 1.0);
    const std::vector<Matrix> cands = {one_by(3.0), one_by(2.0), one_by(0.0)};
    const std::vector<double> scores = {1.0, 1.0, -std::numeric_limits<double>::infinity()};
    CHECK(refit(cands, scores, 2, 1e-3, bounds).mean(0, 0) == 1.0);
    CHECK_THROWS_AS(refit(cands, scores, 3, 1e-3, bounds), ContractViolation);
}

TEST_CASE("act: first mean action, clamped, independent of variance")
{
    const auto bounds = ActionBounds::symmetric(1, 1.0);
    PolicyDist d = PolicyDist::standard(3, bounds);
    d.mean(0, 0) = 0.4;
    d.mean(1, 0) = 0.9;
    CHECK(act(d)(0) == 0.4);
    d.variance.setConstant(17.0);
    CHECK(act(d)(0) == 0.4);
    d.mean(0, 0) = 2.0;
    CHECK(act(d)(0) == 1.0);
}

TEST_CASE("policy_weights")
{
    const std::vector<double> eq(5, 0.3);
    const Vector w = policy_weights(eq);
    CHECK((w.array() - 0.2).abs().maxCoeff() < 1e-15);

    const std::vector<double> s = {1.0, -std::numeric_limits<double>::infinity(), 3.0, 2.0};
    const Vector p = policy_weights(s);
    CHECK(p(1) == 0.0);
    Eigen::Index arg = 0;
    p.maxCoeff(&arg);
    CHECK(arg == 2);
}
