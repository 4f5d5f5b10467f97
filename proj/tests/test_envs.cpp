#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "feef/envs/coverage.hpp"
#include "feef/envs/mountain_car.hpp"
#include "feef/envs/pendulum.hpp"
#include "feef/envs/point_maze.hpp"
#include "feef/envs/registry.hpp"

using namespace feef;
using namespace feef::envs;

namespace {

Vector v1(double a) { return Vector::Constant(1, a); }

Vector mc(double p, double v)
{
    Vector s(2);
    s << p, v;
    return s;
}

} // namespace

TEST_CASE("mountain car: reset")
{
    const MountainCar env;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto s = env.reset(seed);
        CHECK(s(0) >= -0.6);
        CHECK(s(0) <= -0.4);
        CHECK(s(1) == 0.0);
        CHECK(env.reset(seed) == s);
    }
    CHECK(env.reset(1) != env.reset(2));
}

TEST_CASE("mountain car: goal gives reward 1 and ends the episode")
{
    const MountainCar env;
    const auto r = env.step(mc(0.44, 0.05), v1(1.0));
    CHECK(r.next_state(0) >= 0.45);
    CHECK(r.reward == 1.0);
    CHECK(r.done);
    const auto below = env.step(mc(0.0, 0.0), v1(0.0));
    CHECK(below.reward == 0.0);
    CHECK_FALSE(below.done);
}

TEST_CASE("mountain car: zero action at rest in the valley barely moves")
{
    const MountainCar env;
    const double bottom = -std::numbers::pi / 6.0;
    const auto r = env.step(mc(bottom, 0.0), v1(0.0));
    CHECK(r.reward == 0.0);
    CHECK(std::abs(r.next_state(0) - bottom) < 1e-3);
}

TEST_CASE("mountain car: ranges, rewards and the left wall")
{
    const MountainCar env;
    Rng rng(0);
    std::uniform_real_distribution<double> a(-3.0, 3.0);
    for (std::uint64_t ep = 0; ep < 20; ++ep) {
        auto s = env.reset(ep);
        for (int t = 0; t < 200; ++t) {
            const auto r = env.step(s, v1(a(rng)));
            CHECK((r.reward == 0.0 || r.reward == 1.0));
            if (r.reward == 1.0)
                CHECK(r.done);
            CHECK(r.next_state(0) >= MountainCar::kMinPosition);
            CHECK(r.next_state(0) <= MountainCar::kMaxPosition);
            CHECK(std::abs(r.next_state(1)) <= MountainCar::kMaxSpeed);
            CHECK(env.step(s, v1(0.3)).next_state == env.step(s, v1(0.3)).next_state);
            s = r.next_state;
            if (r.done)
                break;
        }
    }
    const auto wall = env.step(mc(-1.19, -0.07), v1(-1.0));
    CHECK(wall.next_state(0) == MountainCar::kMinPosition);
    CHECK(wall.next_state(1) == 0.0);
}

TEST_CASE("mountain car: energy does not grow without actuation")
{
    // The update is semi-implicit Euler, so mechanical energy oscillates by
    // O(step) around a conserved shadow value; both are checked.
    const MountainCar env;
    const double c = MountainCar::kGravity;
    auto shadow = [&](const Vector& s) {
        return MountainCar::mechanical_energy(s) - 0.5 * s(1) * c * std::cos(3.0 * s(0));
    };
    Rng rng(1);
    std::uniform_real_distribution<double> p(-1.2, 0.4), v(-0.05, 0.05);
    for (int run = 0; run < 100; ++run) {
        Vector s = mc(p(rng), v(rng));
        for (int t = 0; t < 300; ++t) {
            const auto r = env.step(s, v1(0.0));
            if (r.done)
                break;
            CHECK(MountainCar::mechanical_energy(r.next_state) <= MountainCar::mechanical_energy(s) + 5e-5);
            CHECK(shadow(r.next_state) <= shadow(s) + 1e-6);
            s = r.next_state;
        }
    }
}

TEST_CASE("pendulum: reset hangs down at rest")
{
    const Pendulum env;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = env.reset(seed);
        const double theta = std::atan2(s(1), s(0));
        CHECK(std::abs(std::abs(theta) - std::numbers::pi) <= 0.1 + 1e-12);
        CHECK(s(2) == 0.0);
        CHECK(env.reset(seed) == s);
    }
}

TEST_CASE("pendulum: reward is at most zero, with zero only upright and still")
{
    const Pendulum env;
    const auto top = env.step(Pendulum::observe(0.0, 0.0), v1(0.0));
    CHECK(top.reward == 0.0);
    CHECK(top.next_state == Pendulum::observe(0.0, 0.0));
    CHECK(env.step(Pendulum::observe(0.0, 0.0), v1(0.5)).reward < 0.0);

    Rng rng(2);
    std::uniform_real_distribution<double> th(-4.0, 4.0), om(-8.0, 8.0), a(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const auto r = env.step(Pendulum::observe(th(rng), om(rng)), v1(a(rng)));
        CHECK(r.reward < 0.0);
        CHECK(std::abs(r.next_state(0) * r.next_state(0) + r.next_state(1) * r.next_state(1) - 1.0) < 1e-12);
        CHECK(std::abs(r.next_state(2)) <= Pendulum::kMaxSpeed);
        CHECK_FALSE(r.done);
    }
}

TEST_CASE("pendulum: one step of the documented dynamics")
{
    const Pendulum env;
    const double theta = 2.0, omega = 1.0, a = 0.5;
    const double w = omega + 0.05 * (10.0 * std::sin(theta) + 15.0 * a);
    const double t = theta + 0.05 * w;
    const auto r = env.step(Pendulum::observe(theta, omega), v1(a));
    CHECK(r.next_state(2) == doctest::Approx(w).epsilon(1e-14));
    CHECK(std::atan2(r.next_state(1), r.next_state(0)) == doctest::Approx(t).epsilon(1e-12));
    const double err = t; // already in (-pi, pi]
    CHECK(r.reward == doctest::Approx(-(err * err + 0.1 * w * w + 0.001 * a * a)).epsilon(1e-12));
}

TEST_CASE("point maze: reward is always zero and walls hold")
{
    const PointMaze env;
    Rng rng(3);
    std::uniform_real_distribution<double> a(-1.5, 1.5);
    std::bernoulli_distribution flip(0.05);
    for (std::uint64_t ep = 0; ep < 20; ++ep) {
        auto s = env.reset(ep);
        Vector push(2);
        push << a(rng), a(rng);
        for (int t = 0; t < 1000; ++t) {
            if (flip(rng))
                push << a(rng), a(rng);
            const auto r = env.step(s, push);
            CHECK(r.reward == 0.0);
            CHECK_FALSE(env.inside_wall(r.next_state(0), r.next_state(1)));
            CHECK(std::abs(r.next_state(0)) <= 1.0);
            CHECK(std::abs(r.next_state(1)) <= 1.0);
            s = r.next_state;
        }
    }
}

TEST_CASE("point maze: hitting a wall stops at its face and zeroes that velocity")
{
    const PointMaze env;
    Vector s(4);
    s << -0.05, -0.2, 0.06, 0.0; // heading right into the central vertical wall
    const auto r = env.step(s, Vector::Zero(2));
    CHECK(r.next_state(0) == -0.02);
    CHECK(r.next_state(2) == 0.0);
    CHECK(r.next_state(1) == -0.2);

    s << -0.5, -0.5, 0.0, 0.0;
    Vector a(2);
    a << 0.5, -0.5;
    const auto free = env.step(s, a);
    CHECK(free.next_state(2) == doctest::Approx(0.005));
    CHECK(free.next_state(3) == doctest::Approx(-0.005));
    CHECK(free.next_state(0) == doctest::Approx(-0.495));
}

TEST_CASE("point maze: doorways connect the rooms")
{
    const PointMaze env;
    Vector s(4);
    s << -0.1, -0.5, 0.0, 0.0; // in front of the lower doorway of the vertical wall
    Vector right(2);
    right << 1.0, 0.0;
    for (int t = 0; t < 30; ++t)
        s = env.step(s, right).next_state;
    CHECK(s(0) > 0.1);
}

TEST_CASE("coverage fraction")
{
    const CoverageGrid grid(Vector::Zero(2), Vector::Ones(2), {10, 10});
    CHECK(coverage_fraction(grid, {}) == 0.0);

    std::vector<Vector> all, row;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            Vector p(2);
            p << (i + 0.5) / 10.0, (j + 0.5) / 10.0;
            all.push_back(p);
            if (i == 3)
                row.push_back(p);
        }
    CHECK(coverage_fraction(grid, all) == 1.0);
    CHECK(coverage_fraction(grid, row) == doctest::Approx(0.10));

    CoverageGrid g = grid;
    Vector far(2);
    far << 5.0, -5.0;
    g.add(far);
    CHECK(g.occupied(g.bin_index((Vector(2) << 0.99, 0.0).finished())));
    double prev = g.fraction();
    for (const auto& p : all) {
        g.add(p);
        CHECK(g.fraction() >= prev);
        prev = g.fraction();
    }
    CHECK(g.fraction() == 1.0);
}

TEST_CASE("registry")
{
    for (const auto& name : environment_names()) {
        const auto env = make_environment(name);
        CHECK(env->spec().name == name);
        CHECK(env->spec().action_low.size() == static_cast<Eigen::Index>(env->spec().action_dim));
        CHECK(env->reset(0).size() == static_cast<Eigen::Index>(env->spec().state_dim));
    }
    CHECK(make_environment("mountain_car")->spec().r_max == 1.0);
    CHECK(make_environment("pendulum")->spec().r_max == 0.0);
    CHECK(make_environment("point_maze")->spec().max_steps == 300);
    CHECK(make_environment("mountain_car")->spec().max_steps == 200);
    CHECK_THROWS_AS(make_environment("cheetah"), ContractViolation);
}
