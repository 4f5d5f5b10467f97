#include "feef/envs/point_maze.hpp"

#include <algorithm>

namespace feef::envs {

namespace {

constexpr double kHalfThickness = 0.02;

struct AxisMove {
    double position;
    bool blocked;
};

// Moves one coordinate by `delta`. Only walls whose extent on the other axis
// strictly contains `other` can block.
AxisMove move_axis(double from, double delta, double other, const std::vector<Wall>& walls, bool along_x)
{
    double to = from + delta;
    bool blocked = false;
    for (const auto& w : walls) {
        const double o_lo = along_x ? w.y0 : w.x0;
        const double o_hi = along_x ? w.y1 : w.x1;
        if (!(other > o_lo && other < o_hi))
            continue;
        const double lo = along_x ? w.x0 : w.y0;
        const double hi = along_x ? w.x1 : w.y1;
        if (delta > 0.0 && from <= lo && to > lo) {
            to = lo;
            blocked = true;
        } else if (delta < 0.0 && from >= hi && to < hi) {
            to = hi;
            blocked = true;
        }
    }
    if (to > PointMaze::kArena || to < -PointMaze::kArena) {
        to = std::clamp(to, -PointMaze::kArena, PointMaze::kArena);
        blocked = true;
    }
    return {to, blocked};
}

} // namespace

PointMaze::PointMaze()
{
    spec_.name = "point_maze";
    spec_.state_dim = 4;
    spec_.action_dim = 2;
    spec_.action_low = Vector::Constant(2, -1.0);
    spec_.action_high = Vector::Constant(2, 1.0);
    spec_.max_steps = 300;
    spec_.r_max = 0.0;

    const double t = kHalfThickness;
    // Vertical arm at x = 0 with doorways at y in [-0.6, -0.4] and [0.4, 0.6].
    walls_.push_back({-t, t, -1.0, -0.6});
    walls_.push_back({-t, t, -0.4, 0.4});
    walls_.push_back({-t, t, 0.6, 1.0});
    // Horizontal arm at y = 0 with doorways at x in [-0.6, -0.4] and [0.4, 0.6].
    walls_.push_back({-1.0, -0.6, -t, t});
    walls_.push_back({-0.4, 0.4, -t, t});
    walls_.push_back({0.6, 1.0, -t, t});
}

bool PointMaze::inside_wall(double x, double y) const
{
    return std::any_of(walls_.begin(), walls_.end(), [&](const Wall& w) { return w.contains(x, y); });
}

Vector PointMaze::reset(std::uint64_t seed) const
{
    Rng rng(seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    Vector s = Vector::Zero(4);
    s(0) = -0.5 + jitter(rng);
    s(1) = -0.5 + jitter(rng);
    return s;
}

StepResult PointMaze::step(const Vector& state, const Vector& action) const
{
    require(state.size() == 4 && action.size() == 2, "PointMaze::step: expected 4-d state and 2-d action");
    const double ax = std::clamp(action(0), -1.0, 1.0);
    const double ay = std::clamp(action(1), -1.0, 1.0);
    double vx = kDamping * state(2) + kGain * ax;
    double vy = kDamping * state(3) + kGain * ay;

    const auto mx = move_axis(state(0), vx, state(1), walls_, true);
    if (mx.blocked)
        vx = 0.0;
    const auto my = move_axis(state(1), vy, mx.position, walls_, false);
    if (my.blocked)
        vy = 0.0;

    StepResult r;
    r.next_state.resize(4);
    r.next_state << mx.position, my.position, vx, vy;
    r.reward = 0.0;
    r.done = false;
    return r;
}

CoverageGrid PointMaze::coverage_grid() const
{
    return CoverageGrid(Vector::Constant(2, -kArena), Vector::Constant(2, kArena), {20, 20});
}

} // namespace feef::envs
