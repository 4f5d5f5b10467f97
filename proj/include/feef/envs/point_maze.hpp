#ifndef FEEF_ENVS_POINT_MAZE_HPP
#define FEEF_ENVS_POINT_MAZE_HPP

#include <vector>

#include "feef/envs/environment.hpp"

namespace feef::envs {

/// Axis-aligned solid rectangle. Its interior is the open box; the faces are walkable.
struct Wall {
    double x0, x1, y0, y1;

    bool contains(double x, double y) const { return x > x0 && x < x1 && y > y0 && y < y1; }
};

/**
 * Point mass in [-1, 1]^2 split into four rooms by a cross of walls, each arm
 * with one doorway of width 0.2. State (x, y, vx, vy), action in [-1, 1]^2.
 *
 *   v <- 0.8 v + 0.01 a
 *   x and y move in turn; a move that would enter a wall or leave the arena
 *   stops at the face and zeroes that velocity component.
 *
 * Reward is always 0. Episodes last 300 steps from (-0.5, -0.5) +- 0.05.
 */
class PointMaze final : public Environment {
public:
    static constexpr double kArena = 1.0;
    static constexpr double kDamping = 0.8;
    static constexpr double kGain = 0.01;

    PointMaze();

    const EnvSpec& spec() const override { return spec_; }
    Vector reset(std::uint64_t seed) const override;
    StepResult step(const Vector& state, const Vector& action) const override;
    CoverageGrid coverage_grid() const override;
    Vector coverage_point(const Vector& state) const override { return state.head(2); }

    const std::vector<Wall>& walls() const { return walls_; }
    bool inside_wall(double x, double y) const;

private:
    EnvSpec spec_;
    std::vector<Wall> walls_;
};

} // namespace feef::envs

#endif
