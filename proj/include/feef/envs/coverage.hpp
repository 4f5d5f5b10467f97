#ifndef FEEF_ENVS_COVERAGE_HPP
#define FEEF_ENVS_COVERAGE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "feef/common.hpp"

namespace feef::envs {

/// Occupancy grid over a box. Points outside the box count toward the nearest edge bin.
class CoverageGrid {
public:
    CoverageGrid(Vector low, Vector high, std::vector<std::size_t> bins);

    std::size_t dim() const { return bins_.size(); }
    std::size_t total_bins() const { return occupied_.size(); }
    std::size_t occupied_bins() const { return count_; }
    double fraction() const;

    std::size_t bin_index(const Vector& point) const;
    void add(const Vector& point);
    bool occupied(std::size_t index) const { return occupied_.at(index); }
    void clear();

    const Vector& low() const { return low_; }
    const Vector& high() const { return high_; }
    const std::vector<std::size_t>& bins() const { return bins_; }

private:
    Vector low_;
    Vector high_;
    std::vector<std::size_t> bins_;
    std::vector<bool> occupied_;
    std::size_t count_ = 0;
};

/// Fraction of bins of an empty copy of `grid` hit by `points`.
double coverage_fraction(const CoverageGrid& grid, std::span<const Vector> points);

} // namespace feef::envs

#endif
