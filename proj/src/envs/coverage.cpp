#include "feef/envs/coverage.hpp"

#include <algorithm>
#include <cmath>

namespace feef::envs {

CoverageGrid::CoverageGrid(Vector low, Vector high, std::vector<std::size_t> bins)
    : low_(std::move(low)), high_(std::move(high)), bins_(std::move(bins))
{
    require(!bins_.empty() && static_cast<std::size_t>(low_.size()) == bins_.size() &&
                static_cast<std::size_t>(high_.size()) == bins_.size(),
            "CoverageGrid: low, high and bins must have the same positive size");
    require((low_.array() < high_.array()).all(), "CoverageGrid: low must be below high");
    std::size_t total = 1;
    for (auto b : bins_) {
        require(b >= 1, "CoverageGrid: bin counts must be positive");
        total *= b;
    }
    occupied_.assign(total, false);
}

double CoverageGrid::fraction() const
{
    return static_cast<double>(count_) / static_cast<double>(occupied_.size());
}

std::size_t CoverageGrid::bin_index(const Vector& point) const
{
    require(static_cast<std::size_t>(point.size()) == bins_.size(), "CoverageGrid: point dimension mismatch");
    std::size_t index = 0;
    for (std::size_t d = 0; d < bins_.size(); ++d) {
        const auto i = static_cast<Eigen::Index>(d);
        const double u = (point(i) - low_(i)) / (high_(i) - low_(i));
        const double scaled = std::isnan(u) ? 0.0 : std::floor(u * static_cast<double>(bins_[d]));
        const auto bin = static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(bins_[d] - 1)));
        index = index * bins_[d] + bin;
    }
    return index;
}

void CoverageGrid::add(const Vector& point)
{
    const auto i = bin_index(point);
    if (!occupied_[i]) {
        occupied_[i] = true;
        ++count_;
    }
}

void CoverageGrid::clear()
{
    std::fill(occupied_.begin(), occupied_.end(), false);
    count_ = 0;
}

double coverage_fraction(const CoverageGrid& grid, std::span<const Vector> points)
{
    CoverageGrid fresh = grid;
    fresh.clear();
    for (const auto& p : points)
        fresh.add(p);
    return fresh.fraction();
}

} // namespace feef::envs
