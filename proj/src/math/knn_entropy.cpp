#include "feef/math/knn_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

namespace feef::math {

namespace {

double log_unit_ball_volume(double d)
{
    return 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d + 1.0);
}

// Squared k-th neighbour distance for every point, brute force.
std::vector<double> kth_neighbour_sq(const Matrix& x, std::size_t k)
{
    const Eigen::Index n = x.cols();
    const Eigen::Index d = x.rows();
    std::vector<double> result(static_cast<std::size_t>(n));
    std::vector<double> best(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::fill(best.begin(), best.end(), std::numeric_limits<double>::infinity());
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i)
                continue;
            double dist = 0.0;
            for (Eigen::Index r = 0; r < d; ++r) {
                const double diff = x(r, i) - x(r, j);
                dist += diff * diff;
            }
            if (dist < best.back()) {
                // keep `best` sorted ascending
                auto pos = std::upper_bound(best.begin(), best.end(), dist);
                std::move_backward(pos, best.end() - 1, best.end());
                *pos = dist;
            }
        }
        result[static_cast<std::size_t>(i)] = best.back();
    }
    return result;
}

// k = 1: each pair is visited once, with distances to all later points
// accumulated dimension by dimension over a row-major copy.
std::vector<double> nearest_neighbour_sq(const Matrix& x)
{
    const Eigen::Index n = x.cols();
    const Eigen::Index d = x.rows();
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = x;
    std::vector<double> best(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Eigen::Index m = n - i - 1;
        double* out = dist.data();
        std::fill(out, out + m, 0.0);
        for (Eigen::Index r = 0; r < d; ++r) {
            const double* row = rows.data() + r * n + i + 1;
            const double xi = rows(r, i);
            for (Eigen::Index j = 0; j < m; ++j) {
                const double diff = row[j] - xi;
                out[j] += diff * diff;
            }
        }
        double own = best[static_cast<std::size_t>(i)];
        double* later = best.data() + i + 1;
        for (Eigen::Index j = 0; j < m; ++j) {
            own = std::min(own, out[j]);
            later[j] = std::min(later[j], out[j]);
        }
        best[static_cast<std::size_t>(i)] = own;
    }
    return best;
}

// One-dimensional fast path: neighbours of a sorted sample are adjacent.
std::vector<double> kth_neighbour_sq_1d(const Matrix& x, std::size_t k)
{
    const std::size_t n = static_cast<std::size_t>(x.cols());
    std::vector<double> v(x.data(), x.data() + n);
    std::sort(v.begin(), v.end());
    std::vector<double> result(n);
    for (std::size_t i = 0; i < n; ++i) {
        // merge outward from i, taking k steps
        std::size_t lo = i, hi = i;
        double dist = 0.0;
        for (std::size_t step = 0; step < k; ++step) {
            const double left = lo > 0 ? v[i] - v[lo - 1] : std::numeric_limits<double>::infinity();
            const double right = hi + 1 < n ? v[hi + 1] - v[i] : std::numeric_limits<double>::infinity();
            if (left <= right) {
                dist = left;
                --lo;
            } else {
                dist = right;
                ++hi;
            }
        }
        result[i] = dist * dist;
    }
    return result;
}

} // namespace

double knn_entropy(const Matrix& samples, std::size_t k)
{
    require(k >= 1, "knn_entropy: k must be positive");
    const std::size_t n = static_cast<std::size_t>(samples.cols());
    require(n >= k + 1, "knn_entropy: need at least k+1 samples");
    require(samples.rows() > 0, "knn_entropy: zero-dimensional samples");
    require(samples.allFinite(), "knn_entropy: non-finite sample");

    const double d = static_cast<double>(samples.rows());
    const std::vector<double> sq = samples.rows() == 1 ? kth_neighbour_sq_1d(samples, k)
                                   : k == 1             ? nearest_neighbour_sq(samples)
                                                        : kth_neighbour_sq(samples, k);

    const double floor_sq = kKnnDistanceFloor * kKnnDistanceFloor;
    double sum_log = 0.0;
    for (double s : sq)
        sum_log += 0.5 * std::log(std::max(s, floor_sq));

    const double nn = static_cast<double>(n);
    return boost::math::digamma(nn) - boost::math::digamma(static_cast<double>(k)) + log_unit_ball_volume(d) +
           d * sum_log / nn;
}

} // namespace feef::math
