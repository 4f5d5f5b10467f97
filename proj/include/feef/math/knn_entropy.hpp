#ifndef FEEF_MATH_KNN_ENTROPY_HPP
#define FEEF_MATH_KNN_ENTROPY_HPP

#include <cstddef>

#include "feef/common.hpp"

namespace feef::math {

/// Distances below this are raised to it before taking logs, so coincident points stay finite.
inline constexpr double kKnnDistanceFloor = 1e-12;

/**
 * Kozachenko-Leonenko differential entropy estimate (nats) from samples given
 * as columns of a d x N matrix:
 *
 *   H = psi(N) - psi(k) + ln V_d + (d/N) sum_i ln eps_i
 *
 * where eps_i is the Euclidean distance from sample i to its k-th nearest
 * neighbour and V_d the volume of the unit d-ball.
 *
 * Requires N >= k + 1 finite samples.
 */
double knn_entropy(const Matrix& samples, std::size_t k = 1);

} // namespace feef::math

#endif
