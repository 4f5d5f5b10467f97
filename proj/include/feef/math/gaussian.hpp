#ifndef FEEF_MATH_GAUSSIAN_HPP
#define FEEF_MATH_GAUSSIAN_HPP

#include "feef/common.hpp"

namespace feef::math {

/// Smallest variance a DiagonalGaussian may carry (environment units).
inline constexpr double kMinVariance = 1e-12;

/// Independent Gaussian per dimension. Variances are in squared units of the mean.
struct DiagonalGaussian {
    Vector mean;
    Vector variance;

    DiagonalGaussian() = default;
    /// Floors every variance at kMinVariance. Throws on size mismatch or non-finite entries.
    DiagonalGaussian(Vector mean_, Vector variance_);

    std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }

    friend bool operator==(const DiagonalGaussian& a, const DiagonalGaussian& b)
    {
        return a.mean == b.mean && a.variance == b.variance;
    }
};

/// KL(p || q) in nats, summed over dimensions.
double gaussian_kl(const DiagonalGaussian& p, const DiagonalGaussian& q);

/// Differential entropy in nats: sum of 0.5 ln(2 pi e var).
double gaussian_entropy(const DiagonalGaussian& p);

/// Draws one sample.
Vector sample(const DiagonalGaussian& p, Rng& rng);

} // namespace feef::math

#endif
