#include "feef/math/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace feef::math {

DiagonalGaussian::DiagonalGaussian(Vector mean_, Vector variance_)
    : mean(std::move(mean_)), variance(std::move(variance_))
{
    require(mean.size() == variance.size(), "DiagonalGaussian: mean and variance sizes differ");
    require(mean.allFinite() && variance.allFinite(), "DiagonalGaussian: non-finite parameters");
    variance = variance.cwiseMax(kMinVariance);
}

double gaussian_kl(const DiagonalGaussian& p, const DiagonalGaussian& q)
{
    require(p.dim() == q.dim(), "gaussian_kl: dimension mismatch");
    double kl = 0.0;
    for (Eigen::Index i = 0; i < p.mean.size(); ++i) {
        const double vp = p.variance(i);
        const double vq = q.variance(i);
        const double diff = p.mean(i) - q.mean(i);
        kl += 0.5 * (std::log(vq / vp) + (vp - vq + diff * diff) / vq);
    }
    return std::max(kl, 0.0);
}

double gaussian_entropy(const DiagonalGaussian& p)
{
    const double c = std::log(2.0 * std::numbers::pi * std::numbers::e);
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.variance.size(); ++i)
        h += 0.5 * (c + std::log(p.variance(i)));
    return h;
}

Vector sample(const DiagonalGaussian& p, Rng& rng)
{
    std::normal_distribution<double> normal;
    Vector x(p.mean.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = p.mean(i) + std::sqrt(p.variance(i)) * normal(rng);
    return x;
}

} // namespace feef::math
