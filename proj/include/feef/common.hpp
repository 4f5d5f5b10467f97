#ifndef FEEF_COMMON_HPP
#define FEEF_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace feef {

using Rng = std::mt19937_64;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Flat storage viewed through Eigen maps. Eigen peels unaligned heads off
/// vectorised loops, so the summation order depends on the base address;
/// fixed alignment keeps results bit-identical from run to run.
using AlignedBuffer = std::vector<double, Eigen::aligned_allocator<double>>;

/// Raised when a caller breaks a documented precondition (shapes, indices, counts).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw ContractViolation(message);
}

/// Draws a fresh 64-bit seed from a parent stream. Used to hand independent
/// streams to members, candidates and episodes in a fixed order.
inline std::uint64_t fork_seed(Rng& parent) { return parent(); }

/// An engine together with its standard-normal distribution, so the spare value the
/// distribution caches stays with the stream that produced it.
struct RandomStream {
    Rng engine;
    std::normal_distribution<double> normal;

    explicit RandomStream(std::uint64_t seed = Rng::default_seed) : engine(seed) {}

    double gaussian() { return normal(engine); }
};

} // namespace feef

#endif
