#include "feef/math/softmax.hpp"

#include <cmath>
#include <limits>

namespace feef::math {

Vector softmax_stable(const Vector& values)
{
    const Eigen::Index n = values.size();
    if (n == 0)
        return values;
    const double top = values.maxCoeff();
    if (top == -std::numeric_limits<double>::infinity())
        return Vector::Constant(n, 1.0 / static_cast<double>(n));
    Vector w = (values.array() - top).exp().matrix();
    return w / w.sum();
}

} // namespace feef::math
