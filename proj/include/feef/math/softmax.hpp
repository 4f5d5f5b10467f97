#ifndef FEEF_MATH_SOFTMAX_HPP
#define FEEF_MATH_SOFTMAX_HPP

#include "feef/common.hpp"

namespace feef::math {

/// Max-shifted softmax. -inf entries get weight 0; if every entry is -inf the result is uniform.
Vector softmax_stable(const Vector& values);

} // namespace feef::math

#endif
