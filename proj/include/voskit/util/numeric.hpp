#pragma once

#include <cmath>
#include <string>

namespace voskit::util {

// Overflow-safe logistic sigmoid.
inline double stable_sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

// Fixed 4-decimal display rounding, half away from zero. Goes through integer
// ten-thousandths so the printed digits never depend on a second float
// rounding.
std::string format_fixed4(double v);

} // namespace voskit::util
