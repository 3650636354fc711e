#pragma once

#include <functional>

namespace stabrad {

struct LineMaximum {
    double arg = 0.0;
    double value = 0.0;
};

// Global maximum of a continuous g over the real line, given a window
// [-half_width, half_width] outside of which g is dominated by the
// decreasing envelope(|s|). Dense grid scan (step from the caller's
// Lipschitz estimate) + golden-section refinement around every
// competitive local maximum.
LineMaximum maximize_on_line(const std::function<double(double)>& g, double half_width,
                             const std::function<double(double)>& envelope, double lipschitz,
                             double tol);

}  // namespace stabrad
