#pragma once

// Central finite differences with magnitude-scaled steps.  Used for the
// catalog partial-derivative audits, for user-supplied fields without closed
// partials, and for converse-characteristic checks.

#include <cmath>
#include <functional>

namespace bck {

/// Step for first derivatives: 1e-6 * max(1, |x|).
inline double fd_step(double x) {
    return 1e-6 * std::max(1.0, std::abs(x));
}

/// Step for second derivatives from values: 1e-4 * max(1, |x|) balances
/// truncation against roundoff in the second difference.
inline double fd_step2(double x) {
    return 1e-4 * std::max(1.0, std::abs(x));
}

/// d/dx f(x) by central difference.
inline double fd_derivative(const std::function<double(double)>& f, double x) {
    const double h = fd_step(x);
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// d2/dx2 f(x) by second central difference of values.
inline double fd_second(const std::function<double(double)>& f, double x) {
    const double h = fd_step2(x);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// d2/dxdy f(x, y) by the four-point cross difference of values.
inline double fd_mixed(const std::function<double(double, double)>& f,
                       double x, double y) {
    const double hx = fd_step2(x);
    const double hy = fd_step2(y);
    return (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) +
            f(x - hx, y - hy)) /
           (4.0 * hx * hy);
}

}  // namespace bck
