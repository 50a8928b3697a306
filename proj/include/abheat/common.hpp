#pragma once

// Shared scalar types and small numeric helpers used across the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace abheat {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle to (-pi, pi]; exactly -pi maps to +pi.
inline double wrap_angle(double theta) {
    double w = std::remainder(theta, two_pi);
    if (w <= -pi) w = pi;
    return w;
}

// Neumaier-compensated accumulator. Cheap insurance for the long
// alternating series used by the test oracles and identity checks.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct ComplexCompensatedSum {
    CompensatedSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

} // namespace abheat
