#pragma once

// Uniform-field building blocks: the plane (Landau-level) heat kernel in
// Cartesian and polar form, the heat kernel on the universal cover of the
// once-punctured plane, gauge transport of kernels, and the image-sum
// (Schulman-Sunada) consistency residual.
//
// Everything solves (d/dt + H_B) p = 0 with
//   H_B = -(1/2) [ (d_1 - i(omega_c/2) x_2)^2 + (d_2 + i(omega_c/2) x_1)^2 ],
// the symmetric-gauge operator whose kernel carries the phase
// e^{ i (omega_c/2) x^x0 }.

#include "abheat/model.hpp"
#include "abheat/quad.hpp"
#include "abheat/specfun.hpp"

namespace abheat::landau {

// p_t(x, x0) = omega_c/(4 pi sinh(omega_c t/2))
//   exp( -(omega_c/4)|x - x0|^2 coth(omega_c t/2) + i(omega_c/2) x^x0 )
inline cplx plane_kernel(const BiPolarPoint& x, const BiPolarPoint& x0,
                         double t, const ModelParams& prm) {
    if (!(t > 0.0)) throw std::domain_error("plane_kernel: t must be > 0");
    const double T = 0.5 * prm.omega_c * t;
    const double sh = std::sinh(T);
    const double d1 = x.x1 - x0.x1, d2 = x.x2 - x0.x2;
    const cplx expo(-(prm.omega_c / 4.0) * (d1 * d1 + d2 * d2) *
                        (std::cosh(T) / sh),
                    0.5 * prm.omega_c * wedge(x.x1, x.x2, x0.x1, x0.x2));
    return prm.omega_c / (4.0 * pi * sh) * std::exp(expo);
}

// same kernel about a puncture at the origin; theta - theta0 enters only
// through cosh(T - i(theta - theta0)), so the expression is 2pi-periodic
inline cplx plane_kernel_polar(double r, double theta, double r0,
                               double theta0, double t,
                               const ModelParams& prm) {
    if (!(t > 0.0))
        throw std::domain_error("plane_kernel_polar: t must be > 0");
    const double T = 0.5 * prm.omega_c * t;
    const double sh = std::sinh(T);
    const double xb = prm.omega_c * r * r0 / (2.0 * sh);
    const cplx expo =
        -(prm.omega_c / 4.0) * (r * r + r0 * r0) * (std::cosh(T) / sh) +
        xb * std::cosh(cplx(T, -(theta - theta0)));
    return prm.omega_c / (4.0 * pi * sh) * std::exp(expo);
}

enum class CoveringForm {
    direct,        // quadrature of the Bessel p-integral
    decomposition, // Heaviside plane term + cosh-damped pole integral
};

// Heat kernel on the universal cover (theta unrestricted). The two forms
// are independent evaluation paths kept as mutual oracles:
//   direct:         pref G int_R e^{-(T - i dth) p} I_|p|(x_B) dp
//   decomposition:  theta(pi - |dth|) p_t^polar
//                   + pref G (1/2 pi i)
//                     int_R e^{-x_B cosh u} [ (u - T + i(dth+pi))^-1
//                                           - (u - T + i(dth-pi))^-1 ] du
// with T = omega_c t/2, x_B = omega_c r r0 / (2 sinh T) and the Gaussian
// factor G = e^{-(omega_c/4)(r^2+r0^2) coth T}. The phase e^{+i dth p}
// is fixed by the eigenfunction expansion (angular factor e^{ip(theta -
// theta0)}) and by the requirement that the |dth| < pi main term reduce
// to the plane kernel.
// The direct form oscillates like e^{i dth p}: keep |dth| moderate. The
// decomposition form has a pole on the contour at |dth| = pi exactly.
inline cplx covering_kernel_1(double r, double theta, double r0,
                              double theta0, double t, const ModelParams& prm,
                              CoveringForm form = CoveringForm::decomposition,
                              const quad::Spec& qs = quad::Spec{}) {
    if (!(r > 0.0 && r0 > 0.0))
        throw std::domain_error("covering_kernel_1: needs r, r0 > 0");
    if (!(t > 0.0)) throw std::domain_error("covering_kernel_1: t must be > 0");
    const double T = 0.5 * prm.omega_c * t;
    const double sh = std::sinh(T);
    const double xb = prm.omega_c * r * r0 / (2.0 * sh);
    const double pref = prm.omega_c / (4.0 * pi * sh);
    const double dth = theta - theta0;
    const double gauss =
        std::exp(-(prm.omega_c / 4.0) * (r * r + r0 * r0) * (std::cosh(T) / sh));

    if (form == CoveringForm::direct) {
        auto f = [&](double p) -> cplx {
            const double besi = specfun::bessel_i(std::abs(p), xb);
            if (besi <= 0.0) return 0.0;
            const double m = -T * p;
            // I_nu decays super-exponentially in nu and wins against
            // e^{T|p|}; go through logs when the bare factor would overflow
            const double mag =
                m > 600.0 ? std::exp(m + std::log(besi)) : std::exp(m) * besi;
            return std::polar(mag, dth * p);
        };
        return pref * gauss * quad::integrate_line(f, qs).value;
    }

    const cplx main = std::abs(dth) < pi
                          ? plane_kernel_polar(r, theta, r0, theta0, t, prm)
                          : cplx(0.0);
    auto g = [&](double u) -> cplx {
        const double damp = xb * std::cosh(u);
        if (damp > 700.0) return 0.0;
        const cplx za(u - T, dth + pi);
        const cplx zb(u - T, dth - pi);
        return std::exp(-damp) * (1.0 / za - 1.0 / zb);
    };
    const cplx integral = quad::integrate_line(g, qs).value;
    return main + pref * gauss * integral * cplx(0.0, -0.5 / pi);
}

// | sum_{|n| <= N} ptilde(r, theta + 2 pi n; r0, 0) - p_t^polar | : the
// image sum over deck transformations must rebuild the plane kernel. The
// tail of the pole integral decays only like 1/n, so the residual decays
// like 1/N.
inline double periodization_check(double r, double theta, double r0, double t,
                                  const ModelParams& prm, int N,
                                  const quad::Spec& qs = quad::Spec{}) {
    if (N < 1) throw std::domain_error("periodization_check: N must be >= 1");
    ComplexCompensatedSum sum;
    for (int n = -N; n <= N; ++n)
        sum.add(covering_kernel_1(r, theta + two_pi * n, r0, 0.0, t, prm,
                                  CoveringForm::decomposition, qs));
    return std::abs(sum.value() -
                    plane_kernel_polar(r, theta, r0, 0.0, t, prm));
}

// moving the gauge origin to y multiplies kernels by
// e^{ i (omega_c/2) y^x } e^{ -i (omega_c/2) y^x0 }
inline cplx gauge_shift(cplx kernel_value, const BiPolarPoint& x,
                        const BiPolarPoint& x0, double y1, double y2,
                        const ModelParams& prm) {
    const double phase = 0.5 * prm.omega_c *
                         (wedge(y1, y2, x.x1, x.x2) -
                          wedge(y1, y2, x0.x1, x0.x2));
    return kernel_value * std::polar(1.0, phase);
}

} // namespace abheat::landau
