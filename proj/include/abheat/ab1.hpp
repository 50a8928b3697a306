#pragma once

// One-vortex heat kernel in a uniform field (flux alpha at the origin,
// reference angle theta0 = 0), in three evaluation forms kept as mutual
// oracles:
//   integral          plane-kernel-like term minus (sin(pi alpha)/pi) times
//                     a cosh-damped line integral; valid off the cut,
//                     |theta| < pi
//   eigen_expansion   sum over Landau index n and angular number m of
//                     e^{-t lambda} f_{n,m}(r,theta) conj(f_{n,m}(r0,0))
//   asymptotic_2term  e^{-omega_c t/2} (lowest-level projection kernel)
//                     + e^{-(alpha+1/2) omega_c t} (bound-state dyad),
//                     remainder O(e^{-3 omega_c t/2})
// plus the lowest-level projection identity that ties the integral and
// series representations together.

#include "abheat/landau.hpp"

namespace abheat::ab1 {

enum class Form { integral, eigen_expansion, asymptotic_2term };

// truncation of the eigenfunction expansion: positive m are pushed up by
// omega_c per unit so a short window suffices; every m < 0 sits exactly on
// its Landau level, so the left window must instead outrun the factor
// (omega_c r r0 / 2)^{|m+alpha|} / Gamma(n + |m+alpha| + 1)
struct Selector {
    Form form = Form::integral;
    int n_max = 40;
    int m_lo = -80;
    int m_hi = 40;

    void require_valid() const {
        if (n_max < 0) throw std::domain_error("ab1: n_max must be >= 0");
        if (!(m_lo <= 0 && 0 <= m_hi))
            throw std::domain_error("ab1: m window must straddle 0");
    }
};

namespace detail {

inline void require_point(double r, double theta, double r0, double t) {
    if (!(std::abs(theta) < pi))
        throw std::domain_error("ab1: point on the cut (|theta| must be < pi)");
    if (!(r > 0.0 && r0 > 0.0))
        throw std::domain_error("ab1: needs r, r0 > 0");
    if (!(t > 0.0)) throw std::domain_error("ab1: t must be > 0");
}

// the one-sided integrands below decay only like e^{alpha u} to the left;
// push u_max out until the discarded tail is below 1e-13/alpha
inline quad::Spec widen_for_left_tail(const quad::Spec& qs, double alpha) {
    quad::Spec w = qs;
    w.u_max = std::max(qs.u_max, 30.0 / alpha + 40.0);
    return w;
}

} // namespace detail

// closed two-term formula, theta in (-pi, pi):
//   pref G e^{x_b cosh(T - i theta)}
//   - (sin(pi alpha)/pi) pref G
//       int_R e^{-x_b cosh(u+T)} e^{alpha(u+i theta)}/(1+e^{u+i theta}) du
// with T = omega_c t/2, x_b = omega_c r r0/(2 sinh T),
// G = e^{-(omega_c/4)(r^2+r0^2) coth T}
struct KernelEval {
    cplx value = 0.0;
    double err_estimate = 0.0; // quadrature error scaled by the prefactor
};

inline KernelEval ab1_kernel_integral_eval(double r, double theta, double r0,
                                           double t, const ModelParams& prm,
                                           const quad::Spec& qs = quad::Spec{}) {
    detail::require_point(r, theta, r0, t);
    const double T = 0.5 * prm.omega_c * t;
    const double sh = std::sinh(T);
    const double xb = prm.omega_c * r * r0 / (2.0 * sh);
    const double pg = prm.omega_c / (4.0 * pi * sh) *
                      std::exp(-(prm.omega_c / 4.0) * (r * r + r0 * r0) *
                               (std::cosh(T) / sh));
    const cplx plane = pg * std::exp(xb * std::cosh(cplx(T, -theta)));
    auto f = [&](double u) -> cplx {
        const double damp = xb * std::cosh(u + T);
        if (damp > 700.0) return 0.0;
        const cplx w(u, theta);
        return std::exp(prm.alpha * w - damp) / (1.0 + std::exp(w));
    };
    const quad::Result corr = quad::integrate_line(f, qs);
    const double scale = std::abs(specfun::sin_pi(prm.alpha)) / pi * pg;
    return {plane - specfun::sin_pi(prm.alpha) / pi * pg * corr.value,
            scale * (corr.err_estimate + corr.truncation_bound)};
}

inline cplx ab1_kernel_integral(double r, double theta, double r0, double t,
                                const ModelParams& prm,
                                const quad::Spec& qs = quad::Spec{}) {
    return ab1_kernel_integral_eval(r, theta, r0, t, prm, qs).value;
}

// one normalized generalized eigenfunction,
//   f_{n,m}(r, theta) = C_n(p) r^{|p|} L_n^{|p|}(omega_c r^2/2)
//                       e^{-omega_c r^2/4} e^{i p theta},  p = m + alpha,
//   C_n(p)^2 = (omega_c/2)^{|p|+1} n! / (pi Gamma(n+|p|+1))
inline cplx eigenmode(int n, int m, double r, double theta,
                      const ModelParams& prm) {
    const double p = m + prm.alpha;
    const double ap = std::abs(p);
    const double lg = 0.5 * ((ap + 1.0) * std::log(0.5 * prm.omega_c) +
                             std::lgamma(n + 1.0) - std::lgamma(n + ap + 1.0) -
                             std::log(pi)) +
                      ap * std::log(r) - 0.25 * prm.omega_c * r * r;
    const double lag = specfun::laguerre(n, ap, 0.5 * prm.omega_c * r * r);
    if (lag == 0.0) return 0.0;
    const double tl = lg + std::log(std::abs(lag));
    if (tl < -700.0) return 0.0;
    return std::polar(std::copysign(std::exp(tl), lag), p * theta);
}

// energy of the (n, m) mode: ((p + |p| + 1)/2 + n) omega_c, p = m + alpha
inline double mode_energy(int n, int m, const ModelParams& prm) {
    const double p = m + prm.alpha;
    return (0.5 * (p + std::abs(p) + 1.0) + n) * prm.omega_c;
}

// truncated sum over modes; the flux makes it Lambda-equivariant rather
// than 2 pi periodic in theta, so it continues the integral form beyond
// the cut. The discarded tail: n and m > 0 are cut off by e^{-t omega_c}
// per unit, the m < 0 tail by (omega_c r r0/2)^{|m|} / |m|! .
inline cplx ab1_kernel_expansion(double r, double theta, double r0, double t,
                                 const ModelParams& prm,
                                 const Selector& sel = Selector{}) {
    sel.require_valid();
    if (!(r > 0.0 && r0 > 0.0 && t > 0.0))
        throw std::domain_error("ab1: needs r, r0, t > 0");
    const double lrr0 = std::log(r * r0);
    const double x = 0.5 * prm.omega_c * r * r;
    const double x0 = 0.5 * prm.omega_c * r0 * r0;
    ComplexCompensatedSum sum;
    for (int n = 0; n <= sel.n_max; ++n) {
        for (int m = sel.m_lo; m <= sel.m_hi; ++m) {
            const double p = m + prm.alpha;
            const double ap = std::abs(p);
            const double lg = (ap + 1.0) * std::log(0.5 * prm.omega_c) +
                              std::lgamma(n + 1.0) -
                              std::lgamma(n + ap + 1.0) - std::log(pi) +
                              ap * lrr0 -
                              0.25 * prm.omega_c * (r * r + r0 * r0) -
                              t * mode_energy(n, m, prm);
            const double l1 = specfun::laguerre(n, ap, x);
            const double l2 = specfun::laguerre(n, ap, x0);
            if (l1 == 0.0 || l2 == 0.0) continue;
            const double tl =
                lg + std::log(std::abs(l1)) + std::log(std::abs(l2));
            if (tl < -700.0) continue;
            const double mag =
                std::copysign(std::exp(tl), l1 * l2 > 0.0 ? 1.0 : -1.0);
            sum.add(std::polar(mag, p * theta));
        }
    }
    return sum.value();
}

// the two leading coefficients of the large-time expansion:
//   first  (at e^{-omega_c t/2}): kernel of the projection onto the lowest
//          level, (omega_c/2 pi) e^{-(omega_c/4)(r^2+r0^2)}
//          [ e^{(omega_c/2) r r0 e^{-i theta}}
//            - (sin(pi alpha)/pi)
//              int_R e^{-(omega_c/2) r r0 e^u}
//                    e^{alpha(u+i theta)}/(1+e^{u+i theta}) du ]
//   second (at e^{-(alpha+1/2) omega_c t}): the bound-state dyad,
//          (omega_c/(2 pi Gamma(1+alpha))) e^{-(omega_c/4)(r^2+r0^2)}
//          (omega_c r r0/2)^alpha e^{i alpha theta}
struct Ab1Asymptotic {
    cplx lll_coeff;
    cplx bound_coeff;
};

inline Ab1Asymptotic ab1_asymptotic_parts(double r, double theta, double r0,
                                          const ModelParams& prm,
                                          const quad::Spec& qs = quad::Spec{}) {
    detail::require_point(r, theta, r0, 1.0);
    const double w = prm.omega_c;
    const double gauss = std::exp(-0.25 * w * (r * r + r0 * r0));
    const double c = 0.5 * w * r * r0;
    auto f = [&](double u) -> cplx {
        const double damp = c * std::exp(u);
        if (damp > 700.0) return 0.0;
        const cplx z(u, theta);
        return std::exp(prm.alpha * z - damp) / (1.0 + std::exp(z));
    };
    const cplx corr =
        quad::integrate_line(f, detail::widen_for_left_tail(qs, prm.alpha))
            .value;
    Ab1Asymptotic out;
    out.lll_coeff = w / (2.0 * pi) * gauss *
                    (std::exp(c * std::exp(cplx(0.0, -theta))) -
                     specfun::sin_pi(prm.alpha) / pi * corr);
    out.bound_coeff = w / (2.0 * pi * specfun::gamma_fn(1.0 + prm.alpha)) *
                      gauss * std::pow(c, prm.alpha) *
                      std::polar(1.0, prm.alpha * theta);
    return out;
}

inline cplx ab1_asymptotic(double r, double theta, double r0, double t,
                           const ModelParams& prm,
                           const quad::Spec& qs = quad::Spec{}) {
    if (!(t > 0.0)) throw std::domain_error("ab1: t must be > 0");
    const auto parts = ab1_asymptotic_parts(r, theta, r0, prm, qs);
    return parts.lll_coeff * std::exp(-0.5 * prm.omega_c * t) +
           parts.bound_coeff *
               std::exp(-(prm.alpha + 0.5) * prm.omega_c * t);
}

inline cplx ab1_kernel(double r, double theta, double r0, double t,
                       const ModelParams& prm, const Selector& sel = Selector{},
                       const quad::Spec& qs = quad::Spec{}) {
    switch (sel.form) {
        case Form::integral:
            return ab1_kernel_integral(r, theta, r0, t, prm, qs);
        case Form::eigen_expansion:
            return ab1_kernel_expansion(r, theta, r0, t, prm, sel);
        case Form::asymptotic_2term:
            return ab1_asymptotic(r, theta, r0, t, prm, qs);
    }
    throw std::logic_error("ab1: unknown form");
}

// both sides of the lowest-level projection identity
//   e^{rho e^{i phi}} e^{i alpha phi}
//   - (sin(pi alpha)/pi) int_R e^{-rho e^u} e^{alpha u}/(1+e^{u-i phi}) du
//   = sum_{m>=1} rho^{m-alpha} e^{i m phi} / Gamma(m+1-alpha)
// for rho > 0, |phi| < pi, alpha in (0,1)
inline std::pair<cplx, cplx> lll_projection_parts(
    double rho, double phi, double alpha,
    const quad::Spec& qs = quad::Spec{}) {
    if (!(rho > 0.0)) throw std::domain_error("lll: rho must be > 0");
    if (!(std::abs(phi) < pi)) throw std::domain_error("lll: |phi| < pi");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("lll: alpha must be in (0,1)");
    auto f = [&](double u) -> cplx {
        const double damp = rho * std::exp(u);
        if (damp > 700.0) return 0.0;
        return std::exp(alpha * u - damp) /
               (1.0 + std::exp(cplx(u, -phi)));
    };
    const cplx corr =
        quad::integrate_line(f, detail::widen_for_left_tail(qs, alpha)).value;
    const cplx lhs = std::exp(rho * std::exp(cplx(0.0, phi))) *
                         std::polar(1.0, alpha * phi) -
                     specfun::sin_pi(alpha) / pi * corr;
    ComplexCompensatedSum rhs;
    const double lrho = std::log(rho);
    for (int m = 1; m <= 500; ++m) {
        const double lt = (m - alpha) * lrho - std::lgamma(m + 1.0 - alpha);
        const cplx term = std::polar(std::exp(lt), m * phi);
        rhs.add(term);
        if (m > 4 && std::abs(term) < 1e-18 * (1.0 + std::abs(rhs.value())))
            break;
    }
    return {lhs, rhs.value()};
}

inline double lll_projection_identity(double rho, double phi, double alpha,
                                      const quad::Spec& qs = quad::Spec{}) {
    const auto [lhs, rhs] = lll_projection_parts(rho, phi, alpha, qs);
    return std::abs(lhs - rhs);
}

} // namespace abheat::ab1
