#pragma once

// The bound state on the level above the lowest Landau level: the exact
// one-vortex eigenfunction psi1, the second-vortex correction phi in its
// integral and hypergeometric forms, and their sum psi2_tilde, which solves
// the eigenvalue equation exactly away from the cuts. Checks for the
// eigenvalue PDE and for the confluent-function identities behind the
// construction live here as well.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "abheat/common.hpp"
#include "abheat/model.hpp"
#include "abheat/quad.hpp"
#include "abheat/specfun.hpp"

namespace abheat::eigen {

// energy of the tracked level, (alpha + 1/2) omega_c
inline double level_energy(const ModelParams& prm) {
    return (prm.alpha + 0.5) * prm.omega_c;
}

// Normalized eigenfunction of the single vortex at a = (0,0) in the uniform
// field, on the level (alpha + 1/2) omega_c. The magnetic phase x ^ a
// vanishes because a sits at the origin; the alpha-flux lives entirely in
// the e^{i alpha theta_a} branch, which jumps by e^{2 pi i alpha} across L_a.
inline cplx psi1(const BiPolarPoint& x, const ModelParams& prm) {
    const double w = prm.omega_c;
    const double amp =
        std::sqrt(w / (2.0 * pi * specfun::gamma_fn(1.0 + prm.alpha)));
    const double xi = std::sqrt(0.5 * w) * x.r_a;
    return amp * std::pow(xi, prm.alpha) *
           std::exp(-0.25 * w * x.r_a * x.r_a) *
           std::polar(1.0, prm.alpha * x.theta_a);
}

// Default truncation for the phi line integral. The left tail decays like
// e^{-(beta-alpha)|u|} and the right tail like e^{-(1-beta)u} before the
// e^u damping takes over, so the width stretches with the smaller margin.
inline quad::Spec phi_integral_spec(const ModelParams& prm) {
    quad::Spec s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-16;
    const double margin = std::min(prm.beta - prm.alpha, 1.0 - prm.beta);
    s.u_max = std::min(400.0, 35.0 / margin + 40.0);
    return s;
}

// Correction from the vortex at b as a line integral. Valid at any point
// off the cut L_b (any r_b, including r_b > R); needs alpha < beta for the
// left tail to converge. At x = b the integral is theta-independent and
// evaluates to pi/sin(pi beta), which cancels psi1(b) exactly.
struct PhiEval {
    cplx value = 0.0;
    double err_estimate = 0.0; // quadrature error scaled into the value
};

inline PhiEval phi_integral_eval(const BiPolarPoint& x, const ModelParams& prm,
                                 const quad::Spec* user = nullptr) {
    prm.require_ordered_fluxes();
    const double w = prm.omega_c, R = prm.R;
    const double al = prm.alpha, be = prm.beta;
    const double rb = x.r_b, th = x.theta_b;
    if (rb > 0.0 && !(std::abs(th) < pi - 1e-12))
        throw std::domain_error("phi_integral: point on the cut L_b");
    const quad::Spec s = user ? *user : phi_integral_spec(prm);

    const double damp_c = 0.5 * w * R * rb; // strength of the e^u damping
    const double lw = 0.5 * std::log(0.5 * w);
    const double lnR = std::log(R);
    const double lnrb = rb > 0.0 ? std::log(rb) : -1.0 / 0.0;
    auto f = [&](double u) -> cplx {
        // ln(R + rb e^{-u}) without overflowing rb e^{-u} on the left tail
        const double g = lnrb - u - lnR;
        const double lnrad = lnR + (g > 700.0 ? g : std::log1p(std::exp(g)));
        // alpha-growth and beta-decay combined in one exponent
        double ex = al * (lw + lnrad) + be * u;
        if (u < 700.0) {
            const double damp = damp_c * std::exp(u);
            if (damp > 700.0) return cplx{0.0, 0.0};
            ex -= damp;
        } else if (damp_c > 0.0) {
            return cplx{0.0, 0.0};
        }
        if (ex < -700.0) return cplx{0.0, 0.0};
        const cplx num = std::exp(cplx(ex, be * th));
        if (u > 200.0) // avoid overflowing e^{u + i th} in the denominator
            return num * std::exp(cplx(-u, -th)) /
                   (1.0 + std::exp(cplx(-u, -th)));
        return num / (1.0 + std::exp(cplx(u, th)));
    };

    const cplx pref =
        -std::sqrt(w / (2.0 * pi * specfun::gamma_fn(1.0 + al))) *
        (specfun::sin_pi(be) / pi) *
        std::exp(-0.25 * w * (R * R + rb * rb)) *
        std::polar(1.0, 0.5 * w * R * rb * std::sin(th));
    const quad::Result res = quad::integrate_line(f, s);
    return {pref * res.value,
            std::abs(pref) * (res.err_estimate + res.truncation_bound)};
}

inline cplx phi_integral(const BiPolarPoint& x, const ModelParams& prm,
                         const quad::Spec* user = nullptr) {
    return phi_integral_eval(x, prm, user).value;
}

// Same correction in closed hypergeometric form, valid inside the disk
// r_b < R with z = (r_b/R) e^{i theta_b}. The branch of z^beta (and of the
// conjugate power in the U-term) follows theta_b in (-pi, pi], so the
// function jumps by e^{2 pi i beta} across L_b; (1-z)^alpha and the
// U-integral stay continuous there.
inline PhiEval phi_hypergeometric_eval(const BiPolarPoint& x,
                                       const ModelParams& prm,
                                       const quad::Spec* user = nullptr) {
    prm.require_ordered_fluxes();
    const double w = prm.omega_c, R = prm.R, D = prm.D;
    const double al = prm.alpha, be = prm.beta;
    const double rb = x.r_b, th = x.theta_b;
    if (!(rb < R))
        throw std::domain_error("phi_hypergeometric: needs r_b < R");

    const double pref =
        std::sqrt(w / (2.0 * pi * specfun::gamma_fn(1.0 + al))) *
        std::pow(std::sqrt(0.5 * w) * R, al) *
        std::exp(-0.25 * w * (R * R + rb * rb) +
                 0.5 * w * R * rb * std::cos(th));

    // both correction terms carry positive powers of z, so only the
    // leading (1-z)^alpha = 1 survives at the vortex itself
    if (rb == 0.0) return {cplx(-pref), 0.0};

    const cplx z = std::polar(rb / R, th);
    const cplx zbeta = std::polar(std::pow(rb / R, be), be * th);
    const double gr = specfun::gamma_fn(be - al) /
                      (specfun::gamma_fn(-al) * specfun::gamma_fn(1.0 + be));

    quad::Spec s;
    if (user) {
        s = *user;
    } else {
        s.rel_tol = 1e-12;
        s.abs_tol = 1e-16;
    }
    const double u_scale = 0.5 * w * rb * rb;       // D z zbar / 2
    const cplx ez = 0.5 * D * std::conj(z);         // D zbar / 2
    auto g = [&](double t, double sd) -> cplx {
        const double tt = sd > 0.0 ? sd : t; // exact distance to the t = 0 end
        return specfun::hyp_u(-al, 1.0 - be, cplx(u_scale * t, 0.0)) *
               std::exp(-ez * t) * std::pow(tt, -be);
    };
    const quad::Result ures = quad::integrate_segment(g, 0.0, 1.0, s);

    const cplx ucoef = (specfun::sin_pi(be) * specfun::gamma_fn(be - al) / pi) *
                       std::pow(ez, 1.0 - be);
    const cplx bracket =
        std::pow(1.0 - z, al) -
        gr * specfun::hyp2f1(1.0, be - al, 1.0 + be, z) * zbeta -
        ucoef * ures.value;
    return {-pref * bracket,
            pref * std::abs(ucoef) * (ures.err_estimate + ures.truncation_bound)};
}

inline cplx phi_hypergeometric(const BiPolarPoint& x, const ModelParams& prm,
                               const quad::Spec* user = nullptr) {
    return phi_hypergeometric_eval(x, prm, user).value;
}

// Each form is robust exactly where the other degrades: the hypergeometric
// series inside the disk, the line integral outside and near L_a.
inline PhiEval phi_eval(const BiPolarPoint& x, const ModelParams& prm) {
    return x.r_b < 0.95 * prm.R ? phi_hypergeometric_eval(x, prm)
                                : phi_integral_eval(x, prm);
}

inline cplx phi(const BiPolarPoint& x, const ModelParams& prm) {
    return phi_eval(x, prm).value;
}

inline cplx psi2_tilde(const BiPolarPoint& x, const ModelParams& prm) {
    return psi1(x, prm) + phi(x, prm);
}

struct WaveSample {
    BiPolarPoint point;
    cplx psi1{0.0, 0.0};
    cplx phi{0.0, 0.0};
    cplx psi2_tilde{0.0, 0.0}; // always psi1 + phi
};

inline WaveSample sample(const BiPolarPoint& x, const ModelParams& prm) {
    WaveSample ws;
    ws.point = x;
    ws.psi1 = psi1(x, prm);
    ws.phi = phi(x, prm);
    ws.psi2_tilde = ws.psi1 + ws.phi;
    return ws;
}

// Apply the uniform-field Hamiltonian
//   H = -1/2 [ (d1 - i (w/2) x2)^2 + (d2 + i (w/2) x1)^2 ]
// by fourth-order central differences and compare with energy * field.
// The flux enters through the angular branches of the field, not through
// the operator, so the stencil must keep clear of both cuts.
template <class F>
double eigen_residual_of(F&& field, const BiPolarPoint& x,
                         const ModelParams& prm, double h_xi, double energy) {
    if (!(h_xi > 0.0 && h_xi <= 0.1))
        throw std::domain_error("eigen_residual: h must be in (0, 0.1]");
    const double w = prm.omega_c;
    const double h = h_xi / std::sqrt(w); // step given in units of sqrt(w) x
    const double d_a = x.x1 <= 0.0 ? std::abs(x.x2) : x.r_a;
    const double d_b = x.x1 >= prm.R ? std::abs(x.x2) : x.r_b;
    if (!(std::min(d_a, d_b) > 5.0 * h))
        throw std::domain_error("eigen_residual: stencil too close to a cut");

    auto at = [&](double s1, double s2) {
        return field(BiPolarPoint::from_cartesian(x.x1 + s1, x.x2 + s2, prm));
    };
    const cplx u0 = at(0.0, 0.0);
    const cplx xp1 = at(h, 0.0), xp2 = at(2.0 * h, 0.0);
    const cplx xm1 = at(-h, 0.0), xm2 = at(-2.0 * h, 0.0);
    const cplx yp1 = at(0.0, h), yp2 = at(0.0, 2.0 * h);
    const cplx ym1 = at(0.0, -h), ym2 = at(0.0, -2.0 * h);

    const cplx d1x = (-xp2 + 8.0 * xp1 - 8.0 * xm1 + xm2) / (12.0 * h);
    const cplx d1y = (-yp2 + 8.0 * yp1 - 8.0 * ym1 + ym2) / (12.0 * h);
    const cplx d2x =
        (-xp2 + 16.0 * xp1 - 30.0 * u0 + 16.0 * xm1 - xm2) / (12.0 * h * h);
    const cplx d2y =
        (-yp2 + 16.0 * yp1 - 30.0 * u0 + 16.0 * ym1 - ym2) / (12.0 * h * h);

    const cplx i{0.0, 1.0};
    const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
    const cplx hu = -0.5 * (d2x + d2y - i * w * x.x2 * d1x +
                            i * w * x.x1 * d1y - 0.25 * w * w * r2 * u0);
    return std::abs(hu - energy * u0) / (energy * std::abs(u0) + 1e-12);
}

inline double eigen_residual(const BiPolarPoint& x, const ModelParams& prm,
                             double h_xi = 1e-3) {
    return eigen_residual_of(
        [&](const BiPolarPoint& p) { return psi2_tilde(p, prm); }, x, prm,
        h_xi, level_energy(prm));
}

namespace detail {

// int_0^{zbar/2} 1F1(-alpha; 1-beta; z t / D) e^{-t} t^{-beta} dt along the
// straight ray to zbar/2, parametrized t = (zbar/2) s to expose the
// endpoint power s^{-beta} to the tanh-sinh rule
inline cplx g1_block(cplx z, cplx zb, double al, double be, double D,
                     const quad::Spec& s) {
    const cplx half = 0.5 * zb;
    auto f = [&](double sv, double sd) -> cplx {
        const double ss = sd > 0.0 ? sd : sv;
        return specfun::hyp1f1(-al, 1.0 - be, z * half * sv / D) *
               std::exp(-half * sv) * std::pow(ss, -be);
    };
    return std::pow(half, 1.0 - be) *
           quad::integrate_segment(f, 0.0, 1.0, s).value;
}

// 2F1(1, beta-alpha; 1+beta; z/D) z^beta
//   - z^beta (zbar/2) int_0^1 1F1(beta-alpha; 1+beta; z zbar s/(2D))
//                             e^{-zbar s/2} ds
inline cplx g2_block(cplx z, cplx zb, double al, double be, double D,
                     const quad::Spec& s) {
    const cplx zbeta = std::pow(z, be);
    auto f = [&](double sv) -> cplx {
        return specfun::hyp1f1(be - al, 1.0 + be, z * zb * sv / (2.0 * D)) *
               std::exp(-0.5 * zb * sv);
    };
    return zbeta * (specfun::hyp2f1(1.0, be - al, 1.0 + be, z / D) -
                    0.5 * zb * quad::integrate_segment(f, 0.0, 1.0, s).value);
}

} // namespace detail

struct GIdentityResult {
    double residual_g1 = 0.0;
    double residual_g2 = 0.0;
};

// Residuals of -(2 d^2/dz dzbar + (1 - z/D) d/dz) g = (alpha_rhs / D) g for
// the two building blocks above, with (z, zbar) treated as independent
// variables and derivatives taken by fourth-order differences with real
// steps h in each variable. alpha_rhs < 0 means "use params.alpha"; a
// detuned value demonstrates the check's sensitivity.
inline GIdentityResult g_identity_residuals(cplx z, cplx zb,
                                            const ModelParams& prm,
                                            double h = 0.02,
                                            double alpha_rhs = -1.0) {
    if (!(h > 0.0 && h <= 0.1))
        throw std::domain_error("g_identity_residuals: h must be in (0, 0.1]");
    if (!(std::abs(z) / prm.D < 1.0))
        throw std::domain_error("g_identity_residuals: needs |z| < D");
    const double ar = alpha_rhs < 0.0 ? prm.alpha : alpha_rhs;
    quad::Spec s;
    s.rel_tol = 1e-12;
    s.abs_tol = 1e-16;

    const double wts[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    const int off[4] = {-2, -1, 1, 2};
    auto resid = [&](auto&& g) {
        const cplx g0 = g(z, zb);
        cplx dz{0.0, 0.0};
        for (int i = 0; i < 4; ++i)
            dz += wts[i] * g(z + cplx(off[i] * h, 0.0), zb);
        dz /= h;
        cplx dmix{0.0, 0.0};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                dmix += wts[i] * wts[j] *
                        g(z + cplx(off[i] * h, 0.0), zb + cplx(off[j] * h, 0.0));
        dmix /= h * h;
        const cplx lhs = -(2.0 * dmix + (1.0 - z / prm.D) * dz);
        const cplx rhs = (ar / prm.D) * g0;
        return std::abs(lhs - rhs) / std::abs(rhs);
    };

    GIdentityResult r;
    r.residual_g1 = resid([&](cplx zz, cplx zzb) {
        return detail::g1_block(zz, zzb, prm.alpha, prm.beta, prm.D, s);
    });
    r.residual_g2 = resid([&](cplx zz, cplx zzb) {
        return detail::g2_block(zz, zzb, prm.alpha, prm.beta, prm.D, s);
    });
    return r;
}

} // namespace abheat::eigen
