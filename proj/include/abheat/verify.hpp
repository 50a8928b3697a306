#pragma once

// Built-in consistency suites behind the `verify` CLI subcommand. Each row
// measures one identity, cross-check, or fitted rate at pinned sample
// points and compares it against a frozen bound with generous headroom over
// the observed residual. Control rows (detuned energies, unaveraged partial
// sums) must stay ABOVE their bound: a check that cannot fail checks
// nothing, so they are asserted loud.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abheat/ab1.hpp"
#include "abheat/ab2.hpp"
#include "abheat/asymlab.hpp"
#include "abheat/common.hpp"
#include "abheat/eigen.hpp"
#include "abheat/landau.hpp"
#include "abheat/model.hpp"
#include "abheat/specfun.hpp"

namespace abheat::verify {

struct CheckRow {
    std::string suite;
    std::string id;
    std::string detail;        // sample point, what is measured
    double value = 0.0;        // measured residual / deviation / ratio
    double bound = 0.0;
    bool lower_is_pass = false; // control rows must exceed the bound
    bool pass = false;
};

namespace detail {

inline CheckRow below(std::string suite, std::string id, std::string det,
                      double value, double bound) {
    CheckRow r{std::move(suite), std::move(id), std::move(det),
               value,            bound,         false,
               false};
    r.pass = std::isfinite(value) && value < bound;
    return r;
}

inline CheckRow above(std::string suite, std::string id, std::string det,
                      double value, double bound) {
    CheckRow r{std::move(suite), std::move(id), std::move(det),
               value,            bound,         true,
               false};
    r.pass = std::isfinite(value) && value > bound;
    return r;
}

inline double rel(cplx got, cplx want) {
    return std::abs(got - want) / std::abs(want);
}

// least-squares slope of y against x
inline double ls_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size(), my /= y.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

} // namespace detail

// ---------------------------------------------------------------------------
// special function identities

inline std::vector<CheckRow> suite_specfun() {
    namespace sf = specfun;
    using detail::below;
    std::vector<CheckRow> rows;
    const std::string S = "specfun";

    {
        double worst = 0.0;
        for (double x : {0.3, 0.45, 0.7})
            worst = std::max(worst,
                             std::abs(sf::gamma_fn(x) * sf::gamma_fn(1.0 - x) *
                                          sf::sin_pi(x) / pi -
                                      1.0));
        rows.push_back(below(S, "gamma_reflection",
                             "Gamma(x)Gamma(1-x) sin(pi x)/pi - 1, x in "
                             "{0.3,0.45,0.7}",
                             worst, 1e-13));
    }
    {
        double worst = 0.0;
        for (double x : {0.35, 0.8, 1.4}) {
            double lhs = sf::gamma_fn(2.0 * x);
            double rhs = sf::gamma_fn(x) * sf::gamma_fn(x + 0.5) *
                         std::pow(2.0, 2.0 * x - 1.0) / std::sqrt(pi);
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
        rows.push_back(below(S, "gamma_duplication",
                             "Legendre duplication, x in {0.35,0.8,1.4}",
                             worst, 1e-13));
    }
    {
        double worst = std::abs(sf::recip_gamma(-3.0)) +
                       std::abs(sf::recip_gamma(0.0));
        for (double x : {0.25, 0.9, 2.3})
            worst = std::max(
                worst, std::abs(sf::recip_gamma(x) * sf::gamma_fn(x) - 1.0));
        rows.push_back(below(S, "recip_gamma",
                             "zeros at poles; 1/Gamma * Gamma - 1 elsewhere",
                             worst, 1e-14));
    }
    {
        double worst = 0.0;
        for (auto [nu, x] : {std::pair{1.4, 0.3}, {1.4, 2.5}, {1.7, 6.0}}) {
            double lhs = sf::bessel_i(nu - 1.0, x) - sf::bessel_i(nu + 1.0, x);
            double rhs = 2.0 * nu / x * sf::bessel_i(nu, x);
            worst = std::max(worst,
                             std::abs(lhs - rhs) / sf::bessel_i(nu - 1.0, x));
        }
        rows.push_back(below(S, "bessel_i_recurrence",
                             "I_{nu-1}-I_{nu+1} = (2nu/x) I_nu at three "
                             "(nu,x)",
                             worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (double x : {0.7, 3.0, 12.0}) {
            double want = std::sqrt(2.0 / (pi * x)) * std::sinh(x);
            worst =
                std::max(worst, std::abs(sf::bessel_i(0.5, x) / want - 1.0));
        }
        rows.push_back(below(S, "bessel_i_half_order",
                             "I_{1/2}(x) = sqrt(2/(pi x)) sinh x, x in "
                             "{0.7,3,12}",
                             worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (auto [n, sg, x] :
             {std::tuple{3, 0.4, 1.2}, std::tuple{7, 1.3, 4.0}}) {
            double binom = sf::gamma_fn(n + sg + 1.0) /
                           (sf::gamma_fn(n + 1.0) * sf::gamma_fn(sg + 1.0));
            double want =
                binom *
                sf::hyp1f1(-double(n), sg + 1.0, cplx(x, 0.0)).real();
            worst = std::max(worst, std::abs(sf::laguerre(n, sg, x) / want -
                                             1.0));
        }
        rows.push_back(below(S, "laguerre_vs_1f1",
                             "L_n^sigma(x) against the 1F1 representation",
                             worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (auto [sg, r] :
             {std::pair{0.4, 0.8}, {1.3, 3.5}, {0.2, 7.0}}) {
            double lhs = sf::inc_gamma_upper(sg + 1.0, r);
            double rhs = sg * sf::inc_gamma_upper(sg, r) +
                         std::pow(r, sg) * std::exp(-r);
            worst = std::max(worst, std::abs(lhs - rhs) / lhs);
        }
        rows.push_back(below(S, "inc_gamma_recurrence",
                             "Gamma(s+1,r) = s Gamma(s,r) + r^s e^{-r}",
                             worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (auto [sg, r] : {std::pair{0.6, 1.1}, {1.8, 2.7}}) {
            double want =
                sf::gamma_fn(sg) -
                std::pow(r, sg) / sg *
                    sf::hyp1f1(sg, 1.0 + sg, cplx(-r, 0.0)).real();
            worst = std::max(worst, std::abs(sf::inc_gamma_upper(sg, r) -
                                             want) /
                                        sf::gamma_fn(sg));
        }
        rows.push_back(below(S, "inc_gamma_vs_1f1",
                             "Gamma(s,r) = Gamma(s) - (r^s/s) 1F1(s;1+s;-r)",
                             worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (auto [a, c, z] : {std::tuple{0.3, 1.2, cplx(2.0, 1.5)},
                               std::tuple{-0.4, 0.9, cplx(-3.0, 0.8)}}) {
            cplx lhs = sf::hyp1f1(a, c, z);
            cplx rhs = std::exp(z) * sf::hyp1f1(c - a, c, -z);
            worst = std::max(worst, detail::rel(lhs, rhs));
        }
        rows.push_back(below(S, "kummer_1f1",
                             "1F1(a;c;z) = e^z 1F1(c-a;c;-z), complex z",
                             worst, 1e-12));
    }
    {
        const double a = 0.3, b = 0.7, c = 1.4;
        const cplx z(0.5, 0.3);
        cplx lhs = sf::hyp2f1(a, b, c, z);
        cplx rhs = std::pow(1.0 - z, c - a - b) *
                   sf::hyp2f1(c - a, c - b, c, z);
        rows.push_back(below(S, "euler_2f1",
                             "2F1 Euler transformation at (0.3,0.7,1.4), "
                             "z=0.5+0.3i",
                             detail::rel(lhs, rhs), 1e-12));
    }
    {
        const cplx z(0.6, 0.2);
        cplx lhs = sf::hyp2f1(1.0, 1.0, 2.0, z);
        cplx rhs = -std::log(1.0 - z) / z;
        rows.push_back(below(S, "log_2f1",
                             "2F1(1,1;2;z) = -log(1-z)/z at z=0.6+0.2i",
                             detail::rel(lhs, rhs), 1e-11));
    }
    {
        const double a = 0.35, c = 0.6;
        const cplx z(1.3, 0.4);
        cplx lhs = sf::hyp_u(a, c, z);
        cplx rhs = sf::gamma_fn(1.0 - c) / sf::gamma_fn(1.0 + a - c) *
                       sf::hyp1f1(a, c, z) +
                   sf::gamma_fn(c - 1.0) / sf::gamma_fn(a) *
                       std::pow(z, 1.0 - c) *
                       sf::hyp1f1(1.0 + a - c, 2.0 - c, z);
        rows.push_back(below(S, "u_kummer_pair",
                             "U as the two-solution combination at "
                             "(0.35,0.6), z=1.3+0.4i",
                             detail::rel(lhs, rhs), 1e-10));
    }
    {
        const double a = 0.4, c = 1.3;
        const cplx z(2.0, 0.9);
        cplx lhs = sf::hyp_u(a, c, z);
        cplx rhs = std::pow(z, 1.0 - c) * sf::hyp_u(1.0 + a - c, 2.0 - c, z);
        rows.push_back(below(S, "u_reflection",
                             "U(a,c,z) = z^{1-c} U(1+a-c,2-c,z) at "
                             "(0.4,1.3), z=2+0.9i",
                             detail::rel(lhs, rhs), 1e-10));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// free Landau kernel and its flux-twisted periodization

inline std::vector<CheckRow> suite_landau() {
    using detail::above;
    using detail::below;
    std::vector<CheckRow> rows;
    const std::string S = "landau";
    auto prm = ModelParams::make(4.0, 0.4, 0.7, 1.0);
    const double t = 0.6;
    auto x = BiPolarPoint::from_polar_a(0.6, 0.8, prm);
    auto x0 = BiPolarPoint::from_polar_a(0.9, -0.4, prm);

    {
        cplx kc = landau::plane_kernel(x, x0, t, prm);
        cplx kp = landau::plane_kernel_polar(0.6, 0.8, 0.9, -0.4, t, prm);
        rows.push_back(below(S, "plane_polar_consistency",
                             "cartesian vs polar evaluation at one point",
                             detail::rel(kc, kp), 1e-12));
        rows.push_back(below(S, "plane_hermiticity",
                             "K(x,x0,t) = conj K(x0,x,t)",
                             detail::rel(kc,
                                         std::conj(landau::plane_kernel(
                                             x0, x, t, prm))),
                             1e-12));
    }
    {
        // truncation residual of the twisted image sum; O(1/N) decay
        const double r20 =
            landau::periodization_check(1.0, 0.5, 1.0, 0.5, prm, 20);
        rows.push_back(below(S, "periodization_n20",
                             "image-sum residual at N=20, "
                             "(r,th,r0,t)=(1,0.5,1,0.5)",
                             r20, 2e-4));
        const double ratio =
            landau::periodization_check(1.0, 0.5, 1.0, 0.5, prm, 15) /
            landau::periodization_check(1.0, 0.5, 1.0, 0.5, prm, 25);
        rows.push_back(above(S, "periodization_rate_lo",
                             "residual ratio N=15 over N=25, O(1/N) window",
                             ratio, 1.2));
        rows.push_back(below(S, "periodization_rate_hi",
                             "residual ratio N=15 over N=25, O(1/N) window",
                             ratio, 2.3));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// one-solenoid kernel: form agreement, projection identity, decay rate

inline std::vector<CheckRow> suite_ab1() {
    namespace a1 = ab1;
    using detail::below;
    std::vector<CheckRow> rows;
    const std::string S = "ab1";
    auto prm = ModelParams::make(4.0, 0.4, 0.7, 1.0);
    const double w = prm.omega_c;
    a1::Selector sel; // integral-default n/m window, used for the expansion

    {
        cplx vi = a1::ab1_kernel_integral(0.9, 0.6, 0.7, 0.8, prm);
        a1::Selector se = sel;
        se.form = a1::Form::eigen_expansion;
        cplx ve = a1::ab1_kernel_expansion(0.9, 0.6, 0.7, 0.8, prm, se);
        rows.push_back(below(S, "crossform_pinned",
                             "integral vs expansion at "
                             "(r,th,r0,t)=(0.9,0.6,0.7,0.8)",
                             detail::rel(vi, ve), 1e-6));
    }
    {
        const double pts[6][4] = {{0.3, -2.0, 0.3, 0.3}, {0.6, 0.6, 1.2, 0.3},
                                  {0.9, 2.8, 0.6, 0.8},  {1.5, 0.6, 1.5, 0.8},
                                  {1.2, -2.0, 0.3, 0.8}, {0.3, 2.8, 1.5, 0.3}};
        double worst = 0.0;
        for (const auto& p : pts) {
            cplx vi = a1::ab1_kernel_integral(p[0], p[1], p[2], p[3], prm);
            a1::Selector se = sel;
            se.form = a1::Form::eigen_expansion;
            cplx ve =
                a1::ab1_kernel_expansion(p[0], p[1], p[2], p[3], prm, se);
            worst = std::max(worst, detail::rel(vi, ve));
        }
        rows.push_back(below(S, "crossform_sample",
                             "worst of six grid points across radii, angles, "
                             "times",
                             worst, 1e-6));
    }
    {
        cplx a = a1::ab1_kernel_integral(0.9, 0.6, 0.7, 0.8, prm);
        cplx b = std::conj(a1::ab1_kernel_integral(0.7, -0.6, 0.9, 0.8, prm));
        rows.push_back(below(S, "hermiticity",
                             "K(r,th,r0) = conj K(r0,-th,r)",
                             detail::rel(a, b), 1e-10));
        cplx d = a1::ab1_kernel_integral(0.8, 0.0, 0.8, 0.5, prm);
        rows.push_back(below(S, "diagonal_positive",
                             "imag/real on the diagonal r=r0=0.8, th=0",
                             d.real() > 0.0
                                 ? std::abs(d.imag()) / d.real()
                                 : std::numeric_limits<double>::infinity(),
                             1e-10));
    }
    rows.push_back(below(S, "lll_projection",
                         "lowest-level projection identity at "
                         "(rho,phi,alpha)=(1,0.3,0.4)",
                         a1::lll_projection_identity(1.0, 0.3, 0.4), 1e-9));
    {
        // remainder beyond the two-term asymptotics decays at 3w/2
        std::vector<double> ts, lr;
        for (double wt : {8.0, 10.0, 12.0, 14.0, 16.0}) {
            const double t = wt / w;
            const double res =
                std::abs(a1::ab1_kernel_integral(0.9, 0.6, 0.7, t, prm) -
                         a1::ab1_asymptotic(0.9, 0.6, 0.7, t, prm));
            ts.push_back(t);
            lr.push_back(std::log(res));
        }
        const double slope = -detail::ls_slope(ts, lr);
        rows.push_back(below(S, "remainder_decay_rate",
                             "fitted decay rate over w t in [8,16] against "
                             "3w/2",
                             std::abs(slope / (1.5 * w) - 1.0), 0.05));
    }
    {
        const double t = 20.0 / w;
        a1::Selector se = sel;
        se.form = a1::Form::eigen_expansion;
        cplx ve = a1::ab1_kernel_expansion(0.9, 0.6, 0.7, t, prm, se);
        cplx va = a1::ab1_asymptotic(0.9, 0.6, 0.7, t, prm);
        rows.push_back(below(S, "asymptotic_deep",
                             "expansion vs two-term asymptotics at w t = 20",
                             detail::rel(ve, va), 1e-8));
    }
    {
        auto prm0 = ModelParams::make(4.0, 1e-9, 0.7, 1.0);
        auto parts = a1::ab1_asymptotic_parts(0.9, 0.6, 0.7, prm0);
        const double want =
            w / (2.0 * pi) * std::exp(-0.25 * w * (0.81 + 0.49));
        rows.push_back(below(S, "alpha0_dyad",
                             "bound-state dyad coefficient in the zero-flux "
                             "limit",
                             std::abs(std::abs(parts.bound_coeff) / want -
                                      1.0),
                             1e-6));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// two-solenoid kernel: reductions, path hierarchy, reparametrization

inline std::vector<CheckRow> suite_ab2() {
    namespace a1 = ab1;
    namespace a2 = ab2;
    using detail::above;
    using detail::below;
    std::vector<CheckRow> rows;
    const std::string S = "ab2";

    {
        // deep in the far regime every b-dependent term is Gaussian-dead
        auto prm = ModelParams::make(4.0, 0.4, 0.7, 6.0);
        const double t = 0.8;
        auto x = BiPolarPoint::from_cartesian(0.15, 0.2, prm);
        auto x0 = BiPolarPoint::from_cartesian(-0.1, 0.12, prm);
        cplx got = a2::ab2_term_I(x, x0, t, prm) +
                   a2::ab2_term_II(x, x0, t, prm, a2::Vortex::a);
        cplx want = a1::ab1_kernel_integral(
            x.r_a, wrap_angle(x.theta_a - x0.theta_a), x0.r_a, t, prm);
        rows.push_back(below(S, "far_reduction",
                             "I + II(a) vs one-solenoid kernel at D=144",
                             detail::rel(got, want), 1e-10));
        cplx iib = a2::ab2_term_II(x, x0, t, prm, a2::Vortex::b);
        rows.push_back(below(S, "far_other_vortex",
                             "|II(b)|/|K| against exp(-D/8)",
                             std::abs(iib) / std::abs(want),
                             std::exp(-prm.D / 8.0)));
    }
    {
        const double w = 4.0, D = 3.5;
        auto prm = ModelParams::make(w, 0.4, 0.7, std::sqrt(D / w));
        auto mid = BiPolarPoint::from_cartesian(0.5 * prm.R, 0.0, prm);
        const double t = 2.0 / w;
        cplx ab = a2::ab2_term_III(mid, mid, t, prm, a2::AltPath::make("ab"));
        cplx ba = a2::ab2_term_III(mid, mid, t, prm, a2::AltPath::make("ba"));
        rows.push_back(below(S, "two_leg_pinned",
                             "coincident-midpoint two-leg term vs frozen "
                             "reference",
                             std::abs(ab.real() / 4.60909382698645e-4 - 1.0),
                             1e-8));
        cplx aba =
            a2::ab2_term_III(mid, mid, t, prm, a2::AltPath::make("aba"));
        cplx bab =
            a2::ab2_term_III(mid, mid, t, prm, a2::AltPath::make("bab"));
        rows.push_back(below(S, "path3_vs_path2",
                             "|three-leg sum|/|two-leg sum| against "
                             "exp(-D/8) at D=3.5",
                             std::abs(aba + bab) / std::abs(ab + ba),
                             std::exp(-D / 8.0)));
    }
    {
        auto prm = ModelParams::make(4.0, 0.4, 0.7, 1.0);
        auto tc = a2::time_transform_check(1.2, {0.5, 1.0, 0.7}, {0.3, -0.45},
                                           prm);
        rows.push_back(below(S, "transform_sum",
                             "leg times recombine to the total time",
                             tc.sum_residual, 1e-12));
        rows.push_back(below(S, "transform_roundtrip",
                             "u -> t -> u round trip",
                             tc.roundtrip_residual, 1e-10));
        rows.push_back(below(S, "transform_jacobian",
                             "closed-form Jacobian vs finite differences",
                             tc.jacobian_residual, 1e-6));
        rows.push_back(below(S, "transform_cosh",
                             "coth-difference to cosh-product identity",
                             tc.cosh_identity_residual, 1e-12));
    }
    {
        const cplx z(0.3, 0.2);
        const double al = 0.4;
        const cplx want = a2::sum_k_v_rhs(al, z);
        const double avg =
            std::abs(a2::sum_k_v_lhs_averaged(al, z, 200) - want) /
            std::abs(want);
        const double plain =
            std::abs(a2::sum_k_v_lhs_partial(al, z, 200) - want) /
            std::abs(want);
        rows.push_back(below(S, "winding_sum_averaged",
                             "averaged 200-term winding sum vs closed form",
                             avg, 1e-6));
        rows.push_back(above(S, "winding_sum_plain_control",
                             "control: unaveraged partial sum must stay "
                             "noisy",
                             plain, 1e-6));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// bound state above the first level

inline std::vector<CheckRow> suite_eigen() {
    namespace eg = eigen;
    using detail::above;
    using detail::below;
    std::vector<CheckRow> rows;
    const std::string S = "eigen";
    auto prm = ModelParams::make(4.0, 0.4, 0.7, std::sqrt(3.5 / 4.0));

    {
        std::mt19937 rng(123);
        std::uniform_real_distribution<double> ur(0.05, 0.9),
            ut(-pi / 2, pi / 2);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            auto p = BiPolarPoint::from_polar_b(ur(rng) * prm.R, ut(rng), prm);
            worst = std::max(worst, detail::rel(eg::phi_integral(p, prm),
                                                eg::phi_hypergeometric(p,
                                                                       prm)));
        }
        rows.push_back(below(S, "phi_crossform",
                             "line-integral vs confluent form of the "
                             "correction, five points near b",
                             worst, 1e-6));
    }
    {
        auto b = BiPolarPoint::from_polar_b(0.0, 0.0, prm);
        const double ref = std::abs(eg::psi1(b, prm));
        rows.push_back(below(S, "psi2_zero_at_b",
                             "|psi2_tilde(b)| / |psi1(b)|",
                             std::abs(eg::psi2_tilde(b, prm)) / ref, 1e-10));
    }
    {
        std::mt19937 rng(20260825);
        std::uniform_real_distribution<double> ux(-1.2, 2.4), uy(-1.2, 1.2);
        double worst = 0.0;
        int kept = 0;
        while (kept < 8) {
            auto p = BiPolarPoint::from_cartesian(ux(rng), uy(rng), prm);
            const double da = p.x1 <= 0.0 ? std::abs(p.x2) : p.r_a;
            const double db = p.x1 >= prm.R ? std::abs(p.x2) : p.r_b;
            if (std::min(da, db) < 0.05) continue;
            worst = std::max(worst, eg::eigen_residual(p, prm));
            ++kept;
        }
        rows.push_back(below(S, "eigen_residual",
                             "five-point FD eigenvalue residual, eight "
                             "interior points",
                             worst, 1e-4));

        auto psi1_field = [&](const BiPolarPoint& q) {
            return eg::psi1(q, prm);
        };
        auto p = BiPolarPoint::from_cartesian(0.35, 0.4, prm);
        rows.push_back(above(S, "detuned_control",
                             "control: residual at a wrong energy must stay "
                             "loud",
                             eg::eigen_residual_of(psi1_field, p, prm, 1e-3,
                                                   (prm.alpha + 1.5) *
                                                       prm.omega_c),
                             0.1));
    }
    {
        auto r = eg::g_identity_residuals(cplx(0.8, 0.3), cplx(0.8, -0.3),
                                          prm);
        rows.push_back(below(S, "g1_identity",
                             "confluent ODE residual of the first radial "
                             "block",
                             r.residual_g1, 1e-6));
        rows.push_back(below(S, "g2_identity",
                             "confluent ODE residual of the second radial "
                             "block",
                             r.residual_g2, 1e-6));
    }
    {
        // jump across L_b is e^{2 pi i beta}: defect linear in the offset,
        // so the Richardson extrapolant collapses
        const cplx jump = std::polar(1.0, 2.0 * pi * prm.beta);
        const double rb = 0.5 * prm.R;
        auto val = [&](double th) {
            return eg::psi2_tilde(BiPolarPoint::from_polar_b(rb, th, prm),
                                  prm);
        };
        auto mism = [&](double del) {
            return val(pi - del) - jump * val(-pi + del);
        };
        const cplx j2 = mism(0.02), j1 = mism(0.01);
        rows.push_back(below(S, "lb_jump_linear",
                             "Richardson collapse of the L_b jump defect",
                             std::abs(2.0 * j1 - j2) / std::abs(j2), 0.01));
    }
    {
        auto defect = [](double D) {
            auto pD = ModelParams::make(4.0, 0.4, 0.7, std::sqrt(D / 4.0));
            auto up = BiPolarPoint::from_polar_a(0.4, pi - 1e-8, pD);
            auto dn = BiPolarPoint::from_polar_a(0.4, -pi + 1e-8, pD);
            const cplx pu = eg::psi2_tilde(up, pD);
            const cplx pd = eg::psi2_tilde(dn, pD);
            return std::abs(pu - std::polar(1.0, 2.0 * pi * pD.alpha) * pd) /
                   std::abs(pu);
        };
        const double d10 = defect(10.0), d20 = defect(20.0);
        const double pred = std::pow(0.5, 0.4 - 0.7) * std::exp(5.0);
        const double ratio = (d10 / d20) / pred;
        rows.push_back(below(S, "la_defect_small",
                             "relative L_a defect at D=20",
                             d20, 1e-4));
        rows.push_back(above(S, "la_defect_rate_lo",
                             "defect ratio D=10/D=20 vs D^{a-b} e^{-D/2} "
                             "scaling",
                             ratio, 1.0 / 3.0));
        rows.push_back(below(S, "la_defect_rate_hi",
                             "defect ratio D=10/D=20 vs D^{a-b} e^{-D/2} "
                             "scaling",
                             ratio, 3.0));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// appendix suites: recurrence identities (A), the two-scale proposition and
// its lemmas (B), the Laplace-type integral identity (C)

namespace detail {

inline std::vector<CheckRow> suite_appendix_a() {
    namespace sf = specfun;
    std::vector<CheckRow> rows;
    const std::string S = "appendix_a";
    const double a = 0.3, b = 0.7, c = 1.4;
    const cplx z(0.45, 0.25);

    {
        cplx lhs = sf::hyp2f1(a, b, c, z);
        cplx rhs = std::pow(1.0 - z, -a) *
                   sf::hyp2f1(a, c - b, c, z / (z - 1.0));
        rows.push_back(below(S, "euler_first",
                             "2F1(a,b;c;z) = (1-z)^{-a} 2F1(a,c-b;c;z/(z-1))",
                             rel(lhs, rhs), 1e-12));
        rhs = std::pow(1.0 - z, c - a - b) * sf::hyp2f1(c - a, c - b, c, z);
        rows.push_back(below(S, "euler_second",
                             "2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a,c-b;c;z)",
                             rel(lhs, rhs), 1e-12));
    }
    {
        const double cc = 1.45, zz = 0.55;
        const double g = sf::gamma_fn(cc);
        cplx lhs = sf::hyp2f1(a, b, cc, cplx(zz, 0.0));
        cplx rhs = g * sf::gamma_fn(cc - a - b) /
                       (sf::gamma_fn(cc - a) * sf::gamma_fn(cc - b)) *
                       sf::hyp2f1(a, b, a + b - cc + 1.0, cplx(1.0 - zz, 0.0)) +
                   std::pow(1.0 - zz, cc - a - b) * g *
                       sf::gamma_fn(a + b - cc) /
                       (sf::gamma_fn(a) * sf::gamma_fn(b)) *
                       sf::hyp2f1(cc - a, cc - b, cc - a - b + 1.0,
                                  cplx(1.0 - zz, 0.0));
        rows.push_back(below(S, "connection_1mz",
                             "z to 1-z connection formula at z=0.55",
                             rel(lhs, rhs), 1e-12));
    }
    {
        const double aa = 0.4, bb = 0.7;
        const cplx zz(0.5, 0.2);
        cplx t1 = -bb * sf::hyp2f1(1.0, 1.0 + bb - aa, 2.0 + bb, zz);
        cplx t2 = -(1.0 - zz) * sf::hyp2f1(2.0, 1.0 + bb - aa, 2.0 + bb, zz);
        cplx t3 = (1.0 + bb) * sf::hyp2f1(1.0, bb - aa, 1.0 + bb, zz);
        rows.push_back(below(S, "three_term_2f1",
                             "contiguous three-term relation for 2F1",
                             std::abs(t1 + t2 + t3) / std::abs(t3), 1e-12));
    }
    {
        const double aa = 0.4, cc = 1.3;
        const cplx x(0.9, 0.6);
        cplx t1 = sf::hyp1f1(aa, cc, x);
        cplx t2 = -(1.0 - x / cc) * sf::hyp1f1(aa + 1.0, cc + 1.0, x);
        cplx t3 = -(aa + 1.0) * x / (cc * (cc + 1.0)) *
                  sf::hyp1f1(aa + 2.0, cc + 2.0, x);
        rows.push_back(below(S, "three_term_1f1",
                             "contiguous three-term relation for 1F1",
                             std::abs(t1 + t2 + t3) / std::abs(t1), 1e-12));
    }
    {
        const double aa = 0.45, cc = 0.7;
        const cplx zz(1.0, 0.8);
        cplx lhs = sf::hyp_u(aa, cc, zz);
        cplx rhs = sf::gamma_fn(1.0 - cc) / sf::gamma_fn(1.0 + aa - cc) *
                       sf::hyp1f1(aa, cc, zz) +
                   sf::gamma_fn(cc - 1.0) / sf::gamma_fn(aa) *
                       std::pow(zz, 1.0 - cc) *
                       sf::hyp1f1(1.0 + aa - cc, 2.0 - cc, zz);
        rows.push_back(below(S, "u_kummer_pair",
                             "U as the two-solution combination",
                             rel(lhs, rhs), 1e-10));
        const double a2 = 0.3, c2 = 1.35;
        const cplx z2(1.7, 0.5);
        rows.push_back(below(S, "u_reflection",
                             "U(a,c,z) = z^{1-c} U(1+a-c,2-c,z)",
                             rel(sf::hyp_u(a2, c2, z2),
                                 std::pow(z2, 1.0 - c2) *
                                     sf::hyp_u(1.0 + a2 - c2, 2.0 - c2, z2)),
                             1e-10));
    }
    {
        const double sg = 0.7, r = 1.3;
        double want = sf::gamma_fn(sg) -
                      std::pow(r, sg) / sg *
                          sf::hyp1f1(sg, 1.0 + sg, cplx(-r, 0.0)).real();
        rows.push_back(below(S, "inc_gamma_1f1",
                             "upper incomplete gamma via 1F1",
                             std::abs(sf::inc_gamma_upper(sg, r) - want) /
                                 sf::gamma_fn(sg),
                             1e-12));
    }
    return rows;
}

inline std::vector<CheckRow> suite_appendix_b() {
    namespace al = asymlab;
    std::vector<CheckRow> rows;
    const std::string S = "appendix_b";

    al::AsymCase cs; // canonical X=1, Y=1, Z=0.5, alpha=0.3, beta=0.6
    auto fit = al::proposition_check(cs);
    rows.push_back(below(S, "proposition_exponent",
                         "fitted small-parameter exponent vs alpha",
                         std::abs(fit.exponent - cs.alpha), 0.05));
    rows.push_back(below(S, "proposition_coefficient",
                         "ladder-fitted coefficient vs the closed-form "
                         "integral",
                         fit.coeff_rel_err, 0.02));
    rows.push_back(above(S, "proposition_residual_rate",
                         "remainder exponent must reach the next order",
                         fit.residual_exponent, 0.55));

    const double bounds[8] = {0.02, 1e-7, 0.01, 0.02, 0.02, 1e-9, 0.05, 0.05};
    const char* what[8] = {
        "single-integral cosh damping, fitted coefficient",
        "exact product-kernel expansion on a quadrant",
        "quadrant with pure exponential phases, both coefficients",
        "power-law profile, leading and subleading orders",
        "exponential profile against the coefficient integral",
        "finite hypergeometric moment, exact",
        "mixed-sign quadrant against the coefficient integral",
        "analytic quadrant, unit exponent",
    };
    for (int k = 1; k <= 8; ++k) {
        auto st = al::step_check(k);
        rows.push_back(below(S, "step" + std::to_string(k), what[k - 1],
                             st.residual, bounds[k - 1]));
    }
    return rows;
}

inline std::vector<CheckRow> suite_appendix_c() {
    namespace al = asymlab;
    std::vector<CheckRow> rows;
    const std::string S = "appendix_c";

    rows.push_back(below(S, "laplace_z0",
                         "identity at (0.3,0.6,c=0.4,z=0)",
                         al::appendix_c_identity(0.3, 0.6, cplx(0.4, 0.0),
                                                 cplx(0.0, 0.0)),
                         1e-8));
    rows.push_back(below(S, "laplace_z1",
                         "identity at (0.3,0.6,c=0.4,z=1)",
                         al::appendix_c_identity(0.3, 0.6, cplx(0.4, 0.0),
                                                 cplx(1.0, 0.0)),
                         1e-7));
    rows.push_back(below(S, "laplace_complex",
                         "identity at (0.35,0.75,c=0.3+0.4i,z=0.8+0.5i)",
                         al::appendix_c_identity(0.35, 0.75, cplx(0.3, 0.4),
                                                 cplx(0.8, 0.5)),
                         1e-7));
    rows.push_back(below(S, "laplace_negative_alpha",
                         "identity at (-0.4,0.6,c=0.4,z=1)",
                         al::appendix_c_identity(-0.4, 0.6, cplx(0.4, 0.0),
                                                 cplx(1.0, 0.0)),
                         1e-7));
    {
        std::mt19937 rng(20260825u);
        std::uniform_real_distribution<double> ube(0.15, 0.85), uu(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double be = ube(rng);
            double alp = -0.8 + uu(rng) * (be - 0.15 + 0.8);
            if (std::abs(alp) < 0.05) alp = alp < 0.0 ? -0.05 : 0.05;
            const double cm = 0.1 + 0.7 * uu(rng), ca = -2.0 + 4.0 * uu(rng);
            const double zm = 0.3 + 1.7 * uu(rng), za = -0.9 + 1.8 * uu(rng);
            worst = std::max(
                worst, al::appendix_c_identity(alp, be, std::polar(cm, ca),
                                               std::polar(zm, za)));
        }
        rows.push_back(below(S, "laplace_random",
                             "worst of twenty random parameter draws",
                             worst, 1e-6));
    }
    return rows;
}

} // namespace detail

inline std::vector<CheckRow> suite_appendix(char which) {
    switch (which) {
    case 'A':
        return detail::suite_appendix_a();
    case 'B':
        return detail::suite_appendix_b();
    case 'C':
        return detail::suite_appendix_c();
    default:
        throw std::domain_error("suite_appendix: which must be A, B, or C");
    }
}

inline std::vector<CheckRow> suite_all() {
    std::vector<CheckRow> rows;
    for (auto&& part :
         {suite_specfun(), suite_landau(), suite_ab1(), suite_ab2(),
          suite_eigen(), suite_appendix('A'), suite_appendix('B'),
          suite_appendix('C')})
        rows.insert(rows.end(), part.begin(), part.end());
    return rows;
}

inline bool all_pass(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(),
                       [](const CheckRow& r) { return r.pass; });
}

} // namespace abheat::verify
