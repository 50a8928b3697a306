// Bound state above the lowest Landau level. Anchors: the two independent
// representations of the second-vortex correction as mutual oracles, the
// finite-difference eigenvalue residual of psi2_tilde, the cut boundary
// conditions (exact on L_b, exponentially small defect on L_a), the
// normalization drift, the confluent-function identities behind the
// construction, and the long-time coefficient of the two-vortex heat kernel.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "abheat/ab2.hpp"
#include "abheat/eigen.hpp"

using abheat::BiPolarPoint;
using abheat::cplx;
using abheat::ModelParams;
namespace eg = abheat::eigen;
using Catch::Approx;

namespace {

const double pi = abheat::pi;

ModelParams figure_params(double D = 3.5) {
    return ModelParams::make(4.0, 0.4, 0.7, std::sqrt(D / 4.0));
}

// |psi2_tilde|^2 for the norm quadrature. Behind b the line-integral form
// of phi develops a near-pole as theta_b -> pi while |phi| itself is
// ~e^{-0.8 D} there, so phi is dropped in that sector (moves the norm by
// < 1e-6); tolerances are matched to the 10 e^{-D/2} assertion bound.
struct NormDensity {
    const ModelParams& prm;
    abheat::quad::Spec line_spec, seg_spec;

    explicit NormDensity(const ModelParams& p) : prm(p) {
        line_spec = eg::phi_integral_spec(prm);
        line_spec.rel_tol = 1e-5;
        line_spec.abs_tol = 1e-10;
        line_spec.u_max = 60.0;
        seg_spec.rel_tol = 1e-7;
        seg_spec.abs_tol = 1e-12;
    }

    double operator()(double x1, double x2) const {
        if (x2 < 1e-9) x2 = 1e-9; // keep theta_b clear of the cut guard band
        auto p = BiPolarPoint::from_cartesian(x1, x2, prm);
        cplx ph{0.0, 0.0};
        if (p.r_b < 0.95 * prm.R)
            ph = eg::phi_hypergeometric(p, prm, &seg_spec);
        else if (std::abs(p.theta_b) < 0.75 * pi)
            ph = eg::phi_integral(p, prm, &line_spec);
        return std::norm(eg::psi1(p, prm) + ph);
    }
};

double psi2_norm_squared(const ModelParams& prm) {
    NormDensity dens(prm);
    const double L = prm.R + std::sqrt(40.0 / prm.omega_c);
    abheat::quad::Spec so, si;
    so.rel_tol = 3e-4;
    so.abs_tol = 1e-5;
    si.rel_tol = 3e-4;
    si.abs_tol = 1e-5;
    // density is even in x2 (reflection conjugates psi1 and phi), so
    // integrate the upper half plane and double; the x1 range is split at
    // the vortices so the r^{2 alpha}, r^{2 beta} cusps sit at endpoints
    auto inner = [&](double x2) -> cplx {
        auto f = [&](double x1) -> cplx { return dens(x1, x2); };
        return abheat::quad::integrate_segment(f, -L, 0.0, si).value +
               abheat::quad::integrate_segment(f, 0.0, prm.R, si).value +
               abheat::quad::integrate_segment(f, prm.R, L + prm.R, si).value;
    };
    return 2.0 * abheat::quad::integrate_segment(inner, 0.0, L, so)
                     .value.real();
}

} // namespace

TEST_CASE("psi1: normalization, ring maximum, zero at the vortex", "[eigen]") {
    auto prm = figure_params();

    abheat::quad::Spec s;
    s.rel_tol = 1e-12;
    auto f = [&](double r) -> cplx {
        auto p = BiPolarPoint::from_polar_a(r, 0.3, prm);
        return std::norm(eg::psi1(p, prm)) * r;
    };
    const double n1 =
        2.0 * pi * abheat::quad::integrate_halfline(f, s).value.real();
    CHECK(std::abs(n1 - 1.0) < 1e-8);

    // |psi1| peaks on the circle r = sqrt(2 alpha / omega_c), xi = sqrt(2 alpha)
    const double rstar = std::sqrt(2.0 * prm.alpha / prm.omega_c);
    const int n = 600;
    int ibest = -1;
    double best = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double r = 2.0 * rstar * i / n;
        const double v =
            std::abs(eg::psi1(BiPolarPoint::from_polar_a(r, 0.0, prm), prm));
        if (v > best) {
            best = v;
            ibest = i;
        }
    }
    CHECK(std::abs(2.0 * rstar * ibest / n - rstar) <= 2.0 * rstar / n);

    CHECK(eg::psi1(BiPolarPoint::from_polar_a(0.0, 0.0, prm), prm) ==
          cplx{0.0, 0.0});

    auto p = BiPolarPoint::from_cartesian(0.4, 0.3, prm);
    auto ws = eg::sample(p, prm);
    CHECK(ws.psi2_tilde == ws.psi1 + ws.phi);
    CHECK(ws.psi1 == eg::psi1(p, prm));
    CHECK(ws.phi == eg::phi(p, prm));
}

TEST_CASE("phi: integral and hypergeometric forms agree on the overlap",
          "[eigen]") {
    auto prm = figure_params();
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> ur(0.05, 0.9), ut(-pi / 2, pi / 2);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        auto p = BiPolarPoint::from_polar_b(ur(rng) * prm.R, ut(rng), prm);
        const cplx a = eg::phi_integral(p, prm);
        const cplx b = eg::phi_hypergeometric(p, prm);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    CHECK(worst < 1e-6); // observed ~5e-12
}

TEST_CASE("psi2_tilde vanishes at the second vortex", "[eigen]") {
    auto prm = figure_params();
    auto b = BiPolarPoint::from_polar_b(0.0, 0.0, prm);
    const cplx p1 = eg::psi1(b, prm);
    REQUIRE(std::abs(p1) > 0.1);

    // integral form: the u-integral contributes pi/sin(pi beta) exactly
    const cplx sum_int = p1 + eg::phi_integral(b, prm);
    CHECK(std::abs(sum_int) / std::abs(p1) < 1e-10);

    // hypergeometric form: both correction terms vanish with z
    CHECK(std::abs(p1 + eg::phi_hypergeometric(b, prm)) / std::abs(p1) <
          1e-14);
    CHECK(std::abs(eg::psi2_tilde(b, prm)) / std::abs(p1) < 1e-14);
}

TEST_CASE("boundary condition on L_b: value and angular derivative jump by "
          "e^{2 pi i beta}",
          "[eigen]") {
    auto prm = figure_params();
    const cplx jump = std::polar(1.0, 2.0 * pi * prm.beta);
    const double rb = 0.5 * prm.R;
    auto val = [&](double th) {
        return eg::psi2_tilde(BiPolarPoint::from_polar_b(rb, th, prm), prm);
    };
    auto dval = [&](double th) {
        const double e = 1e-5;
        return (val(th + e) - val(th - e)) / (2.0 * e);
    };
    auto mismatch = [&](auto&& g, double del) {
        return g(pi - del) - jump * g(-pi + del);
    };

    const cplx j2 = mismatch(val, 0.02), j1 = mismatch(val, 0.01);
    CHECK(std::abs(j1) / std::abs(j2) == Approx(0.5).margin(0.05));
    // linear in the offset: the Richardson extrapolant collapses
    CHECK(std::abs(2.0 * j1 - j2) < 0.01 * std::abs(j2));

    const cplx d2 = mismatch(dval, 0.02), d1 = mismatch(dval, 0.01);
    CHECK(std::abs(d1) / std::abs(d2) == Approx(0.5).margin(0.05));
    CHECK(std::abs(2.0 * d1 - d2) < 0.01 * std::abs(d2));
}

TEST_CASE("boundary defect on L_a shrinks at the predicted rate in D",
          "[eigen]") {
    // the defect is phi's failure to jump; at a fixed physical radius its
    // ratio between two D values follows (D1/D2)^{alpha-beta} e^{-(D1-D2)/2}
    auto defect = [](double D) {
        auto prm = figure_params(D);
        const double ra = 0.4;
        auto up = BiPolarPoint::from_polar_a(ra, pi - 1e-8, prm);
        auto dn = BiPolarPoint::from_polar_a(ra, -pi + 1e-8, prm);
        const cplx pu = eg::psi2_tilde(up, prm);
        const cplx pd = eg::psi2_tilde(dn, prm);
        const cplx mis = pu - std::polar(1.0, 2.0 * pi * prm.alpha) * pd;
        return std::abs(mis) / std::abs(pu);
    };
    const double d10 = defect(10.0), d20 = defect(20.0);
    CHECK(d20 < 1e-4); // observed 1.1e-5
    const double pred =
        std::pow(10.0 / 20.0, 0.4 - 0.7) * std::exp(-(10.0 - 20.0) / 2.0);
    const double ratio = (d10 / d20) / pred;
    CHECK(ratio > 1.0 / 3.0);
    CHECK(ratio < 3.0); // observed 1.46
}

TEST_CASE("psi2_tilde normalization drifts only by O(e^{-D/2})",
          "[eigen]") {
    auto prm = figure_params(10.0);
    const double n2 = psi2_norm_squared(prm);
    CHECK(std::abs(n2 - 1.0) < 10.0 * std::exp(-0.5 * prm.D)); // ~5.9e-3 vs 6.7e-2
}

TEST_CASE("psi2_tilde solves the eigenvalue equation off the cuts",
          "[eigen]") {
    auto prm = figure_params();
    std::mt19937 rng(20260825);
    std::uniform_real_distribution<double> ux(-1.2, 2.4), uy(-1.2, 1.2);
    double worst = 0.0;
    int kept = 0;
    while (kept < 30) {
        auto p = BiPolarPoint::from_cartesian(ux(rng), uy(rng), prm);
        const double da = p.x1 <= 0.0 ? std::abs(p.x2) : p.r_a;
        const double db = p.x1 >= prm.R ? std::abs(p.x2) : p.r_b;
        if (std::min(da, db) < 0.05) continue;
        worst = std::max(worst, eg::eigen_residual(p, prm));
        ++kept;
    }
    CHECK(worst < 1e-4); // observed ~1e-9

    // psi1 alone solves the same equation away from L_a
    auto psi1_field = [&](const BiPolarPoint& q) { return eg::psi1(q, prm); };
    for (double x1 : {0.35, -0.6, 1.8}) {
        auto p = BiPolarPoint::from_cartesian(x1, 0.45, prm);
        CHECK(eg::eigen_residual_of(psi1_field, p, prm, 1e-3,
                                    eg::level_energy(prm)) < 1e-4);
    }

    // detuned energy is loudly rejected
    auto p = BiPolarPoint::from_cartesian(0.35, 0.4, prm);
    CHECK(eg::eigen_residual_of(psi1_field, p, prm, 1e-3,
                                (prm.alpha + 1.5) * prm.omega_c) > 0.1);

    CHECK_THROWS_AS(
        eg::eigen_residual(BiPolarPoint::from_cartesian(1e-4, 1e-4, prm), prm),
        std::domain_error);
    CHECK_THROWS_AS(eg::eigen_residual(p, prm, 0.0), std::domain_error);
}

TEST_CASE("g blocks satisfy the confluent differential identity", "[eigen]") {
    auto prm = figure_params();
    const cplx z{0.8, 0.3}, zb{0.8, -0.3};
    auto r = eg::g_identity_residuals(z, zb, prm);
    CHECK(r.residual_g1 < 1e-6); // observed 1.3e-8
    CHECK(r.residual_g2 < 1e-6); // observed 5.2e-8

    auto rd = eg::g_identity_residuals(z, zb, prm, 0.02, prm.alpha + 0.2);
    CHECK(rd.residual_g1 > 0.1);
    CHECK(rd.residual_g2 > 0.1);

    CHECK_THROWS_AS(eg::g_identity_residuals(cplx{4.0, 0.0}, zb, prm),
                    std::domain_error);
    CHECK_THROWS_AS(eg::g_identity_residuals(z, zb, prm, 0.0),
                    std::domain_error);
}

TEST_CASE("phi tends to the lowest-level state of the b vortex as both "
          "fluxes shrink",
          "[eigen]") {
    // The sin(pi beta) prefactor does not send phi to zero: the u-integral
    // accumulates mass pi/sin(pi beta) in its left tail, and phi converges
    // to the lowest-level state attached to b. The differences shrink
    // linearly with beta.
    double prev = 1e9;
    double last = 0.0;
    for (double be : {0.2, 0.1, 0.05}) {
        auto prm = ModelParams::make(4.0, be * be, be, std::sqrt(3.5 / 4.0));
        auto p = BiPolarPoint::from_polar_b(0.5 * prm.R, 0.7, prm);
        abheat::quad::Spec s;
        s.rel_tol = 1e-10;
        s.abs_tol = 1e-15;
        s.u_max = std::min(740.0, 35.0 / (be - be * be) + 40.0);
        const cplx v = eg::phi_integral(p, prm, &s);
        const cplx lim =
            -std::sqrt(prm.omega_c / (2.0 * pi)) *
            std::exp(-0.25 * prm.omega_c *
                     (prm.R * prm.R + p.r_b * p.r_b)) *
            std::polar(1.0, 0.5 * prm.omega_c * prm.R * p.r_b *
                                std::sin(p.theta_b));
        REQUIRE(std::abs(lim) > 0.2);
        last = std::abs(v - lim);
        CHECK(last < prev);
        prev = last;
    }
    CHECK(last < 0.0075); // observed 5.6e-3 at beta = 0.05
}

TEST_CASE("phi domain rejections", "[eigen]") {
    auto prm = figure_params();
    CHECK_THROWS_AS(
        eg::phi_integral(BiPolarPoint::from_polar_b(0.5 * prm.R, pi, prm), prm),
        std::domain_error);
    CHECK_THROWS_AS(
        eg::phi_integral(BiPolarPoint::from_cartesian(2.0 * prm.R, 0.0, prm),
                         prm),
        std::domain_error);
    CHECK_THROWS_AS(
        eg::phi_hypergeometric(
            BiPolarPoint::from_polar_b(1.1 * prm.R, 0.3, prm), prm),
        std::domain_error);
    CHECK_THROWS_AS(
        eg::phi_hypergeometric(BiPolarPoint::from_polar_b(prm.R, 0.3, prm),
                               prm),
        std::domain_error);

    auto swapped = ModelParams::make(4.0, 0.7, 0.4, 1.0);
    CHECK_THROWS_AS(
        eg::phi_integral(BiPolarPoint::from_cartesian(0.4, 0.3, swapped),
                         swapped),
        std::domain_error);
}

TEST_CASE("long-time two-vortex kernel carries the psi2_tilde dyad",
          "[eigen]") {
    auto prm = figure_params(8.0);
    auto x = BiPolarPoint::from_cartesian(0.3, 0.35, prm);
    auto x0 = BiPolarPoint::from_cartesian(0.6, 0.0, prm); // on the segment
    const double w = prm.omega_c;

    // subtract the direct term, then solve for the coefficients of the four
    // slowest decay rates; the (alpha + 1/2) omega_c one is the dyad
    const double E[4] = {0.5 * w, (prm.alpha + 0.5) * w, (prm.beta + 0.5) * w,
                         1.5 * w};
    const double ts[4] = {9.0 / w, 11.0 / w, 13.0 / w, 15.0 / w};
    double m[4][4];
    cplx rhs[4];
    for (int i = 0; i < 4; ++i) {
        auto res = abheat::ab2::ab2_kernel(x, x0, ts[i], prm, 2);
        rhs[i] = res.total - res.term_I;
        for (int k = 0; k < 4; ++k)
            m[i][k] = std::exp(-E[k] * (ts[i] - ts[0]));
    }
    for (int c = 0; c < 4; ++c) { // partial-pivot elimination
        int piv = c;
        for (int i = c + 1; i < 4; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
        std::swap(rhs[c], rhs[piv]);
        for (int i = c + 1; i < 4; ++i) {
            const double f = m[i][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[i][k] -= f * m[c][k];
            rhs[i] -= f * rhs[c];
        }
    }
    cplx cs[4];
    for (int i = 3; i >= 0; --i) {
        cplx acc = rhs[i];
        for (int k = i + 1; k < 4; ++k) acc -= m[i][k] * cs[k];
        cs[i] = acc / m[i][i];
    }
    const cplx c1 = cs[1] * std::exp(E[1] * ts[0]);

    const cplx p1x = eg::psi1(x, prm), p1y = eg::psi1(x0, prm);
    const cplx phx = eg::phi(x, prm), phy = eg::phi(x0, prm);
    // the kernel reproduces the dyad up to the neglected phi * conj(phi)
    const cplx dyad = p1x * std::conj(p1y) + p1x * std::conj(phy) +
                      phx * std::conj(p1y);
    CHECK(std::abs(c1 - dyad) / std::abs(dyad) < 0.02); // observed 4e-5
    const cplx full = (p1x + phx) * std::conj(p1y + phy);
    CHECK(std::abs(c1 - full) / std::abs(full) < 0.02); // observed 2.3e-3
}
