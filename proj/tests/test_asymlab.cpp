// Checks for the eps -> 0+ asymptotics of the cosh-damped double-exponential
// integrals and the Laplace-type closure identity: ladder fits of the leading
// fractional power, quadrant decompositions, the eight auxiliary lemmas, and
// random-sample sweeps of the exact identities inside their hypotheses.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "abheat/asymlab.hpp"

using Catch::Approx;
using abheat::cplx;
namespace al = abheat::asymlab;
namespace quad = abheat::quad;
namespace specfun = abheat::specfun;

namespace {

al::AsymCase canonical() { return al::AsymCase{}; } // (1, 1, 0.5, 0.3, 0.6, 0, 0)

}  // namespace

TEST_CASE("hypothesis validation rejects out-of-domain cases", "[asymlab]") {
    al::AsymCase cs = canonical();
    cs.X = -1.0;
    CHECK_THROWS_AS(cs.validate(), std::domain_error);
    cs = canonical();
    cs.alpha = 0.7; // needs alpha < beta
    CHECK_THROWS_AS(cs.validate(), std::domain_error);
    cs = canonical();
    cs.beta = 1.0;
    CHECK_THROWS_AS(cs.validate(), std::domain_error);
    cs = canonical();
    cs.phi2 = 3.2;
    CHECK_THROWS_AS(cs.validate(), std::domain_error);

    cs = canonical();
    cs.eps_ladder = {1e-2, 2e-3};       // too short
    CHECK_THROWS_AS(cs.validate_ladder(), std::domain_error);
    cs.eps_ladder = {2e-2, 1e-3, 1e-4}; // entry above 1e-2
    CHECK_THROWS_AS(cs.validate_ladder(), std::domain_error);
    cs.eps_ladder = {1e-2, 1e-4, 1e-3}; // not decreasing
    CHECK_THROWS_AS(cs.validate_ladder(), std::domain_error);
    cs.eps_ladder = {1e-2, 5e-3, 2e-3}; // spans less than two decades
    CHECK_THROWS_AS(cs.validate_ladder(), std::domain_error);
    cs.eps_ladder = al::AsymCase::default_ladder();
    CHECK_NOTHROW(cs.validate_ladder());
}

TEST_CASE("plane integral is finite and monotonically damped at zero phases", "[asymlab]") {
    const al::AsymCase cs = canonical();
    const auto v0 = al::v_integral(cs, 0.0);
    REQUIRE(std::isfinite(std::abs(v0.value)));
    CHECK(std::abs(v0.value.imag()) < 1e-12); // zero phases: real integrand

    // positive integrand, pointwise dominated as eps grows
    double prev = std::abs(v0.value);
    for (double eps : {1e-3, 1e-2, 1e-1}) {
        const double cur = std::abs(al::v_integral(cs, eps).value);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }

    // frozen refined-quadrature value at eps = 1e-3 (stable to 2e-13 under
    // tolerance and u_max refinement)
    const auto v = al::v_integral(cs, 1e-3);
    CHECK(v.value.real() == Approx(1.583601141377860).epsilon(1e-10));
    CHECK(v.err_estimate < 1e-7);

    CHECK_THROWS_AS(al::v_integral(cs, -1e-4), std::domain_error);
}

TEST_CASE("quadrant decomposition reassembles the plane integral", "[asymlab]") {
    const al::AsymCase cs = canonical();
    const auto whole = al::v_integral(cs, 1e-3);
    cplx sum = 0.0;
    double err = whole.err_estimate + whole.truncation_bound;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            const auto q = al::quadrant_integral(cs, 1e-3, s1, s2);
            sum += q.value;
            err += q.err_estimate + q.truncation_bound;
        }
    CHECK(std::abs(sum - whole.value) <= err + 1e-12);
    CHECK_THROWS_AS(al::quadrant_integral(cs, 1e-3, 0, 1), std::domain_error);
}

TEST_CASE("leading fractional power: canonical coefficient and exponents", "[asymlab]") {
    const auto fit = al::proposition_check(canonical());
    CHECK(std::abs(fit.exponent - 0.3) < 0.05);      // measured 0.2793
    CHECK(fit.coeff_rel_err < 0.02);                 // measured 1.8e-3
    CHECK(fit.residual_exponent >= 0.6 - 0.05);      // measured 0.601
    CHECK(fit.K_ref.real() < 0.0);                   // Gamma(-alpha) < 0 branch
}

TEST_CASE("leading fractional power survives complex phases", "[asymlab]") {
    al::AsymCase cs = canonical();
    cs.phi1 = 0.8;
    cs.phi2 = -1.1;
    const auto fit = al::proposition_check(cs);
    CHECK(std::abs(fit.exponent - 0.3) < 0.05);      // measured 0.2805
    CHECK(fit.coeff_rel_err < 0.02);                 // measured 1.4e-3
    CHECK(fit.residual_exponent >= 0.6 - 0.05);      // measured 0.601
}

TEST_CASE("nearly equal exponents separate slowly but the coefficient holds", "[asymlab]") {
    al::AsymCase cs = canonical();
    cs.alpha = 0.55;
    cs.beta = 0.6;
    const auto fit = al::proposition_check(cs);
    // wider tolerance: the eps^alpha and eps^beta coefficients both scale like
    // 1/(beta - alpha) with opposite signs, so the raw two-point exponent sags
    // below alpha by ~0.1 across this ladder (measured 0.4533); the remainder
    // bound O(eps^beta) is what degrades, not the coefficient itself
    CHECK(fit.coeff_rel_err < 0.05);                 // measured 1.6e-2
    CHECK(std::abs(fit.exponent - 0.55) < 0.12);
    CHECK(fit.residual_exponent >= 0.6 - 0.05);      // measured 0.5998
}

TEST_CASE("vanishing cross coupling recovers the single-integral coefficient", "[asymlab]") {
    al::AsymCase cs = canonical();
    cs.Z = 1e-12;
    const cplx k = al::proposition_coefficient(cs);

    quad::Spec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-16;
    spec.u_max = 110.0;
    const cplx k_single = specfun::gamma_fn(-cs.alpha) * std::pow(cs.X, cs.alpha)
        * quad::integrate_line(
              [&](double u) -> cplx {
                  double s = cs.beta * u - cs.Y * std::exp(std::min(u, 700.0));
                  if (!(s > -745.0)) return cplx(0.0, 0.0);
                  return std::exp(s) * al::detail::denom_inv(u, cs.phi2);
              },
              spec)
              .value;
    CHECK(std::abs(k / k_single - 1.0) < 1e-5); // measured 1.5e-7
}

TEST_CASE("lemma 1: single-integral damping exponent and coefficient", "[asymlab]") {
    const auto out = al::step_check(1);
    CHECK(out.residual < 0.02);                      // measured 1.3e-3
    CHECK(std::abs(out.exponent - 0.4) < 0.05);      // measured 0.3973
}

TEST_CASE("lemma 2: product-kernel double integral closed form", "[asymlab]") {
    const auto out = al::step_check(2);
    CHECK(out.residual < 1e-7);                      // measured 7.6e-15
    CHECK(std::isnan(out.exponent));

    const cplx lhs = al::step2_lhs(1.0, 1.0, 0.6, 0.3, 0.05);
    const cplx rhs = al::step2_rhs(1.0, 1.0, 0.6, 0.3, 0.05);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-7);
    CHECK(std::abs(lhs.imag()) < 1e-12);             // real integrand
    CHECK_THROWS_AS(al::step2_lhs(1.0, 1.0, 0.6, 0.3, -0.05), std::domain_error);
}

TEST_CASE("lemma 3: both closed-form coefficients explain the correction", "[asymlab]") {
    const auto out = al::step_check(3);
    CHECK(out.residual < 0.01);                      // unexplained fraction, 5.8e-4
    CHECK(std::abs(out.exponent - 1.0) <= 0.1);      // remainder is O(eps), 0.9995
}

TEST_CASE("lemma 4: power-law profile against the damped kernel", "[asymlab]") {
    // Stated for profiles decaying faster than t^-2 (sigma > 2); downstream it
    // is invoked with exponential profiles whose decay exponent only exceeds 1.
    // We exercise the sigma > 2 form as stated (sigma = 2.5) and leave the
    // gap between the two hypotheses as a documented discrepancy.
    const auto out = al::step_check(4);
    CHECK(out.residual < 0.02);                      // measured 4.3e-4
    CHECK(std::abs(out.exponent - 0.4) < 0.05);      // measured 0.3979
}

TEST_CASE("lemma 5: exponential profile variant", "[asymlab]") {
    const auto out = al::step_check(5);
    CHECK(out.residual < 0.02);                      // measured 5.0e-5
    CHECK(std::abs(out.exponent - 0.35) < 0.05);     // measured 0.3490
}

TEST_CASE("lemma 6: finite beta-type integral equals its 2F1 form", "[asymlab]") {
    const auto out = al::step_check(6);
    CHECK(out.residual < 1e-9);                      // measured 5.5e-13
    CHECK(std::isnan(out.exponent));
    CHECK_THROWS_AS(al::step6_lhs(1.0, -0.5, 0.2, 0.4), std::domain_error);
}

TEST_CASE("lemma 7: doubly negative quadrant carries the fractional power", "[asymlab]") {
    const auto out = al::step_check(7);
    CHECK(out.residual < 0.05);                      // measured 3.3e-3
    CHECK(std::abs(out.exponent - 0.3) < 0.05);      // measured 0.2772
}

TEST_CASE("lemma 8: doubly positive quadrant is analytic in the damping", "[asymlab]") {
    const auto out = al::step_check(8);
    CHECK(out.residual <= 0.05);                     // |exponent - 1|, 2.4e-4
    CHECK(out.exponent == Approx(1.0).margin(0.05));
}

TEST_CASE("step index out of range is rejected", "[asymlab]") {
    CHECK_THROWS_AS(al::step_check(0), std::domain_error);
    CHECK_THROWS_AS(al::step_check(9), std::domain_error);
}

TEST_CASE("Laplace-type identity: spot values", "[asymlab]") {
    // z = 0 reduces to the pure beta-type base case
    CHECK(al::appendix_c_identity(0.2, 0.6, cplx(0.5), cplx(0.0)) < 1e-8);  // 1.0e-13
    CHECK(al::appendix_c_identity(0.2, 0.6, cplx(0.5), cplx(1.0)) < 1e-7);  // 3.8e-13
    CHECK(al::appendix_c_identity(0.35, 0.75, cplx(0.3, 0.4), cplx(0.8, 0.5))
          < 1e-7);                                                          // 4.4e-13
    CHECK(al::appendix_c_identity(-0.4, 0.5, cplx(0.6), cplx(1.5)) < 1e-7); // 3.3e-12

    // real c, real z: both sides real
    const cplx lhs = al::int_u_lhs(0.2, 0.6, cplx(0.5), cplx(1.0));
    const cplx rhs = al::int_u_rhs(0.2, 0.6, cplx(0.5), cplx(1.0));
    CHECK(std::abs(lhs.imag()) < 1e-10);
    CHECK(std::abs(rhs.imag()) < 1e-10);

    CHECK_THROWS_AS(al::int_u_lhs(0.7, 0.6, cplx(0.5), cplx(1.0)), std::domain_error);
    CHECK_THROWS_AS(al::int_u_lhs(0.2, 0.6, cplx(1.5), cplx(1.0)), std::domain_error);
    CHECK_THROWS_AS(al::int_u_lhs(0.2, 0.6, cplx(0.5), cplx(-1.0)), std::domain_error);
}

TEST_CASE("beta-type half-line integral matches Gradshteyn-Ryzhik 3.227", "[asymlab]") {
    const cplx lhs = al::beta_2f1_lhs(0.7, 1.9, 1.2, 0.8);
    const cplx rhs = al::beta_2f1_rhs(0.7, 1.9, 1.2, 0.8);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-9); // measured 1.3e-14
    CHECK_THROWS_AS(al::beta_2f1_lhs(0.7, 0.6, 1.0, 1.0), std::domain_error);
}

TEST_CASE("exact identities hold across a random sample inside hypotheses", "[asymlab]") {
    std::mt19937 rng(20260825u);
    auto unif = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst2 = 0.0, worst6 = 0.0, worstb = 0.0, worstf0 = 0.0, worstu = 0.0;
    for (int i = 0; i < 20; ++i) {
        // product-kernel closed form
        double sg, nu;
        do {
            sg = unif(0.1, 0.9);
            nu = unif(0.1, 0.9);
        } while (std::abs(sg - nu) < 0.05);
        const double a = unif(0.5, 2.0), b = unif(0.5, 2.0), e = unif(0.01, 0.1);
        const cplx r2 = al::step2_rhs(a, b, sg, nu, e);
        worst2 = std::max(worst2, std::abs(al::step2_lhs(a, b, sg, nu, e) - r2) / std::abs(r2));

        // finite beta-type integral; keep the 2F1 argument X/(X+Z) <= 0.9
        const double X = unif(0.3, 2.0), Z = unif(X / 7.0, 2.0);
        const double c6 = unif(-0.6, 1.5), d6 = unif(-1.5, 1.5);
        const cplx r6 = al::step6_rhs(X, Z, c6, d6);
        worst6 = std::max(worst6, std::abs(al::step6_lhs(X, Z, c6, d6) - r6) / std::abs(r6));

        // half-line beta-type integral; g/b within the 2F1 series window
        const double nub = unif(0.1, 0.9), sgb = nub + unif(0.2, 1.5);
        const double bb = unif(0.5, 2.0), gg = bb * unif(0.2, 1.8);
        const cplx rb = al::beta_2f1_rhs(nub, sgb, bb, gg);
        worstb = std::max(worstb,
                          std::abs(al::beta_2f1_lhs(nub, sgb, bb, gg) - rb) / std::abs(rb));

        // Laplace-type identity at z = 0 and at generic z with Re z > 0
        // (|alpha| >= 0.05 keeps Gamma(-alpha) away from its pole; moderate
        // |arg c| + |arg z| keeps the U argument off the negative real axis)
        const double be = unif(0.15, 0.85);
        double alp;
        do {
            alp = unif(-0.8, be - 0.15);
        } while (std::abs(alp) < 0.05);
        const cplx cc = std::polar(unif(0.1, 0.8), unif(-2.0, 2.0));
        worstf0 = std::max(worstf0, al::appendix_c_identity(alp, be, cc, cplx(0.0)));
        const cplx zz = std::polar(unif(0.3, 2.0), unif(-0.9, 0.9));
        worstu = std::max(worstu, al::appendix_c_identity(alp, be, cc, zz));
    }
    CHECK(worst2 < 1e-7);   // measured 2.3e-14
    CHECK(worst6 < 1e-7);   // measured 2.2e-12
    CHECK(worstb < 1e-7);   // measured 1.5e-12
    CHECK(worstf0 < 1e-7);  // measured 2.3e-12
    CHECK(worstu < 1e-7);   // measured 3.4e-12
}
