#pragma once

// Real-parameter special functions needed by the magnetic heat-kernel
// formulas: gamma and friends, generalized Laguerre, modified Bessel I,
// upper incomplete gamma, and the hypergeometric family 2F1 / 1F1 / U.
//
// Everything is double precision. Series follow one termination rule:
// stop once the last term is below series_tol times the running sum for
// three consecutive terms (guards against accidental zero terms).

#include <cmath>
#include <cstdint>
#include <limits>

#include "abheat/common.hpp"

namespace abheat::specfun {

struct Config {
    double series_tol = 1e-12; // relative term cutoff for series termination
    int max_terms = 4000;      // hard cap on series length
    double recurrence_switch = 60.0; // argument where series hands off to
                                     // large-argument evaluation
};

// sin(pi*x) with argument reduction; accurate for large |x| where
// std::sin(pi*x) would lose digits to the pi multiplication.
inline double sin_pi(double x) {
    double r = std::remainder(x, 2.0); // sin(pi x) is 2-periodic in x
    if (r > 0.5) r = 1.0 - r;          // fold so integers map to exactly 0
    else if (r < -0.5) r = -1.0 - r;
    return std::sin(pi * r);
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

namespace detail {

inline void require_valid(const Config& cfg) {
    if (!(cfg.series_tol > 0.0 && cfg.series_tol < 1e-3))
        throw std::domain_error("specfun: series_tol must be in (0, 1e-3)");
    if (cfg.max_terms < 64)
        throw std::domain_error("specfun: max_terms must be >= 64");
}

// Lanczos approximation, g = 7, 9 coefficients (Godfrey's set); relative
// error ~1e-15 across the real line away from the poles.
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline double lanczos_sum(double z) { // z = x - 1, x >= 0.5
    double a = lanczos_c[0];
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (z + i);
    return a;
}

} // namespace detail

inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    double z = x - 1.0;
    double t = z + 7.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(z));
}

inline double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    if (x < 0.5) return pi / (sin_pi(x) * gamma_fn(1.0 - x));
    if (x > 141.0) {
        // product form would overflow in pow(); go through logs
        double lg = log_gamma(x);
        if (lg > 709.0) throw std::overflow_error("gamma_fn: overflow");
        return std::exp(lg);
    }
    double z = x - 1.0;
    double t = z + 7.5;
    return std::sqrt(two_pi) * std::pow(t, z + 0.5) * std::exp(-t) *
           detail::lanczos_sum(z);
}

// 1/Gamma(x), zero at the poles. Lets the two-term Kummer formula for U
// drop terms cleanly when a parameter hits a nonpositive integer.
inline double recip_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 141.0) {
        double lg = log_gamma(x);
        return lg > 709.0 ? 0.0 : std::exp(-lg);
    }
    return 1.0 / gamma_fn(x);
}

// Generalized Laguerre L_n^sigma(x) by the three-term recurrence in n,
// which stays stable far beyond the coefficient expansion.
inline double laguerre(int n, double sigma, double x,
                       const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (n < 0) throw std::domain_error("laguerre: requires n >= 0");
    if (!(sigma > -1.0)) throw std::domain_error("laguerre: requires sigma > -1");
    if (n == 0) return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 + sigma - x;
    for (int k = 1; k < n; ++k) {
        double lkp1 = ((2.0 * k + 1.0 + sigma - x) * lk - (k + sigma) * lkm1) /
                      (k + 1.0);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

// Modified Bessel I_nu(x), nu >= 0, x >= 0. Ascending series with scaled
// accumulation (terms are positive, so the only hazard is overflow of the
// partial sum); large-x asymptotic expansion when it can reach tolerance.
inline double bessel_i(double nu, double x, const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (!(nu >= 0.0) || !(x >= 0.0))
        throw std::domain_error("bessel_i: requires nu >= 0 and x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    if (x > cfg.recurrence_switch) {
        // I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k  (DLMF 10.40.1)
        double sum = 1.0, term = 1.0;
        bool converged = false;
        for (int k = 1; k <= 60; ++k) {
            double factor = (4.0 * nu * nu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) /
                            (8.0 * k * x);
            double next = -term * factor;
            if (std::abs(next) >= std::abs(term)) break; // divergent tail
            term = next;
            sum += term;
            if (std::abs(term) < cfg.series_tol * std::abs(sum)) {
                converged = true;
                break;
            }
        }
        if (converged && sum > 0.0) {
            double lv = x - 0.5 * std::log(two_pi * x) + std::log(sum);
            if (lv > 709.7) throw std::overflow_error("bessel_i: overflow");
            return std::exp(lv);
        }
        // fall through to the scaled series (large nu relative to x)
    }

    double q = 0.25 * x * x;
    double sum = 1.0, term = 1.0, offset = 0.0;
    int small_count = 0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (term < cfg.series_tol * sum) {
            if (++small_count >= 3) break;
        } else {
            small_count = 0;
        }
        if (sum > 1e250) { // rescale to dodge overflow of the partial sum
            sum *= 1e-250;
            term *= 1e-250;
            offset += 250.0 * std::log(10.0);
        }
    }
    if (small_count < 3)
        throw std::runtime_error("bessel_i: series did not converge");
    double lv = nu * std::log(0.5 * x) - log_gamma(nu + 1.0) + offset +
                std::log(sum);
    if (lv > 709.7) throw std::overflow_error("bessel_i: overflow");
    return std::exp(lv);
}

// Upper incomplete gamma Gamma(sigma, r) for real sigma (nonpositive
// integers excluded), r >= 0. Lower series below the crossover, Legendre
// continued fraction above it, upward recurrence for sigma <= 0.
inline double inc_gamma_upper(double sigma, double r,
                              const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (!(r >= 0.0)) throw std::domain_error("inc_gamma_upper: requires r >= 0");
    if (r == 0.0) {
        if (sigma > 0.0) return gamma_fn(sigma);
        throw std::domain_error("inc_gamma_upper: diverges at r = 0, sigma <= 0");
    }
    if (is_nonpositive_integer(sigma))
        throw std::domain_error("inc_gamma_upper: integer sigma <= 0 unsupported");

    if (sigma <= 0.0) {
        // raise sigma into (0,1] with Gamma(s,r) = (Gamma(s+1,r) - r^s e^-r)/s
        int m = static_cast<int>(std::floor(-sigma)) + 1;
        double g = inc_gamma_upper(sigma + m, r, cfg);
        for (int j = m - 1; j >= 0; --j) {
            double s = sigma + j;
            g = (g - std::pow(r, s) * std::exp(-r)) / s;
        }
        return g;
    }

    if (r < sigma + 1.0) {
        // Gamma(sigma) - lower series (positive terms, no cancellation)
        double t = 1.0 / sigma;
        double sum = t;
        int small_count = 0;
        for (int k = 1; k < cfg.max_terms; ++k) {
            t *= r / (sigma + k);
            sum += t;
            if (t < cfg.series_tol * sum) {
                if (++small_count >= 3) break;
            } else {
                small_count = 0;
            }
        }
        return gamma_fn(sigma) - std::pow(r, sigma) * std::exp(-r) * sum;
    }

    // Legendre continued fraction via modified Lentz
    const double tiny = 1e-300;
    double b = r + 1.0 - sigma;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < cfg.max_terms; ++i) {
        double an = -i * (i - sigma);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < cfg.series_tol) break;
    }
    return std::exp(-r + sigma * std::log(r)) * h;
}

// Gauss hypergeometric 2F1(a,b;c;z) by its defining series; the library
// only ever needs |z| < 1, so no continuation machinery lives here.
inline cplx hyp2f1(double a, double b, double c, cplx z,
                   const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (std::abs(z) >= 1.0)
        throw std::domain_error("hyp2f1: requires |z| < 1");
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c is a nonpositive integer");
    cplx term = 1.0, sum = 1.0;
    int small_count = 0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= cfg.series_tol * std::abs(sum)) {
            if (++small_count >= 3) return sum;
        } else {
            small_count = 0;
        }
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

namespace detail {

inline cplx hyp1f1_series(double a, double c, cplx z, const Config& cfg) {
    cplx term = 1.0, sum = 1.0;
    int small_count = 0;
    for (int k = 0; k < cfg.max_terms; ++k) {
        term *= (a + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= cfg.series_tol * std::abs(sum)) {
            if (++small_count >= 3) return sum;
        } else {
            small_count = 0;
        }
    }
    throw std::runtime_error("hyp1f1: series did not converge");
}

// Large-|z| expansion, DLMF 13.7.1/13.7.2 with both sectors, truncated at
// the smallest term. Adequate for the moderate parameters used here.
inline cplx hyp1f1_asymptotic(double a, double c, cplx z, const Config& cfg) {
    auto optimal = [&](double p, double q, cplx w) {
        // sum_k (p)_k (q)_k / (k! w^k), truncated at the smallest term
        cplx term = 1.0, sum = 1.0;
        double best = 1.0;
        for (int k = 0; k < 60; ++k) {
            term *= (p + k) * (q + k) / ((k + 1.0) * w);
            if (std::abs(term) > best) break;
            best = std::abs(term);
            sum += term;
            if (best < cfg.series_tol * std::abs(sum)) break;
        }
        return sum;
    };
    cplx s1 = optimal(c - a, 1.0 - a, z);
    cplx s2 = optimal(a, a - c + 1.0, -z);
    cplx t1 = std::exp(z) * std::pow(z, cplx(a - c)) * recip_gamma(a) * s1;
    cplx t2 = std::pow(-z, cplx(-a)) * recip_gamma(c - a) * s2;
    return gamma_fn(c) * (t1 + t2);
}

} // namespace detail

// Kummer confluent 1F1(a;c;z). Negative real part goes through Kummer's
// transformation so the series keeps a stable sign pattern.
inline cplx hyp1f1(double a, double c, cplx z, const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp1f1: c is a nonpositive integer");
    if (std::abs(z) > cfg.recurrence_switch)
        return detail::hyp1f1_asymptotic(a, c, z, cfg);
    if (z.real() < 0.0)
        return std::exp(z) * detail::hyp1f1_series(c - a, c, -z, cfg);
    return detail::hyp1f1_series(a, c, z, cfg);
}

// Tricomi U(a,c,z) from the two-term Kummer combination
//   U = pi/sin(pi c) [ 1F1(a;c;z)/(Gamma(1+a-c)Gamma(c))
//                      - z^(1-c) 1F1(1+a-c;2-c;z)/(Gamma(a)Gamma(2-c)) ].
// Integer c is a removable singularity; it is bridged by averaging the
// evaluations at c +- 1e-6 (safety net only; in-domain callers keep c
// away from the integers).
inline cplx hyp_u(double a, double c, cplx z, const Config& cfg = Config{}) {
    detail::require_valid(cfg);
    if (z == cplx(0.0)) {
        if (c >= 1.0) throw std::domain_error("hyp_u: singular at z = 0 for c >= 1");
        return gamma_fn(1.0 - c) * recip_gamma(1.0 + a - c);
    }
    if (z.imag() == 0.0 && z.real() < 0.0)
        throw std::domain_error("hyp_u: branch cut along the negative real axis");
    if (std::abs(z.imag()) == 0.0 && z.real() > cfg.recurrence_switch) {
        // U(a,c,z) ~ z^-a sum_k (a)_k(a-c+1)_k (-z)^-k / k!  (DLMF 13.7.3)
        double x = z.real();
        double term = 1.0, sum = 1.0, best = 1.0;
        for (int k = 0; k < 60; ++k) {
            term *= -(a + k) * (a - c + 1.0 + k) / ((k + 1.0) * x);
            if (std::abs(term) > best) break;
            best = std::abs(term);
            sum += term;
            if (best < cfg.series_tol * std::abs(sum)) break;
        }
        return std::pow(x, -a) * sum;
    }
    double cr = std::round(c);
    if (std::abs(c - cr) < 1e-9) {
        const double delta = 1e-6;
        return 0.5 * (hyp_u(a, cr + delta, z, cfg) + hyp_u(a, cr - delta, z, cfg));
    }
    cplx f1 = hyp1f1(a, c, z, cfg) * (recip_gamma(1.0 + a - c) * recip_gamma(c));
    cplx f2 = std::pow(z, cplx(1.0 - c)) * hyp1f1(1.0 + a - c, 2.0 - c, z, cfg) *
              (recip_gamma(a) * recip_gamma(2.0 - c));
    return pi / sin_pi(c) * (f1 - f2);
}

} // namespace abheat::specfun
