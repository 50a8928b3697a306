#pragma once

// Parameters and geometry for one or two flux lines in a uniform field.
// Internally hbar = mu = 1: every frequency is omega_c-scaled, lengths
// scale with 1/sqrt(omega_c). Raw physical constants appear only in
// from_physical and are folded into (omega_c, alpha, beta) immediately.

#include <cmath>

#include "abheat/common.hpp"

namespace abheat {

// x ^ y = x1 y2 - x2 y1
inline double wedge(double x1, double x2, double y1, double y2) {
    return x1 * y2 - x2 * y1;
}

struct ModelParams {
    double omega_c; // cyclotron frequency, > 0
    double alpha;   // flux of the vortex at a = (0, 0), in (0, 1)
    double beta;    // flux of the vortex at b = (R, 0), in (0, 1)
    double R;       // vortex separation, > 0
    double D;       // omega_c R^2

    static ModelParams make(double omega_c, double alpha, double beta,
                            double R) {
        if (!(omega_c > 0.0))
            throw std::domain_error("ModelParams: omega_c must be > 0");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("ModelParams: alpha must be in (0,1)");
        if (!(beta > 0.0 && beta < 1.0))
            throw std::domain_error("ModelParams: beta must be in (0,1)");
        if (!(R > 0.0))
            throw std::domain_error("ModelParams: R must be > 0");
        return ModelParams{omega_c, alpha, beta, R, omega_c * R * R};
    }

    // two-solenoid formulas degenerate at alpha = beta
    void require_two_vortex() const {
        if (alpha == beta)
            throw std::domain_error(
                "ModelParams: two-vortex operations need alpha != beta");
    }

    // the tracked level sits above the first Landau level only for
    // alpha < beta
    void require_ordered_fluxes() const {
        if (!(alpha < beta))
            throw std::domain_error(
                "ModelParams: eigenvalue formulas need alpha < beta");
    }
};

// omega_c = |e| B / (mu c); flux parameters -e Phi / (2 pi hbar c) reduced
// mod 1 into (0, 1). Integer total flux (reduction hitting 0) is rejected:
// the vortex would be gauge-trivial.
inline ModelParams from_physical(double e, double B, double mu, double hbar,
                                 double c, double Phi_A, double Phi_B,
                                 double R) {
    if (!(mu > 0.0 && hbar > 0.0 && c > 0.0))
        throw std::domain_error("from_physical: mu, hbar, c must be > 0");
    if (!(e != 0.0 && B > 0.0))
        throw std::domain_error("from_physical: need e != 0 and B > 0");
    const double omega_c = std::abs(e) * B / (mu * c);
    auto reduce = [&](double Phi) {
        double f = -e * Phi / (2.0 * pi * hbar * c);
        f -= std::floor(f);
        if (!(f > 0.0 && f < 1.0))
            throw std::domain_error("from_physical: integer flux quantum");
        return f;
    };
    return ModelParams::make(omega_c, reduce(Phi_A), reduce(Phi_B), R);
}

// A plane point with polar coordinates about both vortices.
//   theta_a = angle about a, cut L_a on {x2 = 0, x1 <= 0}
//   theta_b = angle about b with the zero direction pointing at a, so its
//             cut L_b lies on {x2 = 0, x1 >= R}
// Both angles live in (-pi, pi]; points exactly on a cut get +pi (the
// upper side is the closed one). On the open segment ab both angles are 0,
// and r_a e^{i theta_a} = R - r_b e^{i theta_b} up to rounding.
struct BiPolarPoint {
    double x1 = 0.0, x2 = 0.0;
    double r_a = 0.0, theta_a = 0.0;
    double r_b = 0.0, theta_b = 0.0;

    static BiPolarPoint from_cartesian(double x1, double x2,
                                       const ModelParams& prm) {
        BiPolarPoint p;
        p.x1 = x1;
        p.x2 = x2;
        p.r_a = std::hypot(x1, x2);
        p.theta_a = wrap_angle(std::atan2(x2, x1));
        p.r_b = std::hypot(x1 - prm.R, x2);
        p.theta_b = wrap_angle(std::atan2(-x2, prm.R - x1));
        return p;
    }

    // keeps (r_a, theta_a) exact; needed on the cut, where round-tripping
    // through Cartesian would move theta off +pi
    static BiPolarPoint from_polar_a(double r, double theta,
                                     const ModelParams& prm) {
        const double th = wrap_angle(theta);
        BiPolarPoint p;
        p.r_a = r;
        p.theta_a = th;
        p.x1 = r * std::cos(th);
        p.x2 = th == pi ? 0.0 : r * std::sin(th);
        p.r_b = std::hypot(p.x1 - prm.R, p.x2);
        p.theta_b = wrap_angle(std::atan2(-p.x2, prm.R - p.x1));
        return p;
    }

    static BiPolarPoint from_polar_b(double r, double theta,
                                     const ModelParams& prm) {
        const double th = wrap_angle(theta);
        BiPolarPoint p;
        p.r_b = r;
        p.theta_b = th;
        p.x1 = prm.R - r * std::cos(th);
        p.x2 = th == pi ? 0.0 : -r * std::sin(th);
        p.r_a = std::hypot(p.x1, p.x2);
        p.theta_a = wrap_angle(std::atan2(p.x2, p.x1));
        return p;
    }

    bool on_cut_a() const { return x2 == 0.0 && x1 <= 0.0; }
    bool on_cut_b(const ModelParams& prm) const {
        return x2 == 0.0 && x1 >= prm.R;
    }
    bool on_open_segment(const ModelParams& prm) const {
        return x2 == 0.0 && x1 > 0.0 && x1 < prm.R;
    }
    bool in_upper_half() const { return x2 > 0.0; }
};

} // namespace abheat
