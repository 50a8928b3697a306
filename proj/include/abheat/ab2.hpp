// Heat kernel with two flux lines (at a and b, fluxes alpha and beta) in the
// uniform field. The kernel is a sum over alternating vortex sequences:
//
//   p = I + II + III,
//   I   : the plane Landau kernel,
//   II  : one u-integral per vortex (paths of length 1),
//   III : an n-dimensional u-integral per alternating path (c_1,..,c_n),
//         n >= 2, with Gaussian weight exp(-(w/4)(r^2+(n-1)R^2+r0^2) coth T),
//         wedge phase (w/2)(x ^ c_n + c_1 ^ x0), and damping built from
//         cosh(T + u_{j+1} + .. + u_k) over all radius pairs.
//
// Geometry is restricted to configurations whose connecting segments avoid
// the cuts: either x0 on the open segment ab with x off both cuts, or both
// points strictly in the upper half-plane. Oriented angles are wrapped
// atan2-heading differences in (-pi, pi].
//
// Also houses the time-reparametrization of the path integral (the map
// between simplex times t_0..t_n and u in R^n, its Jacobian and the
// coth-to-cosh-pair identity) and the partial-fraction summation identity
// used to collapse the winding sums.

#pragma once

#include <complex>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abheat/landau.hpp"

namespace abheat::ab2 {

enum class Vortex { a, b };

struct AltPath {
    std::vector<Vortex> seq;

    static AltPath make(std::string_view s) {
        AltPath p;
        if (s.empty()) throw std::domain_error("AltPath: empty sequence");
        for (char c : s) {
            if (c != 'a' && c != 'b')
                throw std::domain_error("AltPath: letters must be a or b");
            Vortex v = c == 'a' ? Vortex::a : Vortex::b;
            if (!p.seq.empty() && p.seq.back() == v)
                throw std::domain_error("AltPath: alternation violated");
            p.seq.push_back(v);
        }
        return p;
    }

    int length() const { return static_cast<int>(seq.size()); }

    // flux carried by the j-th vortex of the path, 1-based
    double sigma(int j, const ModelParams& prm) const {
        return seq.at(j - 1) == Vortex::a ? prm.alpha : prm.beta;
    }

    std::string label() const {
        std::string s;
        for (Vortex v : seq) s += v == Vortex::a ? 'a' : 'b';
        return s;
    }
};

// the two alternating sequences of a given length
inline std::vector<AltPath> paths_of_length(int n) {
    if (n < 1) throw std::domain_error("paths_of_length: n must be >= 1");
    std::string s, t;
    for (int j = 0; j < n; ++j) {
        s += j % 2 == 0 ? 'a' : 'b';
        t += j % 2 == 0 ? 'b' : 'a';
    }
    return {AltPath::make(s), AltPath::make(t)};
}

namespace detail {

inline double vortex_x1(Vortex v, const ModelParams& prm) {
    return v == Vortex::a ? 0.0 : prm.R;
}

inline double radius_about(const BiPolarPoint& p, Vortex v) {
    return v == Vortex::a ? p.r_a : p.r_b;
}

// cut-adapted polar angle about the vortex; for b the zero direction points
// at a, so the branch jump sits on the physical cut L_b
inline double angle_about(const BiPolarPoint& p, Vortex v) {
    return v == Vortex::a ? p.theta_a : p.theta_b;
}

inline void require_geometry(const BiPolarPoint& x, const BiPolarPoint& x0,
                             const ModelParams& prm) {
    const bool seg_case = x0.on_open_segment(prm) && !x.on_cut_a() &&
                          !x.on_cut_b(prm);
    const bool upper_case = x.in_upper_half() && x0.in_upper_half();
    if (!seg_case && !upper_case)
        throw std::domain_error(
            "two-vortex kernel: need x0 on the open segment ab with x off "
            "both cuts, or both points in the open upper half-plane");
}

inline void require_time(double t) {
    if (!(t > 0.0)) throw std::domain_error("kernel: t must be > 0");
}

} // namespace detail

// quadrature defaults per path length; u_max sized from the weakest
// per-coordinate damping constant so the tensor grid is not wasted on
// numerically-zero panels
inline quad::Spec default_path_spec(const ModelParams& prm, double t,
                                    const std::vector<double>& radii) {
    const int n = static_cast<int>(radii.size()) - 1;
    const double T = 0.5 * prm.omega_c * t;
    const double sh = std::sinh(T);
    quad::Spec s;
    s.dim = n;
    if (n <= 2) {
        s.rel_tol = 1e-9;
    } else if (n == 3) {
        s.rel_tol = 1e-4;
        s.abs_tol = 1e-13;
    } else {
        s.rel_tol = 1e-3;
        s.abs_tol = 1e-12;
    }
    double need = 20.0;
    for (int j = 1; j <= n; ++j) {
        const double c = 0.5 * prm.omega_c * radii[j - 1] * radii[j] / sh;
        need = std::max(need, std::log(1400.0 / std::max(c, 1e-8)) + T + 4.0);
    }
    s.u_max = std::min(n >= 4 ? 20.0 : 40.0, need);
    return s;
}

namespace detail {

// unified path term, n >= 1; n = 1 is the single-vortex correction.
// err_out, when given, receives the quadrature error scaled by the prefactor.
inline cplx path_term(const BiPolarPoint& x, const BiPolarPoint& x0, double t,
                      const ModelParams& prm, const AltPath& path,
                      const quad::Spec* user_spec, double* err_out = nullptr) {
    require_geometry(x, x0, prm);
    require_time(t);
    const int n = path.length();
    if (n > 4)
        throw std::domain_error("path term: path length capped at 4");

    const double w = prm.omega_c;
    const double T = 0.5 * w * t;
    const double sh = std::sinh(T), ch = std::cosh(T);

    std::vector<double> rr(n + 1);
    rr[0] = radius_about(x0, path.seq.front());
    for (int j = 1; j < n; ++j) rr[j] = prm.R;
    rr[n] = radius_about(x, path.seq.back());

    // per-factor angles: a single path vertex sees the full oriented angle
    // from x0 to x; longer paths see x0 and x only at their end vertices
    std::vector<double> ang(n + 1, 0.0);
    if (n == 1) {
        ang[1] = wrap_angle(angle_about(x, path.seq.front()) -
                            angle_about(x0, path.seq.front()));
    } else {
        ang[1] = -angle_about(x0, path.seq.front());
        ang[n] = angle_about(x, path.seq.back());
    }
    for (int j = 1; j <= n; ++j)
        if (std::abs(std::abs(ang[j]) - pi) < 1e-12)
            throw std::domain_error("path term: degenerate oriented angle");

    double sin_prod = 1.0;
    for (int j = 1; j <= n; ++j)
        sin_prod *= specfun::sin_pi(path.sigma(j, prm));

    const double c1 = vortex_x1(path.seq.front(), prm);
    const double cn = vortex_x1(path.seq.back(), prm);
    const double phase = 0.5 * w * (wedge(x.x1, x.x2, cn, 0.0) +
                                    wedge(c1, 0.0, x0.x1, x0.x2));
    double g = 0.0;
    for (int j = 0; j <= n; ++j) g += rr[j] * rr[j];
    const double lg_pref = -0.25 * w * g * (ch / sh);
    const cplx pref = (n % 2 ? -1.0 : 1.0) * w * sin_prod /
                      (4.0 * std::pow(pi, n + 1) * sh) * std::exp(lg_pref) *
                      std::polar(1.0, phase);

    const double damp0 = 0.5 * w / sh;
    std::vector<double> sig(n + 1);
    for (int j = 1; j <= n; ++j) sig[j] = path.sigma(j, prm);

    quad::Spec spec =
        user_spec ? *user_spec : default_path_spec(prm, t, rr);
    spec.dim = n;

    if (n == 1) {
        auto f = [&](double u) -> cplx {
            const double S = damp0 * rr[0] * rr[1] * std::cosh(T + u);
            if (S > 700.0) return 0.0;
            const cplx z(u, ang[1]);
            return std::exp(sig[1] * z - S) / (1.0 + std::exp(z));
        };
        const quad::Result r = quad::integrate_line(f, spec);
        if (err_out)
            *err_out = std::abs(pref) * (r.err_estimate + r.truncation_bound);
        return pref * r.value;
    }

    auto f = [&](const std::vector<double>& u) -> cplx {
        double P[5];
        P[0] = 0.0;
        for (int k = 1; k <= n; ++k) P[k] = P[k - 1] + u[k - 1];
        double S = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k <= n; ++k)
                S += rr[j] * rr[k] * std::cosh(T + P[k] - P[j]);
        S *= damp0;
        if (S > 700.0) return 0.0;
        cplx val = std::exp(cplx(-S, 0.0));
        for (int j = 1; j <= n; ++j) {
            const cplx z(u[j - 1], ang[j]);
            val *= std::exp(sig[j] * z) / (1.0 + std::exp(z));
        }
        return val;
    };
    const quad::Result r = quad::integrate_box(f, spec);
    if (err_out)
        *err_out = std::abs(pref) * (r.err_estimate + r.truncation_bound);
    return pref * r.value;
}

} // namespace detail

// term I: the plane kernel, valid because the direct segment avoids the cuts
inline cplx ab2_term_I(const BiPolarPoint& x, const BiPolarPoint& x0, double t,
                       const ModelParams& prm) {
    detail::require_geometry(x, x0, prm);
    detail::require_time(t);
    return landau::plane_kernel(x, x0, t, prm);
}

inline cplx ab2_term_II(const BiPolarPoint& x, const BiPolarPoint& x0,
                        double t, const ModelParams& prm, Vortex v,
                        const quad::Spec* spec = nullptr) {
    AltPath p;
    p.seq = {v};
    return detail::path_term(x, x0, t, prm, p, spec);
}

inline cplx ab2_term_III(const BiPolarPoint& x, const BiPolarPoint& x0,
                         double t, const ModelParams& prm, const AltPath& path,
                         const quad::Spec* spec = nullptr) {
    if (path.length() < 2)
        throw std::domain_error("ab2_term_III: path length must be >= 2");
    return detail::path_term(x, x0, t, prm, path, spec);
}

struct Ab2PathTerm {
    AltPath path;
    cplx value;
    double err = 0.0; // quadrature error estimate of this path integral
};

struct Ab2Result {
    cplx term_I = 0.0;
    cplx term_II_a = 0.0, term_II_b = 0.0;
    std::vector<Ab2PathTerm> term_III; // all paths with 2 <= length <= n_max
    cplx total = 0.0;
    double tail_proxy = 0.0; // |sum over the longest retained length|
    double quad_err = 0.0;   // summed quadrature errors of all path terms
};

// truncated kernel: I + II + all III paths up to length n_max; the path
// terms are independent, so they run concurrently and are reduced in a
// fixed order
inline Ab2Result ab2_kernel(const BiPolarPoint& x, const BiPolarPoint& x0,
                            double t, const ModelParams& prm, int n_max = 2) {
    if (n_max < 1 || n_max > 4)
        throw std::domain_error("ab2_kernel: n_max must be in 1..4");
    detail::require_geometry(x, x0, prm);
    detail::require_time(t);

    Ab2Result out;
    out.term_I = ab2_term_I(x, x0, t, prm);

    std::vector<AltPath> paths;
    paths.push_back(AltPath::make("a"));
    paths.push_back(AltPath::make("b"));
    for (int n = 2; n <= n_max; ++n)
        for (auto& p : paths_of_length(n)) paths.push_back(p);

    std::vector<std::future<std::pair<cplx, double>>> jobs;
    jobs.reserve(paths.size());
    for (const auto& p : paths)
        jobs.push_back(std::async(std::launch::async, [&, p] {
            double err = 0.0;
            const cplx v = detail::path_term(x, x0, t, prm, p, nullptr, &err);
            return std::make_pair(v, err);
        }));

    ComplexCompensatedSum acc;
    acc.add(out.term_I);
    ComplexCompensatedSum last_len;
    const int longest = n_max >= 2 ? n_max : 1;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto [v, err] = jobs[i].get();
        if (i == 0)
            out.term_II_a = v;
        else if (i == 1)
            out.term_II_b = v;
        else
            out.term_III.push_back({paths[i], v, err});
        acc.add(v);
        out.quad_err += err;
        if (paths[i].length() == longest) last_len.add(v);
    }
    out.total = acc.value();
    out.tail_proxy = std::abs(last_len.value());
    return out;
}

// Reparametrization of the n-leg path-time simplex {t_0 + .. + t_n = t} by
// u in R^n:
//   u_j = ln(r_j sinh(w t_{j-1}/2) / (r_{j-1} sinh(w t_j/2))) - w(t_{j-1}+t_j)/2
// with inverse built from the partial sums
//   T_j(u) = sum_{k<=j} (r_k/r0) exp(-(u_1 + .. + u_k)).
// time_transform_check evaluates the inverse, round-trips it, and verifies
// the Jacobian det and the coth-to-cosh-pair identity by finite differences.
struct TimeTransformChecks {
    std::vector<double> t_parts;   // t_0 .. t_n
    double sum_residual = 0.0;       // |sum t_j - t|
    double roundtrip_residual = 0.0; // max_j |u_j(t(u)) - u_j|
    double jacobian_closed = 0.0;
    double jacobian_fd = 0.0;
    double jacobian_residual = 0.0; // relative
    double cosh_identity_residual = 0.0; // relative
};

namespace detail {

// det by Gaussian elimination with partial pivoting; n <= 8
inline double small_det(std::vector<std::vector<double>> m) {
    const int n = static_cast<int>(m.size());
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

} // namespace detail

inline TimeTransformChecks time_transform_check(double t,
                                                const std::vector<double>& radii,
                                                const std::vector<double>& u,
                                                const ModelParams& prm) {
    const int n = static_cast<int>(u.size());
    if (n < 1 || radii.size() != u.size() + 1)
        throw std::domain_error(
            "time_transform_check: need n >= 1 and n+1 radii");
    for (double r : radii)
        if (!(r > 0.0))
            throw std::domain_error("time_transform_check: radii must be > 0");
    detail::require_time(t);
    const double w = prm.omega_c;

    auto t_parts_of = [&](const std::vector<double>& uu) {
        std::vector<double> Tj(n + 1, 0.0);
        double esum = 0.0;
        for (int k = 1; k <= n; ++k) {
            esum += uu[k - 1];
            Tj[k] = Tj[k - 1] + radii[k] / radii[0] * std::exp(-esum);
        }
        const double q = std::exp(-w * t);
        std::vector<double> tp(n + 1);
        for (int j = 1; j <= n; ++j)
            tp[j] = std::log((1.0 + Tj[j] + q * (Tj[n] - Tj[j])) /
                             (1.0 + Tj[j - 1] + q * (Tj[n] - Tj[j - 1]))) /
                    w;
        tp[0] = std::log((std::exp(w * t) + Tj[n]) / (1.0 + Tj[n])) / w;
        return tp;
    };
    auto u_of = [&](const std::vector<double>& tp) {
        std::vector<double> uu(n);
        for (int j = 1; j <= n; ++j)
            uu[j - 1] = std::log(radii[j] * std::sinh(0.5 * w * tp[j - 1]) /
                                 (radii[j - 1] * std::sinh(0.5 * w * tp[j]))) -
                        0.5 * w * (tp[j - 1] + tp[j]);
        return uu;
    };

    TimeTransformChecks out;
    out.t_parts = t_parts_of(u);
    double s = 0.0;
    for (double tj : out.t_parts) s += tj;
    out.sum_residual = std::abs(s - t);

    const std::vector<double> u_back = u_of(out.t_parts);
    for (int j = 0; j < n; ++j)
        out.roundtrip_residual =
            std::max(out.roundtrip_residual, std::abs(u_back[j] - u[j]));

    // FD Jacobian of u with respect to the free times t_1..t_n (t_0 absorbs
    // the variation to keep the total fixed)
    const double h = 1e-5;
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (int col = 0; col < n; ++col) {
        std::vector<double> tp = out.t_parts, tm = out.t_parts;
        tp[col + 1] += h;
        tp[0] -= h;
        tm[col + 1] -= h;
        tm[0] += h;
        const std::vector<double> up = u_of(tp), um = u_of(tm);
        for (int row = 0; row < n; ++row)
            J[row][col] = (up[row] - um[row]) / (2.0 * h);
    }
    out.jacobian_fd = detail::small_det(J);
    double denom = 1.0;
    for (int j = 0; j <= n; ++j) denom *= std::sinh(0.5 * w * out.t_parts[j]);
    out.jacobian_closed =
        std::pow(0.5 * w, n) * std::sinh(0.5 * w * t) / denom;
    // the closed form states the unsigned density ratio; the signed det
    // alternates orientation with n
    out.jacobian_residual =
        std::abs(std::abs(out.jacobian_fd) - out.jacobian_closed) /
        std::abs(out.jacobian_closed);

    double lhs = 0.0, r2 = 0.0;
    for (int j = 0; j <= n; ++j) {
        lhs += radii[j] * radii[j] / std::tanh(0.5 * w * out.t_parts[j]);
        r2 += radii[j] * radii[j];
    }
    double pair_sum = 0.0;
    std::vector<double> P(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) P[k] = P[k - 1] + u[k - 1];
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k <= n; ++k)
            pair_sum += radii[j] * radii[k] *
                        std::cosh(0.5 * w * t + P[k] - P[j]);
    const double rhs =
        r2 / std::tanh(0.5 * w * t) + 2.0 * pair_sum / std::sinh(0.5 * w * t);
    out.cosh_identity_residual = std::abs(lhs - rhs) / std::abs(rhs);
    return out;
}

// Partial-fraction identity collapsing the per-vortex winding sums:
//   sum_k e^{-2 pi i alpha k} [ (z + i(2k+1)pi)^{-1} - (z + i(2k-1)pi)^{-1} ]
//     = (2/i) sin(pi alpha) e^{alpha z}/(1 + e^z).
inline cplx sum_k_v_rhs(double alpha, cplx z) {
    return 2.0 / cplx(0.0, 1.0) * specfun::sin_pi(alpha) * std::exp(alpha * z) /
           (1.0 + std::exp(z));
}

inline cplx sum_k_v_lhs_partial(double alpha, cplx z, int K) {
    if (K < 0) throw std::domain_error("sum_k_v_lhs_partial: K must be >= 0");
    ComplexCompensatedSum s;
    for (int k = -K; k <= K; ++k) {
        const cplx dp = z + cplx(0.0, (2.0 * k + 1.0) * pi);
        const cplx dm = z + cplx(0.0, (2.0 * k - 1.0) * pi);
        if (std::abs(dp) < 1e-14 || std::abs(dm) < 1e-14)
            throw std::domain_error("sum_k_v_lhs_partial: z on a pole");
        s.add(std::polar(1.0, -2.0 * pi * alpha * k) * (1.0 / dp - 1.0 / dm));
    }
    return s.value();
}

// tail oscillation suppressed by averaging consecutive partial sums
inline cplx sum_k_v_lhs_averaged(double alpha, cplx z, int K, int window = 32) {
    if (window < 1 || K < window)
        throw std::domain_error("sum_k_v_lhs_averaged: need K >= window >= 1");
    ComplexCompensatedSum s;
    for (int K2 = K - window + 1; K2 <= K; ++K2)
        s.add(sum_k_v_lhs_partial(alpha, z, K2));
    return s.value() / static_cast<double>(window);
}

} // namespace abheat::ab2
