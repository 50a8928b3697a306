#pragma once

// Deterministic adaptive quadrature for the kernel integrands.
//
// Three entry points:
//   integrate_line     whole-line integrals, truncated at +-u_max with an
//                      explicit truncation bound, then globally adaptive
//                      Gauss-Kronrod 7/15 bisection
//   integrate_segment  finite interval by tanh-sinh (level-doubled
//                      trapezoid); absorbs integrable power-law endpoint
//                      singularities t^-beta, beta < 1
//   integrate_box      tensor-product line rule over [-u_max, u_max]^dim,
//                      dim = 2..4, tolerances tightened per nesting level
//   integrate_halfline [0, inf) via x = e^v reduced to integrate_line
//
// Every path is strictly deterministic: panel selection has a total order
// and final summation runs in coordinate order with compensation.

#include <algorithm>
#include <type_traits>
#include <vector>

#include "abheat/common.hpp"

namespace abheat::quad {

struct Spec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    double u_max = 40.0; // truncation half-width for whole-line integrals
    int max_depth = 24;  // bisection depth limit per panel
    int dim = 1;         // dimension for integrate_box
};

struct Result {
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    long evaluations = 0;
    double truncation_bound = 0.0;
};

// Thrown when a tolerance cannot be met; carries the best estimate so far.
struct Error : std::runtime_error {
    Result partial;
    Error(const char* what, Result r) : std::runtime_error(what), partial(r) {}
};

namespace detail {

inline void require_valid(const Spec& spec) {
    if (!(spec.rel_tol > 0.0 && spec.rel_tol <= 1e-3))
        throw std::domain_error("quad: rel_tol must be in (0, 1e-3]");
    if (!(spec.abs_tol >= 0.0))
        throw std::domain_error("quad: abs_tol must be >= 0");
    if (!(spec.u_max >= 20.0))
        throw std::domain_error("quad: u_max must be >= 20");
    if (spec.max_depth < 10)
        throw std::domain_error("quad: max_depth must be >= 10");
}

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK dqk15).
inline constexpr double gk_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
};

struct Panel {
    double a, b;
    cplx value;
    double err;
    int depth;
};

template <class F>
Panel gk15(F& f, double a, double b, int depth, long& evals) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    cplx resk = gk_wk[7] * f(mid);
    cplx resg = gk_wg[3] * resk / gk_wk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = hw * gk_x[j];
        const cplx pair = f(mid - dx) + f(mid + dx);
        resk += gk_wk[j] * pair;
        if (j % 2 == 1) resg += gk_wg[j / 2] * pair;
    }
    evals += 15;
    return Panel{a, b, hw * resk, std::abs(hw * (resk - resg)), depth};
}

template <class F>
Result adaptive_gk(F& f, double a, double b, const Spec& spec,
                   int initial_panels) {
    Result out;
    std::vector<Panel> panels;
    panels.reserve(256);
    const double w = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i)
        panels.push_back(
            gk15(f, a + i * w, i + 1 == initial_panels ? b : a + (i + 1) * w, 0,
                 out.evaluations));

    auto accumulate = [&] {
        ComplexCompensatedSum sum;
        double err = 0.0;
        for (const Panel& p : panels) {
            sum.add(p.value);
            err += p.err;
        }
        out.value = sum.value();
        out.err_estimate = err;
    };

    for (;;) {
        accumulate();
        const double tol =
            std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
        if (out.err_estimate <= 0.5 * tol) break;
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err ||
                (panels[i].err == panels[worst].err &&
                 panels[i].a < panels[worst].a))
                worst = i;
        const Panel p = panels[worst];
        if (p.depth >= spec.max_depth)
            throw Error("quad: max_depth exhausted", out);
        const double m = 0.5 * (p.a + p.b);
        panels[worst] = gk15(f, p.a, m, p.depth + 1, out.evaluations);
        panels.push_back(gk15(f, m, p.b, p.depth + 1, out.evaluations));
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    accumulate();
    return out;
}

} // namespace detail

// Whole-line integral. The integrands in scope decay at least like
// exp(-rate*|u|) outside the interesting region, so the discarded tails
// are bounded by |f(+-u_max)| / rate; rate = 0.1 is assumed, hence the
// factor 10. Callers with slowly decaying one-sided tails pass a larger
// u_max; the bound is reported so they can check.
template <class F>
Result integrate_line(F&& f, const Spec& spec = Spec{}) {
    detail::require_valid(spec);
    // initial panel width: fine enough that a concentrated integrand cannot
    // hide inside one panel; relaxed when the requested tolerance is loose
    // (matters for the tensor boxes, where per-line cost is raised to dim)
    const double w0 = spec.rel_tol >= 1e-4 ? 5.0 : 2.5;
    const int initial =
        std::max(4, static_cast<int>(std::ceil(2.0 * spec.u_max / w0)));
    Result r = detail::adaptive_gk(f, -spec.u_max, spec.u_max, spec, initial);
    r.truncation_bound =
        10.0 * (std::abs(f(-spec.u_max)) + std::abs(f(spec.u_max)));
    r.evaluations += 2;
    return r;
}

// Finite interval by tanh-sinh. The integrand may take a second argument,
// the exact signed distance to the nearer endpoint (positive: x = lo + d,
// negative: x = hi + d). Integrands singular at an endpoint must use it;
// recomputing hi - x in double collapses to zero long before the node
// weights become negligible.
template <class F>
Result integrate_segment(F&& f, double lo, double hi,
                         const Spec& spec = Spec{}) {
    detail::require_valid(spec);
    if (!(hi > lo)) throw std::domain_error("integrate_segment: needs hi > lo");
    const double hw = 0.5 * (hi - lo);
    const double u_ts = 6.0;
    const int max_level = 12;

    Result out;
    // g(u) = weight(u) * f(x(u)) * hw, node distances computed exactly
    auto g = [&](double u) -> cplx {
        const double t = 0.5 * pi * std::sinh(u);
        const double w = 0.5 * pi * std::cosh(u) / std::pow(std::cosh(t), 2);
        const double d = hw * 2.0 / (std::exp(2.0 * std::abs(t)) + 1.0);
        if (!(w > 0.0) || d == 0.0) return 0.0; // collapsed node
        const double sd = u >= 0.0 ? -d : d;
        const double x = u >= 0.0 ? hi - d : lo + d;
        ++out.evaluations;
        if constexpr (std::is_invocable_v<F&, double, double>)
            return w * f(x, sd) * hw;
        else
            return w * f(x) * hw;
    };

    double h = 1.0;
    ComplexCompensatedSum level0;
    level0.add(g(0.0));
    for (int k = 1; k * h <= u_ts; ++k) {
        level0.add(g(k * h));
        level0.add(g(-k * h));
    }
    cplx s_prev = level0.value() * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        ComplexCompensatedSum odd;
        for (int k = 1; k * h <= u_ts; k += 2) {
            odd.add(g(k * h));
            odd.add(g(-k * h));
        }
        const cplx s = 0.5 * s_prev + odd.value() * h;
        const double delta = std::abs(s - s_prev);
        s_prev = s;
        out.value = s;
        out.err_estimate = delta;
        if (level >= 4 &&
            delta <= 0.5 * std::max(spec.abs_tol,
                                    spec.rel_tol * std::abs(s)))
            return out;
    }
    throw Error("quad: tanh-sinh did not converge", out);
}

// Integral over [0, inf) via x = e^v; inherits the line rule's truncation
// accounting. Suitable when f decays exponentially and any origin
// singularity is an integrable power.
template <class F>
Result integrate_halfline(F&& f, const Spec& spec = Spec{}) {
    return integrate_line(
        [&](double v) {
            const double x = std::exp(v);
            return f(x) * x;
        },
        spec);
}

namespace detail {

template <class F>
Result box_impl(F& f, std::vector<double>& coord, int level, const Spec& spec,
                long& leaf_evals, double& worst_inner_err) {
    if (level == 1) {
        return integrate_line(
            [&](double u) {
                coord[0] = u;
                ++leaf_evals;
                return f(coord);
            },
            spec);
    }
    Spec inner = spec;
    inner.rel_tol *= 0.2;
    inner.abs_tol *= 0.2;
    return integrate_line(
        [&](double u) {
            coord[level - 1] = u;
            Result r =
                box_impl(f, coord, level - 1, inner, leaf_evals, worst_inner_err);
            worst_inner_err = std::max(
                worst_inner_err, r.err_estimate + r.truncation_bound);
            return r.value;
        },
        spec);
}

} // namespace detail

// Tensor-product integral over [-u_max, u_max]^dim; f receives the
// coordinate vector. The reported error folds in the worst inner-line
// error scaled by the outer width (a bound on its propagated effect).
template <class F>
Result integrate_box(F&& f, const Spec& spec) {
    detail::require_valid(spec);
    if (spec.dim < 2 || spec.dim > 4)
        throw std::domain_error("integrate_box: dim must be 2..4");
    std::vector<double> coord(spec.dim, 0.0);
    long leaf_evals = 0;
    double worst_inner = 0.0;
    Result r = detail::box_impl(f, coord, spec.dim, spec, leaf_evals,
                                worst_inner);
    r.evaluations = leaf_evals;
    r.err_estimate += 2.0 * spec.u_max * worst_inner;
    return r;
}

} // namespace abheat::quad
