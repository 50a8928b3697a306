#pragma once

// Command implementations behind the CLI executable. Each command is a pure
// function from a RunConfig to output text plus exit status, so the exact
// byte stream is unit-testable and two runs of one config are identical.

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "abheat/ab1.hpp"
#include "abheat/ab2.hpp"
#include "abheat/eigen.hpp"
#include "abheat/runconfig.hpp"
#include "abheat/shift.hpp"
#include "abheat/verify.hpp"

namespace abheat::cli {

struct CmdResult {
    std::string text;
    int status = 0;
};

namespace detail {

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : cfg.kv) j[k] = v;
    return j;
}

inline std::string config_echo_csv(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.kv) out += "# " + k + " = " + v + "\n";
    return out;
}

inline nlohmann::json cnum(cplx v) {
    return {{"re", v.real()}, {"im", v.imag()}};
}

} // namespace detail

// ---------------------------------------------------------------------------
// density: |psi1|^2 or |psi2_tilde|^2 on a grid in scaled coordinates
// xi = sqrt(omega_c) x; the window is centered on the vortex (psi1) or the
// midpoint between the vortices (psi2)

inline CmdResult run_density(const RunConfig& cfg) {
    const std::string mode = cfg.str("mode");
    if (mode != "psi1" && mode != "psi2")
        throw ConfigError("mode must be psi1 or psi2");
    const GridSpec g = cfg.grid();
    if (g.nx < 16 || g.ny < 16)
        throw ConfigError("grid resolution must be at least 16 per axis");
    if (!(g.extent > 0.0))
        throw ConfigError("grid extent must be positive");
    const ModelParams prm = cfg.params();
    const bool p2 = mode == "psi2";
    const double sqw = std::sqrt(prm.omega_c);
    const double xib = std::sqrt(prm.D); // xi-image of the second vortex
    const double c1 = p2 ? 0.5 * xib : 0.0;
    const double h1 = 2.0 * g.extent / (g.nx - 1);
    const double h2 = 2.0 * g.extent / (g.ny - 1);

    quad::Spec seg_spec; // confluent form of the correction
    seg_spec.rel_tol = 1e-7;
    seg_spec.abs_tol = 1e-12;
    quad::Spec line_spec = eigen::phi_integral_spec(prm);
    line_spec.rel_tol = 1e-6;
    line_spec.abs_tol = 1e-12;
    quad::Spec ov_store;
    if (const quad::Spec* ov = cfg.quad_override(ov_store)) {
        seg_spec.rel_tol = line_spec.rel_tol = ov->rel_tol;
        seg_spec.abs_tol = line_spec.abs_tol = ov->abs_tol;
    }

    struct Sample {
        double xi1 = 0.0, xi2 = 0.0, dens = 0.0, err = 0.0;
        bool cut = false;
    };
    std::vector<std::vector<Sample>> rows(g.ny);

    auto eval_row = [&](int j) {
        auto& out = rows[j];
        out.resize(g.nx);
        const double xi2 = -g.extent + j * h2;
        for (int i = 0; i < g.nx; ++i) {
            const double xi1 = c1 - g.extent + i * h1;
            const bool cut =
                std::abs(xi2) <= 0.5 * h2 + 1e-12 &&
                (xi1 <= 0.5 * h1 + 1e-12 ||
                 (p2 && xi1 >= xib - 0.5 * h1 - 1e-12));
            auto p = BiPolarPoint::from_cartesian(xi1 / sqw, xi2 / sqw, prm);
            double dens = 0.0, err = 0.0;
            if (!p2) {
                dens = std::norm(eigen::psi1(p, prm));
            } else {
                cplx ph{0.0, 0.0};
                double perr = 0.0;
                if (p.r_b < 0.95 * prm.R) {
                    auto pe = eigen::phi_hypergeometric_eval(p, prm,
                                                             &seg_spec);
                    ph = pe.value;
                    perr = pe.err_estimate;
                } else if (std::abs(p.theta_b) < 0.75 * pi) {
                    auto pe = eigen::phi_integral_eval(p, prm, &line_spec);
                    ph = pe.value;
                    perr = pe.err_estimate;
                } else {
                    // the line-integral form pinches toward the far cut; the
                    // correction is dropped there and its amplitude bound is
                    // charged to the row error instead
                    perr = std::sqrt(prm.omega_c / (2.0 * pi)) *
                           std::exp(-0.25 * prm.omega_c *
                                    (prm.R * prm.R + p.r_b * p.r_b));
                }
                const cplx ps = eigen::psi1(p, prm) + ph;
                dens = std::norm(ps);
                err = 2.0 * std::abs(ps) * perr + perr * perr;
            }
            out[i] = {xi1, xi2, dens, err, cut};
        }
    };

    // rows are independent; a small pool walks them, assembly stays ordered
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    unsigned nthread = std::thread::hardware_concurrency();
    nthread = std::max(1u, std::min(nthread, 8u));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nthread; ++k)
        pool.emplace_back([&] {
            for (int j; (j = next.fetch_add(1)) < g.ny;) {
                try {
                    eval_row(j);
                } catch (...) {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed) std::rethrow_exception(failure);

    CmdResult res;
    if (cfg.str("format") == "json") {
        nlohmann::json j;
        j["config"] = detail::config_json(cfg);
        j["grid"] = {{"nx", g.nx},
                     {"ny", g.ny},
                     {"extent", g.extent},
                     {"center_xi1", c1},
                     {"mode", mode}};
        j["columns"] = {"xi1", "xi2", "density", "err_estimate", "flag"};
        auto arr = nlohmann::json::array();
        for (const auto& row : rows)
            for (const auto& s : row)
                arr.push_back({s.xi1, s.xi2, s.dens, s.err,
                               s.cut ? "cut" : "ok"});
        j["rows"] = std::move(arr);
        res.text = j.dump(2) + "\n";
    } else if (cfg.str("format") == "csv") {
        std::string out = detail::config_echo_csv(cfg);
        out += "xi1,xi2,density,err_estimate,flag\n";
        for (const auto& row : rows)
            for (const auto& s : row)
                out += fmt_g17(s.xi1) + "," + fmt_g17(s.xi2) + "," +
                       fmt_g17(s.dens) + "," + fmt_g17(s.err) + "," +
                       (s.cut ? "cut" : "ok") + "\n";
        res.text = std::move(out);
    } else {
        throw ConfigError("format must be csv or json");
    }
    return res;
}

// ---------------------------------------------------------------------------
// kernel one: both representations of the single-solenoid kernel plus their
// difference; the integral form carries the quadrature error estimate

inline CmdResult run_kernel_one(const RunConfig& cfg) {
    const ModelParams prm = cfg.params();
    const double r = cfg.num("r"), th = cfg.num("theta");
    const double r0 = cfg.num("r0"), t = cfg.num("t");
    quad::Spec ov_store;
    const quad::Spec* ov = cfg.quad_override(ov_store);

    const ab1::KernelEval ke =
        ov ? ab1::ab1_kernel_integral_eval(r, th, r0, t, prm, *ov)
           : ab1::ab1_kernel_integral_eval(r, th, r0, t, prm);
    ab1::Selector sel;
    sel.form = ab1::Form::eigen_expansion;
    const cplx ve = ab1::ab1_kernel_expansion(r, th, r0, t, prm, sel);
    const double ad = std::abs(ke.value - ve);

    CmdResult res;
    if (cfg.str("format") == "json") {
        nlohmann::json j;
        j["config"] = detail::config_json(cfg);
        j["point"] = {{"r", r}, {"theta", th}, {"r0", r0}, {"t", t}};
        j["integral"] = detail::cnum(ke.value);
        j["integral"]["err_estimate"] = ke.err_estimate;
        j["expansion"] = detail::cnum(ve);
        j["difference"] = {{"abs", ad}, {"rel", ad / std::abs(ke.value)}};
        res.text = j.dump(2) + "\n";
    } else if (cfg.str("format") == "csv") {
        std::string out = detail::config_echo_csv(cfg);
        out += "quantity,re,im,err_estimate\n";
        out += "integral," + fmt_g17(ke.value.real()) + "," +
               fmt_g17(ke.value.imag()) + "," + fmt_g17(ke.err_estimate) +
               "\n";
        out += "expansion," + fmt_g17(ve.real()) + "," +
               fmt_g17(ve.imag()) + ",0\n";
        out += "difference," + fmt_g17(ke.value.real() - ve.real()) + "," +
               fmt_g17(ke.value.imag() - ve.imag()) + "," +
               fmt_g17(ke.err_estimate) + "\n";
        res.text = std::move(out);
    } else {
        throw ConfigError("format must be csv or json");
    }
    return res;
}

// ---------------------------------------------------------------------------
// kernel two: truncated two-solenoid kernel with the per-path breakdown,
// the tail proxy of the longest retained length, and summed quadrature error

inline CmdResult run_kernel_two(const RunConfig& cfg) {
    const ModelParams prm = cfg.params();
    try {
        prm.require_ordered_fluxes(); // the path machinery itself tolerates
                                      // unordered fluxes; the model does not
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    const double t = cfg.num("t");
    const int nmax = cfg.integer("nmax");
    const auto X =
        BiPolarPoint::from_cartesian(cfg.num("x"), cfg.num("y"), prm);
    const auto X0 =
        BiPolarPoint::from_cartesian(cfg.num("x0"), cfg.num("y0"), prm);
    const ab2::Ab2Result kr = ab2::ab2_kernel(X, X0, t, prm, nmax);

    CmdResult res;
    if (cfg.str("format") == "json") {
        nlohmann::json j;
        j["config"] = detail::config_json(cfg);
        j["points"] = {{"x", {X.x1, X.x2}}, {"x0", {X0.x1, X0.x2}}};
        j["t"] = t;
        j["n_max"] = nmax;
        j["term_I"] = detail::cnum(kr.term_I);
        j["term_II_a"] = detail::cnum(kr.term_II_a);
        j["term_II_b"] = detail::cnum(kr.term_II_b);
        auto arr = nlohmann::json::array();
        for (const auto& p : kr.term_III) {
            nlohmann::json e = detail::cnum(p.value);
            e["path"] = p.path.label();
            e["err_estimate"] = p.err;
            arr.push_back(std::move(e));
        }
        j["term_III"] = std::move(arr);
        j["total"] = detail::cnum(kr.total);
        j["tail_proxy"] = kr.tail_proxy;
        j["quad_err"] = kr.quad_err;
        res.text = j.dump(2) + "\n";
    } else if (cfg.str("format") == "csv") {
        std::string out = detail::config_echo_csv(cfg);
        out += "quantity,re,im,err_estimate\n";
        out += "term_I," + fmt_g17(kr.term_I.real()) + "," +
               fmt_g17(kr.term_I.imag()) + ",0\n";
        out += "term_II_a," + fmt_g17(kr.term_II_a.real()) + "," +
               fmt_g17(kr.term_II_a.imag()) + ",0\n";
        out += "term_II_b," + fmt_g17(kr.term_II_b.real()) + "," +
               fmt_g17(kr.term_II_b.imag()) + ",0\n";
        for (const auto& p : kr.term_III)
            out += "path_" + p.path.label() + "," +
                   fmt_g17(p.value.real()) + "," + fmt_g17(p.value.imag()) +
                   "," + fmt_g17(p.err) + "\n";
        out += "total," + fmt_g17(kr.total.real()) + "," +
               fmt_g17(kr.total.imag()) + "," + fmt_g17(kr.quad_err) + "\n";
        out += "tail_proxy," + fmt_g17(kr.tail_proxy) + ",0,0\n";
        res.text = std::move(out);
    } else {
        throw ConfigError("format must be csv or json");
    }
    return res;
}

// ---------------------------------------------------------------------------
// shift: energy displacement of the bound level, closed form against the
// boundary integral, one row per D

inline CmdResult run_shift(const RunConfig& cfg) {
    const ModelParams base = cfg.params();
    std::vector<double> Ds = cfg.list("table");
    if (Ds.empty()) Ds.push_back(base.D);
    for (std::size_t i = 0; i < Ds.size(); ++i) {
        if (!(Ds[i] > 0.0))
            throw ConfigError("table entries must be positive");
        if (i > 0 && Ds[i] <= Ds[i - 1])
            throw ConfigError("table entries must be strictly increasing");
    }
    quad::Spec ov_store;
    const quad::Spec* ov = cfg.quad_override(ov_store);

    struct Row {
        double D, E1, closed;
        cplx boundary;
        double err, gap;
    };
    std::vector<Row> rows;
    for (double D : Ds) {
        const ModelParams p = ModelParams::make(
            base.omega_c, base.alpha, base.beta, std::sqrt(D / base.omega_c));
        const double closed = shift::delta_e_closed(p);
        const shift::BoundaryEval be = shift::delta_e_boundary_eval(p, ov);
        rows.push_back({D, eigen::level_energy(p), closed, be.value,
                        be.err_estimate,
                        std::abs(be.value - closed) / std::abs(closed)});
    }

    CmdResult res;
    if (cfg.str("format") == "json") {
        nlohmann::json j;
        j["config"] = detail::config_json(cfg);
        auto arr = nlohmann::json::array();
        for (const auto& r : rows)
            arr.push_back({{"D", r.D},
                           {"E1", r.E1},
                           {"deltaE_closed", r.closed},
                           {"deltaE_boundary", detail::cnum(r.boundary)},
                           {"err_estimate", r.err},
                           {"rel_gap", r.gap}});
        j["rows"] = std::move(arr);
        res.text = j.dump(2) + "\n";
    } else if (cfg.str("format") == "csv") {
        std::string out = detail::config_echo_csv(cfg);
        out += "D,E1,deltaE_closed,deltaE_boundary_re,deltaE_boundary_im,"
               "err_estimate,rel_gap\n";
        for (const auto& r : rows)
            out += fmt_g17(r.D) + "," + fmt_g17(r.E1) + "," +
                   fmt_g17(r.closed) + "," + fmt_g17(r.boundary.real()) +
                   "," + fmt_g17(r.boundary.imag()) + "," + fmt_g17(r.err) +
                   "," + fmt_g17(r.gap) + "\n";
        res.text = std::move(out);
    } else {
        throw ConfigError("format must be csv or json");
    }
    return res;
}

// ---------------------------------------------------------------------------
// verify: run a named check suite; exit status is nonzero if any row fails

inline CmdResult run_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<verify::CheckRow> rows;
    const std::string which = cfg.str("which");
    if (suite == "specfun")
        rows = verify::suite_specfun();
    else if (suite == "landau")
        rows = verify::suite_landau();
    else if (suite == "ab1")
        rows = verify::suite_ab1();
    else if (suite == "ab2")
        rows = verify::suite_ab2();
    else if (suite == "eigen")
        rows = verify::suite_eigen();
    else if (suite == "appendix") {
        if (which.empty()) {
            for (char c : {'A', 'B', 'C'}) {
                auto part = verify::suite_appendix(c);
                rows.insert(rows.end(), part.begin(), part.end());
            }
        } else if (which == "A" || which == "B" || which == "C") {
            rows = verify::suite_appendix(which[0]);
        } else {
            throw ConfigError("which must be A, B, or C");
        }
    } else if (suite == "all")
        rows = verify::suite_all();
    else
        throw ConfigError("unknown verify suite: " + suite);

    const bool ok = verify::all_pass(rows);
    CmdResult res;
    res.status = ok ? 0 : 1;
    if (cfg.str("format") == "json") {
        nlohmann::json j;
        j["config"] = detail::config_json(cfg);
        j["suite"] = suite;
        auto arr = nlohmann::json::array();
        for (const auto& r : rows)
            arr.push_back({{"suite", r.suite},
                           {"id", r.id},
                           {"value", r.value},
                           {"bound", r.bound},
                           {"direction", r.lower_is_pass ? ">" : "<"},
                           {"pass", r.pass},
                           {"detail", r.detail}});
        j["rows"] = std::move(arr);
        j["all_pass"] = ok;
        res.text = j.dump(2) + "\n";
    } else if (cfg.str("format") == "csv") {
        std::string out = detail::config_echo_csv(cfg);
        out += "suite,id,value,bound,direction,pass,detail\n";
        for (const auto& r : rows)
            out += r.suite + "," + r.id + "," + fmt_g17(r.value) + "," +
                   fmt_g17(r.bound) + "," + (r.lower_is_pass ? ">" : "<") +
                   "," + (r.pass ? "pass" : "fail") + "," +
                   csv_quote(r.detail) + "\n";
        res.text = std::move(out);
    } else {
        throw ConfigError("format must be csv or json");
    }
    return res;
}

} // namespace abheat::cli
