#include "hypdiff/verify.hpp"

#include "hypdiff/brachistochrone.hpp"
#include "hypdiff/geometry.hpp"
#include "hypdiff/kernels.hpp"
#include "hypdiff/mat2.hpp"
#include "hypdiff/specfun.hpp"
#include "hypdiff/transforms.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace hypdiff {

namespace {

std::string fmt(const char* pat, ...) {
    char buf[160];
    va_list ap;
    va_start(ap, pat);
    std::vsnprintf(buf, sizeof buf, pat, ap);
    va_end(ap);
    return std::string(buf);
}

VerifyRecord cmp_record(std::string anchor, std::string param, double lhs, double rhs,
                        double tol) {
    VerifyRecord r;
    r.anchor = std::move(anchor);
    r.param = std::move(param);
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_err = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    r.tol = tol;
    r.pass = r.rel_err <= tol;
    return r;
}

// Deviation against an exact-zero target; rel_err carries the deviation.
VerifyRecord dev_record(std::string anchor, std::string param, double dev, double tol) {
    VerifyRecord r;
    r.anchor = std::move(anchor);
    r.param = std::move(param);
    r.lhs = dev;
    r.rhs = 0.0;
    r.rel_err = dev;
    r.tol = tol;
    r.pass = dev <= tol;
    return r;
}

VerifyRecord bridge_record(std::string anchor, std::string param, const BridgeResult& b,
                           double tol) {
    VerifyRecord r;
    r.anchor = std::move(anchor);
    r.param = std::move(param);
    r.lhs = b.lhs;
    r.rhs = b.rhs;
    r.rel_err = b.rel_err;
    r.tol = tol;
    r.pass = b.rel_err <= tol;
    return r;
}

} // namespace

std::vector<VerifyRecord> algebra_records() {
    const double tol = 1e-15;
    const GeneratorSet g = su11_generators();
    std::vector<VerifyRecord> recs;
    recs.push_back(dev_record("su(1,1) bracket [a+,a-] = a3", "entrywise",
                              mismatch(commutator(g.a_plus, g.a_minus), g.a_3), tol));
    recs.push_back(dev_record("su(1,1) bracket [a+,a3] = a-", "entrywise",
                              mismatch(commutator(g.a_plus, g.a_3), g.a_minus), tol));
    recs.push_back(dev_record("su(1,1) bracket [a-,a3] = -a+", "entrywise",
                              mismatch(commutator(g.a_minus, g.a_3), cplx(-1.0) * g.a_plus),
                              tol));
    return recs;
}

std::vector<VerifyRecord> evolution_records() {
    const double tol = 1e-12;
    const double omega = 0.7;
    const cplx I(0.0, 1.0);
    const double pairs[5][2] = {{0.3, 0.1}, {0.8, 0.4}, {1.2, -0.5}, {2.0, 1.3}, {0.9, 0.9}};
    std::vector<VerifyRecord> recs;
    for (const auto& ts : pairs) {
        const double t = ts[0], s = ts[1];
        const Mat2C split =
            evolution_spherical(t, 0.0, omega) * evolution_spherical(0.0, s, omega);
        recs.push_back(dev_record("two-level evolution composition U(t,s)=U(t,0)U(0,s)",
                                  fmt("omega=0.7 t=%g s=%g", t, s),
                                  mismatch(evolution_spherical(t, s, omega), split), tol));
        const Mat2C w = w_eigenmatrix(I * t, omega) * w_eigenmatrix(-I * s, omega).conj_transpose();
        recs.push_back(dev_record("eigenmatrix product reproduces damped hyperbolic rotation",
                                  fmt("omega=0.7 t=%g s=%g", t, s),
                                  mismatch(w, continue_to_hyperbolic(t, s, omega)), tol));
    }
    return recs;
}

std::vector<VerifyRecord> trajectory_records() {
    const double tol = 1e-8;
    const double cases[2][2] = {{0.6, 1.3}, {1.1, 0.8}};
    std::vector<VerifyRecord> recs;
    for (const auto& c : cases) {
        const double omega = c[0], R = c[1];
        const Mat2C H0 = hamiltonian_hyperbolic(0.0, omega, R);
        const Trajectory traj =
            integrate_brachistochrone(H0, constraint_operator(omega), 1.0, 1024);
        recs.push_back(dev_record("driven Hamiltonian RK4 vs closed form at t=1",
                                  fmt("omega=%g R=%g steps=1024", omega, R),
                                  mismatch(traj.points.back().H,
                                           hamiltonian_hyperbolic(1.0, omega, R)),
                                  tol));
        recs.push_back(dev_record("trajectory invariant tr(H^2)/2 drift",
                                  fmt("omega=%g R=%g", omega, R), traj.energy_drift, tol));
        recs.push_back(dev_record("trajectory invariant tr(H F0) drift",
                                  fmt("omega=%g R=%g", omega, R), traj.orthogonality_drift,
                                  tol));
    }
    return recs;
}

std::vector<VerifyRecord> metric_records() {
    const double tol = 1e-6;
    const double h = 1e-5;
    const double phi = 0.4, psi = -0.7;
    std::vector<VerifyRecord> recs;
    for (double tau : {0.5, 1.0, 2.0}) {
        const MetricTensor m = fubini_study_metric(tau, phi, psi, h);
        const OverlapTensor f = fubini_study_tensor(tau, phi, psi, h);
        const double sh = std::sinh(tau);
        recs.push_back(dev_record("overlap metric g_tautau = -1/4", fmt("tau=%g", tau),
                                  std::abs(m.at(0, 0) + 0.25), tol));
        recs.push_back(dev_record("overlap metric g_phiphi = sinh^2(tau)/4",
                                  fmt("tau=%g", tau),
                                  std::abs(m.at(1, 1) - 0.25 * sh * sh), tol));
        double off = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) off = std::max(off, std::abs(m.at(i, j)));
        recs.push_back(dev_record("overlap metric off-diagonal vanishes", fmt("tau=%g", tau),
                                  off, tol));
        recs.push_back(dev_record("overlap metric phase direction degenerate",
                                  fmt("tau=%g", tau), std::abs(m.at(2, 2)), tol));
        recs.push_back(dev_record("overlap tensor Im F_tauphi = sinh(tau)/4",
                                  fmt("tau=%g", tau),
                                  std::abs(f.f[0][1].imag() - 0.25 * sh), tol));
    }
    return recs;
}

std::vector<VerifyRecord> eigen_records() {
    const double tol = 1e-7;
    std::vector<VerifyRecord> recs;

    // Radial form in tau: f'' + coth(tau) f' + (nu^2 + 1/4 - mu^2/sinh^2) f = 0.
    {
        const double mu = 0.5, nu = 0.8;
        const ConicalIndex idx{cplx(mu), nu};
        auto a2 = [](double) { return 1.0; };
        auto a1 = [](double tau) { return 1.0 / std::tanh(tau); };
        auto a0 = [mu, nu](double tau) {
            const double sh = std::sinh(tau);
            return nu * nu + 0.25 - mu * mu / (sh * sh);
        };
        for (double tau : {0.8, 1.1, 1.5, 1.9, 2.3}) {
            auto fp = [idx](double u) { return conical_p(idx, std::cosh(u)).value; };
            auto fq = [idx](double u) { return conical_q(idx, std::cosh(u)).value; };
            recs.push_back(dev_record("conical radial ODE, tau form",
                                      fmt("P mu=%g nu=%g tau=%g", mu, nu, tau),
                                      ode_residual(a2, a1, a0, fp, tau, 1e-3), tol));
            recs.push_back(dev_record("conical radial ODE, tau form",
                                      fmt("Q mu=%g nu=%g tau=%g", mu, nu, tau),
                                      ode_residual(a2, a1, a0, fq, tau, 1e-3), tol));
        }
    }

    // Algebraic form in z: (z^2-1) f'' + 2z f' + (nu^2 + 1/4 - mu^2/(z^2-1)) f = 0.
    {
        const double mu = 0.5, nu = 0.8;
        const ConicalIndex idx{cplx(mu), nu};
        auto a2 = [](double z) { return z * z - 1.0; };
        auto a1 = [](double z) { return 2.0 * z; };
        auto a0 = [mu, nu](double z) { return nu * nu + 0.25 - mu * mu / (z * z - 1.0); };
        for (double z : {1.3, 1.8, 2.4, 3.0, 3.7}) {
            auto fp = [idx](double u) { return conical_p(idx, u).value; };
            auto fq = [idx](double u) { return conical_q(idx, u).value; };
            recs.push_back(dev_record("conical Legendre ODE, z form",
                                      fmt("P mu=%g nu=%g z=%g", mu, nu, z),
                                      ode_residual(a2, a1, a0, fp, z, 1e-3), tol));
            recs.push_back(dev_record("conical Legendre ODE, z form",
                                      fmt("Q mu=%g nu=%g z=%g", mu, nu, z),
                                      ode_residual(a2, a1, a0, fq, z, 1e-3), tol));
        }
    }

    // F(p) = W_{-k, i nu/2}(2p)/p solves F'' + (2/p) F' - (1 + 2k/p - (1+nu^2)/(4p^2)) F = 0.
    {
        const double k = 0.3, nu = 1.2;
        auto a2 = [](double) { return 1.0; };
        auto a1 = [](double p) { return 2.0 / p; };
        auto a0 = [k, nu](double p) {
            return 0.25 * (1.0 + nu * nu) / (p * p) - 2.0 * k / p - 1.0;
        };
        auto f = [k, nu](double p) {
            return whittaker_w(-k, cplx(0.0, 0.5 * nu), 2.0 * p).value / p;
        };
        for (double p : {0.8, 1.2, 1.7, 2.3, 3.0})
            recs.push_back(dev_record("Whittaker radial family ODE",
                                      fmt("k=%g nu=%g p=%g", k, nu, p),
                                      ode_residual(a2, a1, a0, f, p, 1e-2), tol));
    }

    // F(p) = p^{k-1/2} K_{i nu/2}(p) solves
    // p^2 F'' + (2-2k) p F' + (k(k-1) + (nu^2+1)/4 - p^2) F = 0.
    {
        const double k = 1.0, nu = 2.0;
        auto a2 = [](double p) { return p * p; };
        auto a1 = [k](double p) { return (2.0 - 2.0 * k) * p; };
        auto a0 = [k, nu](double p) {
            return k * (k - 1.0) + 0.25 * (nu * nu + 1.0) - p * p;
        };
        auto f = [k, nu](double p) {
            return std::pow(p, k - 0.5) * bessel_k_imag(0.5 * nu, p).value;
        };
        for (double p : {0.9, 1.3, 1.8, 2.4, 3.1})
            recs.push_back(dev_record("Macdonald radial family ODE",
                                      fmt("k=%g nu=%g p=%g", k, nu, p),
                                      ode_residual(a2, a1, a0, f, p, 1e-3), tol));
    }
    return recs;
}

std::vector<VerifyRecord> bridge_records() {
    const double tol = 1e-5;
    const double tol_anchor = 1e-10;
    const double a_grid[3] = {0.8, 1.5, 2.5};
    std::vector<VerifyRecord> recs;

    for (double k : {0.0, 0.25, 0.5})
        for (double a : a_grid)
            recs.push_back(bridge_record("GR 7.141.5", fmt("k=%g nu=1 a=%g", k, a),
                                         bridge_whittaker(k, 1.0, a), tol));

    for (double mu : {0.0, 0.25, 0.5})
        for (double a : a_grid)
            recs.push_back(bridge_record("GR 7.142.1", fmt("mu=%g degree=0.7 a=%g", mu, a),
                                         bridge_macdonald(mu, 0.7, a), tol));

    for (double lam : {0.5, 1.0, 1.5})
        for (double a : a_grid)
            recs.push_back(bridge_record("conical Laplace-Macdonald bridge",
                                         fmt("lam=%g nu=0.9 a=%g", lam, a),
                                         bridge_macdonald_conical(lam, 0.9, a), tol));

    // Degenerate reductions with closed forms on both sides.
    {
        const double nu = 1.0, a = 1.0;
        const double lhs = whittaker_w(0.0, cplx(0.0, nu), 2.0 * a).value.real();
        const double rhs = std::sqrt(2.0 * a / std::numbers::pi) *
                           bessel_k_imag(nu, a).value.real();
        recs.push_back(cmp_record("GR 7.141.5 k=0 reduction to Macdonald",
                                  fmt("nu=%g a=%g", nu, a), lhs, rhs, tol_anchor));
    }
    {
        QuadratureSpec tight;
        tight.abs_tol = 5e-14;
        tight.rel_tol = 1e-12;
        const BridgeResult b = bridge_macdonald(0.0, 0.0, 1.0, tight);
        recs.push_back(cmp_record("GR 7.142.1 mu=0 degenerate case", "degree=0 a=1",
                                  b.lhs, std::exp(-1.0), tol_anchor));
        recs.push_back(cmp_record("GR 7.142.1 mu=0 degenerate case, closed-form side",
                                  "degree=0 a=1", b.rhs, std::exp(-1.0), tol_anchor));
    }
    return recs;
}

std::vector<VerifyRecord> whipple_records() {
    const double tol = 1e-6;
    std::vector<double> tau_grid;
    for (int i = 0; i < 8; ++i) tau_grid.push_back(0.6 + 0.26 * i);
    std::vector<VerifyRecord> recs;
    const double cases[2][2] = {{1.0, 1.0}, {0.5, 1.5}};
    for (const auto& c : cases) {
        const WhippleResult w = whipple_check(c[0], c[1], tau_grid);
        recs.push_back(dev_record("Whipple degree-order exchange, ratio constancy",
                                  fmt("k=%g rho=%g (8 tau points)", c[0], c[1]),
                                  w.max_deviation, tol));
    }
    return recs;
}

std::vector<VerifyRecord> completeness_records() {
    const double tol = 1e-3;
    const std::vector<double> x_grid = {1.15, 1.3, 1.6, 2.0, 2.5, 3.2, 4.0};
    std::vector<VerifyRecord> recs;

    // Discontinuous cutoff: slow spectral decay. At mu=0 the nonvanishing x=1
    // value feeds a sqrt endpoint whose spectrum decays like p^{-3/2}, so that
    // channel needs a much wider band than the mu=1/2 one.
    auto f1 = [](double x) { return x <= 6.0 ? std::exp(-2.0 * x) : 0.0; };
    QuadratureSpec s1;
    s1.truncation = 6.0;
    const double f1_cases[2][2] = {{0.0, 100.0}, {0.5, 30.0}};
    for (const auto& c : f1_cases)
        recs.push_back(dev_record("radial completeness round trip, L2",
                                  fmt("truncated exponential, mu=%g p_max=%g", c[0], c[1]),
                                  mehler_fock_round_trip_l2(f1, c[0], x_grid, c[1], s1),
                                  tol));

    auto f2 = [](double x) { return (x - 1.0) * (x - 1.0) * std::exp(-2.0 * (x - 1.0)); };
    for (double mu : {0.0, 0.5})
        recs.push_back(dev_record("radial completeness round trip, L2",
                                  fmt("vanishing-boundary exponential, mu=%g p_max=16", mu),
                                  mehler_fock_round_trip_l2(f2, mu, x_grid, 16.0), tol));
    return recs;
}

std::vector<VerifyRecord> composition_records() {
    const double tol = 1e-3;
    const double tol_anchor = 1e-6;
    const double ab[3][2] = {{1.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}};
    std::vector<VerifyRecord> recs;
    for (double lam : {0.5, 1.0, 1.5})
        for (const auto& p : ab) {
            const DualValue d = composition_formula(lam, p[0], p[1]);
            VerifyRecord r;
            r.anchor = "Macdonald product composition";
            r.param = fmt("lam=%g a=%g b=%g", lam, p[0], p[1]);
            r.lhs = d.lhs;
            r.rhs = d.rhs;
            r.rel_err = d.rel_err;
            r.tol = tol;
            r.pass = d.rel_err <= tol;
            recs.push_back(r);
        }
    const DualValue anchor = composition_formula(0.5, 1.0, 1.0);
    const double exact = 0.25 * std::numbers::pi * std::numbers::pi * std::exp(-2.0);
    recs.push_back(cmp_record("composition closed-form anchor (pi^2/4) e^{-2}",
                              "lam=0.5 a=1 b=1, closed-form side", anchor.rhs, exact,
                              tol_anchor));
    return recs;
}

std::vector<VerifyRecord> kernel_records(std::uint64_t seed, int mc_paths) {
    std::vector<VerifyRecord> recs;
    const double pts[4][2] = {{1.0, 0.5}, {0.5, 0.35}, {2.0, 1.0}, {0.1, 0.05}};
    for (const auto& p : pts)
        recs.push_back(cmp_record("heat kernel, spectral vs hyperbolic-distance quadrature",
                                  fmt("rho=%g t=%g", p[0], p[1]),
                                  heat_kernel_radial(p[0], p[1]),
                                  heat_kernel_mckean(p[0], p[1]), 1e-4));
    recs.push_back(cmp_record("heat kernel mass conservation", "t=0.5",
                              heat_kernel_mass(0.5), 1.0, 1e-4));
    {
        const DualValue d = heat_semigroup_check(0.9, 0.35, 0.25);
        VerifyRecord r;
        r.anchor = "Chapman-Kolmogorov composition";
        r.param = "rho=0.9 t=0.35 s=0.25";
        r.lhs = d.lhs;
        r.rhs = d.rhs;
        r.rel_err = d.rel_err;
        r.tol = 1e-3;
        r.pass = d.rel_err <= r.tol;
        recs.push_back(r);
    }
    {
        const double ks = brownian_ks_statistic(0.5, mc_paths, 1e-3, seed);
        recs.push_back(dev_record("radial diffusion endpoint law, KS distance",
                                  fmt("t=0.5 n=%d dt=0.001 seed=%llu", mc_paths,
                                      static_cast<unsigned long long>(seed)),
                                  ks, 3.0 / std::sqrt(double(mc_paths))));
    }
    return recs;
}

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "algebra",  "brachistochrone", "metric",       "eigen", "bridges",
        "whipple",  "completeness",    "composition",  "kernel"};
    return names;
}

SuiteReport run_verify_suite(const std::string& name, const VerifyOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = name;
    if (name == "algebra") {
        rep.records = algebra_records();
    } else if (name == "brachistochrone") {
        rep.records = evolution_records();
        auto traj = trajectory_records();
        rep.records.insert(rep.records.end(), traj.begin(), traj.end());
    } else if (name == "metric") {
        rep.records = metric_records();
    } else if (name == "eigen") {
        rep.records = eigen_records();
    } else if (name == "bridges") {
        rep.records = bridge_records();
    } else if (name == "whipple") {
        rep.records = whipple_records();
    } else if (name == "completeness") {
        rep.records = completeness_records();
    } else if (name == "composition") {
        rep.records = composition_records();
    } else if (name == "kernel") {
        rep.records = kernel_records(opt.seed, opt.mc_paths);
    } else {
        throw std::invalid_argument("verify: unknown suite \"" + name + "\"");
    }
    if (opt.tol_override) {
        for (auto& r : rep.records) {
            r.tol = *opt.tol_override;
            r.pass = r.rel_err <= r.tol;
        }
    }
    rep.pass = true;
    for (const auto& r : rep.records) rep.pass = rep.pass && r.pass;
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return rep;
}

} // namespace hypdiff
