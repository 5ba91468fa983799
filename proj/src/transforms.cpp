#include "hypdiff/transforms.hpp"

#include "hypdiff/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double mf_kernel(double mu, double p, double x) {
    return legendre_p(cplx(0.5 - mu, 0.0), cplx(-0.5, p), x).value.real();
}

// Decay-rate tail estimate at a caller-pinned cutoff, mirroring the
// semi-infinite heuristic inside quad.
double tail_estimate(const RealFn& f, double lower, double T) {
    const double t0 = lower + 0.95 * (T - lower);
    const double m0 = std::abs(f(t0)), m1 = std::abs(f(T));
    if (!(m1 > 0.0)) return 0.0;
    if (m0 > m1 * (1.0 + 1e-9)) return m1 * (T - t0) / std::log(m0 / m1);
    return m1 * (T - lower);
}

struct PointQuad {
    double value, est_error, tail;
};

PointQuad integrate_point(const RealFn& f, double lower, const QuadratureSpec& spec) {
    if (spec.truncation > lower) {
        const QuadValue q = quad(f, lower, spec.truncation, spec);
        return {q.value, q.est_error, tail_estimate(f, lower, spec.truncation)};
    }
    const QuadValue q = quad(f, lower, kInf, spec);
    return {q.value, q.est_error, q.tail_bound};
}

void check_grid(const std::vector<double>& grid, double min_exclusive, const char* what) {
    if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
    for (double g : grid)
        if (!std::isfinite(g) || g <= min_exclusive)
            throw std::invalid_argument(std::string(what) + ": grid point out of domain");
}

} // namespace

double mehler_fock_weight(double p, double mu) {
    if (!(p >= 0.0) || !std::isfinite(p))
        throw std::domain_error("mehler_fock_weight: p must be >= 0");
    if (!(mu >= 0.0) || mu > 9.0)
        throw std::domain_error("mehler_fock_weight: order out of range");
    if (mu < 1e-13) return kPi; // |Gamma(ip)|^2 p sinh(pi p) collapses exactly
    if (std::abs(mu - 0.5) < 1e-13) return kPi * p * std::tanh(kPi * p);
    if (p < 1e-14) return 0.0;
    const double lg2 = 2.0 * lgamma_complex(cplx(mu, p)).real();
    return std::exp(lg2 + std::log(p) + kPi * p - std::log(2.0) +
                    std::log1p(-std::exp(-2.0 * kPi * p)));
}

TransformResult mehler_fock(const RealFn& f, double mu, const std::vector<double>& grid,
                            TransformDirection dir, const QuadratureSpec& spec) {
    if (!std::isfinite(mu) || std::abs(0.5 - mu) > 9.5)
        throw std::domain_error("mehler_fock: order out of kernel range");
    check_grid(grid, dir == TransformDirection::forward ? 0.0 : 1.0, "mehler_fock");

    TransformResult out;
    out.values.reserve(grid.size());
    for (double param : grid) {
        RealFn integrand;
        double lower;
        if (dir == TransformDirection::forward) {
            integrand = [&f, mu, param](double x) {
                return (x <= 1.0) ? 0.0 : f(x) * mf_kernel(mu, param, x);
            };
            lower = 1.0;
        } else {
            integrand = [&f, mu, param](double p) {
                if (p <= 0.0) return 0.0;
                return f(p) * mehler_fock_weight(p, mu) * mf_kernel(mu, p, param) / kPi;
            };
            lower = 0.0;
        }
        const PointQuad q = integrate_point(integrand, lower, spec);
        out.values.push_back({param, q.value, q.est_error});
        out.truncation_report = std::max(out.truncation_report, q.tail);
    }
    return out;
}

TransformResult kontorovich_lebedev(const RealFn& g, const std::vector<double>& grid,
                                    TransformDirection dir, const QuadratureSpec& spec) {
    check_grid(grid, dir == TransformDirection::forward ? -1e-300 : 0.0,
               "kontorovich_lebedev");

    TransformResult out;
    out.values.reserve(grid.size());
    for (double param : grid) {
        RealFn integrand;
        if (dir == TransformDirection::forward) {
            if (param > 99.0)
                throw std::domain_error("kontorovich_lebedev: index out of kernel range");
            integrand = [&g, param](double a) {
                if (a <= 0.0 || a > 650.0) return 0.0;
                return g(a) * bessel_k_imag(param, a).value.real() / a;
            };
        } else {
            integrand = [&g, param](double nu) {
                if (nu <= 0.0 || nu > 99.0) return 0.0;
                const double k = bessel_k_imag(nu, param).value.real();
                return 2.0 / (kPi * kPi) * nu * std::sinh(kPi * nu) * g(nu) * k;
            };
        }
        const PointQuad q = integrate_point(integrand, 0.0, spec);
        out.values.push_back({param, q.value, q.est_error});
        out.truncation_report = std::max(out.truncation_report, q.tail);
    }
    return out;
}

namespace {

double round_trip_l2(const std::vector<double>& x_grid, const std::vector<double>& ref,
                     const std::vector<TransformPoint>& got) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x_grid.size(); ++i) {
        num += (got[i].value - ref[i]) * (got[i].value - ref[i]);
        den += ref[i] * ref[i];
    }
    if (!(den > 0.0)) throw std::invalid_argument("round_trip: reference vanishes on grid");
    return std::sqrt(num / den);
}

std::vector<double> uniform_knots(double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = hi * double(i) / double(n - 1);
    return v;
}

} // namespace

double mehler_fock_round_trip_l2(const RealFn& f, double mu,
                                 const std::vector<double>& x_grid, double p_max,
                                 const QuadratureSpec& spec) {
    if (!(p_max > 0.0)) throw std::invalid_argument("round_trip: p_max must be positive");
    check_grid(x_grid, 1.0, "mehler_fock_round_trip");

    const int n = std::max(81, int(12.0 * p_max) + 1);
    std::vector<double> knots = uniform_knots(p_max, n);
    // The p = 0 endpoint sits outside the forward grid contract; the weight
    // kills it in the inverse integral anyway.
    std::vector<double> fwd_grid(knots.begin() + 1, knots.end());
    const TransformResult fwd = mehler_fock(f, mu, fwd_grid, TransformDirection::forward, spec);
    std::vector<double> F(knots.size());
    for (size_t i = 0; i < fwd.values.size(); ++i) F[i + 1] = fwd.values[i].value;
    // F is even in p, so extend to p = 0 through a parabola in p^2.
    const double p1 = fwd_grid[0], p2 = fwd_grid[1];
    F[0] = F[1] - (F[2] - F[1]) / (p2 * p2 - p1 * p1) * p1 * p1;
    const CubicSpline S(knots, F);

    QuadratureSpec ispec = spec;
    ispec.truncation = p_max;
    const TransformResult inv =
        mehler_fock([&S](double p) { return S(p); }, mu, x_grid, TransformDirection::inverse, ispec);

    std::vector<double> ref(x_grid.size());
    for (size_t i = 0; i < x_grid.size(); ++i) ref[i] = f(x_grid[i]);
    return round_trip_l2(x_grid, ref, inv.values);
}

double kontorovich_lebedev_round_trip_l2(const RealFn& g,
                                         const std::vector<double>& x_grid, double nu_max,
                                         const QuadratureSpec& spec) {
    if (!(nu_max > 0.0)) throw std::invalid_argument("round_trip: nu_max must be positive");
    check_grid(x_grid, 0.0, "kontorovich_lebedev_round_trip");

    const int n = std::max(61, int(12.0 * nu_max) + 1);
    std::vector<double> knots = uniform_knots(nu_max, n);
    const TransformResult fwd =
        kontorovich_lebedev(g, knots, TransformDirection::forward, spec);
    std::vector<double> G(knots.size());
    for (size_t i = 0; i < fwd.values.size(); ++i) G[i] = fwd.values[i].value;
    const CubicSpline S(knots, G);

    QuadratureSpec ispec = spec;
    ispec.truncation = nu_max;
    const TransformResult inv = kontorovich_lebedev(
        [&S](double nu) { return S(nu); }, x_grid, TransformDirection::inverse, ispec);

    std::vector<double> ref(x_grid.size());
    for (size_t i = 0; i < x_grid.size(); ++i) ref[i] = g(x_grid[i]);
    return round_trip_l2(x_grid, ref, inv.values);
}

namespace {

// Laplace-type integral over (1, inf) whose integrand behaves like
// (x-1)^{-alpha} at the endpoint: the singular head is handled by the exact
// power substitution, the rest by the adaptive rule.
double laplace_endpoint_integral(const RealFn& integrand, double alpha,
                                 const QuadratureSpec& spec, double* est) {
    *est = 0.0;
    if (alpha < 1e-13) {
        const QuadValue q = quad(integrand, 1.0, kInf, spec);
        *est = q.est_error + q.tail_bound;
        return q.value;
    }
    const RealFn smooth = [&integrand, alpha](double x) {
        return integrand(x) * std::pow(x - 1.0, alpha);
    };
    const QuadValue head = quad_power_singularity(smooth, 1.0, 2.0, alpha, spec);
    const QuadValue rest = quad(integrand, 2.0, kInf, spec);
    *est = head.est_error + rest.est_error + rest.tail_bound;
    return head.value + rest.value;
}

BridgeResult make_bridge(double lhs, double rhs) {
    BridgeResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_err = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    return r;
}

} // namespace

BridgeResult bridge_whittaker(double k, double nu, double a, const QuadratureSpec& spec) {
    if (!(a > 0.0)) throw std::domain_error("bridge_whittaker: a must be positive");
    if (!(k > -5.0 && k < 1.0))
        throw std::domain_error("bridge_whittaker: endpoint integrable only for k < 1");
    const RealFn integrand = [k, nu, a](double x) {
        if (x <= 1.0) return 0.0;
        const double pre = std::pow((x + 1.0) / (x - 1.0), 0.5 * k);
        return std::exp(-a * x) * pre * conical_p({k, nu}, x).value.real();
    };
    double est = 0.0;
    const double lhs = laplace_endpoint_integral(integrand, std::max(k, 0.0), spec, &est);
    const double rhs = whittaker_w(k, cplx(0.0, nu), 2.0 * a).value.real() / a;
    return make_bridge(lhs, rhs);
}

BridgeResult bridge_macdonald(double mu, double degree, double a, const QuadratureSpec& spec) {
    if (!(a > 0.0)) throw std::domain_error("bridge_macdonald: a must be positive");
    if (!(mu > -5.0 && mu < 1.0))
        throw std::domain_error("bridge_macdonald: endpoint integrable only for mu < 1");
    if (!(degree >= -0.5 && degree <= 5.0))
        throw std::domain_error("bridge_macdonald: degree out of supported range");
    const RealFn integrand = [mu, degree, a](double x) {
        if (x <= 1.0) return 0.0;
        const double pre = std::pow(x * x - 1.0, -0.5 * mu);
        return std::exp(-a * x) * pre * legendre_p(mu, degree, x).value.real();
    };
    double est = 0.0;
    const double lhs = laplace_endpoint_integral(integrand, std::max(mu, 0.0), spec, &est);
    const double rhs = std::sqrt(2.0 / kPi) * std::pow(a, mu - 0.5) *
                       bessel_k_real(degree + 0.5, a).value.real();
    return make_bridge(lhs, rhs);
}

BridgeResult bridge_macdonald_conical(double lam, double nu, double a,
                                      const QuadratureSpec& spec) {
    if (!(a > 0.0)) throw std::domain_error("bridge_macdonald_conical: a must be positive");
    if (!(lam >= 0.0 && lam <= 9.0))
        throw std::domain_error("bridge_macdonald_conical: lambda out of range");
    const RealFn integrand = [lam, nu, a](double x) {
        if (x <= 1.0) return 0.0;
        const double pre = std::pow(x * x - 1.0, 0.5 * lam - 0.25);
        return std::exp(-a * x) * pre *
               legendre_p(cplx(0.5 - lam, 0.0), cplx(-0.5, nu), x).value.real();
    };
    double est = 0.0;
    const double alpha = std::max(0.5 - lam, 0.0);
    const double lhs_int = laplace_endpoint_integral(integrand, alpha, spec, &est);
    const double lhs = std::pow(a, lam) * std::sqrt(kPi / 2.0) * lhs_int;
    const double rhs = bessel_k_imag(nu, a).value.real();
    return make_bridge(lhs, rhs);
}

WhippleResult whipple_check(double k, double rho, const std::vector<double>& tau_grid) {
    if (tau_grid.size() < 8)
        throw std::invalid_argument("whipple_check: need at least 8 grid points");
    for (double t : tau_grid)
        if (!(t > 0.1 && t < 3.0))
            throw std::invalid_argument("whipple_check: tau outside (0.1, 3)");

    std::vector<double> re, im;
    std::vector<cplx> r;
    for (double tau : tau_grid) {
        const cplx q = legendre_q(k, cplx(-0.5, rho), std::cosh(tau)).value;
        const cplx p = legendre_p(cplx(0.0, -rho), cplx(k - 0.5, 0.0),
                                  1.0 / std::tanh(tau)).value;
        const cplx ratio = q * std::sqrt(std::sinh(tau)) / p;
        r.push_back(ratio);
        re.push_back(ratio.real());
        im.push_back(ratio.imag());
    }
    const auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const size_t n = v.size();
        return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    WhippleResult out;
    out.fitted_constant = {median(re), median(im)};
    const double scale = std::abs(out.fitted_constant);
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::runtime_error("whipple_check: degenerate fitted constant");
    for (const cplx& v : r)
        out.max_deviation = std::max(out.max_deviation, std::abs(v - out.fitted_constant) / scale);
    return out;
}

ConjugationResult legendre_operator_conjugation(double k, ConjugationMode mode,
                                                const RealFn& f, double z) {
    if (!(z > 1.0) || !std::isfinite(z))
        throw std::domain_error("legendre_operator_conjugation: need z > 1");
    if (!std::isfinite(k) || std::abs(k) > 10.0)
        throw std::domain_error("legendre_operator_conjugation: k out of range");
    // Wide enough that rounding noise in the second difference stays well
    // under the 1e-6 agreement target, small enough for the h^4 truncation.
    const double h = std::min(3e-4, 0.15 * (z - 1.0));

    const auto weight = [k, mode](double x) {
        return mode == ConjugationMode::whittaker_premultiplier
                   ? std::pow((x + 1.0) / (x - 1.0), 0.5 * k)
                   : std::pow(x * x - 1.0, 0.5 * k);
    };
    const auto d5 = [h](const RealFn& g, double x, double& d1, double& d2) {
        const double gm2 = g(x - 2.0 * h), gm1 = g(x - h), g0 = g(x);
        const double gp1 = g(x + h), gp2 = g(x + 2.0 * h);
        d1 = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
        d2 = (-gm2 + 16.0 * gm1 - 30.0 * g0 + 16.0 * gp1 - gp2) / (12.0 * h * h);
    };

    const RealFn wf = [&](double x) { return weight(x) * f(x); };
    double g1 = 0.0, g2 = 0.0;
    d5(wf, z, g1, g2);
    const double zz = z * z - 1.0;
    const double literal =
        ((zz * g2 + 2.0 * z * g1 - k * k / zz * wf(z))) / weight(z);

    double f1 = 0.0, f2 = 0.0;
    d5(f, z, f1, f2);
    const double conj = mode == ConjugationMode::whittaker_premultiplier
                            ? zz * f2 + 2.0 * (z - k) * f1
                            : zz * f2 + 2.0 * (k + 1.0) * z * f1 + k * (k + 1.0) * f(z);

    ConjugationResult out;
    out.literal_path = literal;
    out.conjugated_path = conj;
    out.rel_err = std::abs(literal - conj) /
                  std::max({std::abs(literal), std::abs(conj), 1e-300});
    return out;
}

} // namespace hypdiff
