#include "hypdiff/kernels.hpp"

#include "hypdiff/interp.hpp"
#include "hypdiff/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hypdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Conical Legendre factor of the radial eigenfunction expansion; the plane
// wave limit P = 1 is substituted explicitly at zero separation, where the
// hypergeometric prefactor is indeterminate. The general evaluator is called
// directly: spectral tails reach beyond the range the conical_p wrapper
// guards, and at zero order the integral fallback stays honest there.
double radial_eigenfunction(double xi, double z) {
    if (z <= 1.0 + 1e-15) return 1.0;
    return legendre_p(cplx(0.0), cplx(-0.5, xi), z).value.real();
}

// Plancherel weight of the zero-order conical expansion.
double spectral_weight(double xi) { return xi * std::tanh(kPi * xi); }

// Upper cutoff leaving less than e^-46 of the Gaussian time factor outside.
double spectral_cutoff(double t) { return std::sqrt(46.0 / t) + 3.0; }

// Tolerances for kernel evaluations feeding an outer quadrature or a log
// table: the absolute floor sits above the Gauss-Kronrod roundoff limit of
// the oscillatory spectral integrand, the relative part carries the rest.
QuadratureSpec inner_kernel_spec() {
    QuadratureSpec s;
    s.abs_tol = 1e-15;
    s.rel_tol = 1e-9;
    return s;
}

// Distance rho at which the kernel magnitude has dropped ~38 e-folds below
// its peak; beyond it the value drowns in quadrature roundoff.
double kernel_range(double t) {
    return t * (std::sqrt(1.0 + 4.0 * (38.0 - 0.25 * t) / t) - 1.0);
}

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 stream; per-path states are separated by an extra mix so that
// distinct paths never share the underlying arithmetic progression.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t operator()() {
        state += kGolden;
        return mix64(state);
    }
};

} // namespace

double heat_kernel_radial(double rho, double t, const QuadratureSpec& spec) {
    if (!(rho >= 0.0)) throw std::invalid_argument("heat_kernel_radial: rho must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_radial: t must be > 0");

    const double z = std::cosh(rho);
    auto f = [t, z](double xi) {
        return std::exp(-(0.25 + xi * xi) * t) * spectral_weight(xi) *
               radial_eigenfunction(xi, z);
    };
    const QuadValue q = quad(f, 0.0, spectral_cutoff(t), spec);
    return q.value / (2.0 * kPi);
}

double heat_kernel_mckean(double rho, double t, const QuadratureSpec& spec) {
    if (!(rho >= 0.0)) throw std::invalid_argument("heat_kernel_mckean: rho must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_mckean: t must be > 0");

    // s = rho + u^2 flattens the inverse-sqrt edge of the integrand; the
    // cosh difference is formed as a product of sinhs to avoid cancellation.
    auto f = [rho, t](double u) {
        const double s = rho + u * u;
        const double dc = 2.0 * std::sinh(rho + 0.5 * u * u) * std::sinh(0.5 * u * u);
        if (dc <= 0.0)
            return (rho > 0.0)
                       ? rho * std::exp(-rho * rho / (4.0 * t)) / std::sqrt(std::sinh(rho))
                       : 0.0;
        return 2.0 * s * std::exp(-s * s / (4.0 * t)) * u / std::sqrt(dc);
    };
    const double s_max = std::sqrt(rho * rho + 200.0 * t) + 2.0;
    const QuadValue q = quad(f, 0.0, std::sqrt(s_max - rho), spec);
    const double pre = std::sqrt(2.0) * std::exp(-0.25 * t) /
                       std::pow(4.0 * kPi * t, 1.5);
    return pre * q.value;
}

double heat_kernel_mass(double t, const QuadratureSpec& spec) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_mass: t must be > 0");

    const QuadratureSpec inner = inner_kernel_spec();
    QuadratureSpec outer = spec;
    // the integrand carries quadrature noise of its own; the outer run must
    // not chase digits below it
    outer.abs_tol = std::max(spec.abs_tol, 1e-8);
    outer.rel_tol = std::max(spec.rel_tol, 1e-8);

    auto f = [t, &inner](double rho) {
        return heat_kernel_radial(rho, t, inner) * 2.0 * kPi * std::sinh(rho);
    };
    const double upper = 2.0 * t + std::sqrt(4.0 * t * t + 160.0 * t) + 1.0;
    return quad(f, 0.0, upper, outer).value;
}

double greens_function(double rho, double E, const QuadratureSpec& spec) {
    if (!(E > 0.0))
        throw std::domain_error("greens_function: E must be > 0 (resolvent region)");
    if (!(rho > 0.0)) throw std::invalid_argument("greens_function: rho must be > 0");

    const double z = std::cosh(rho);
    auto f = [E, z](double xi) {
        return spectral_weight(xi) * radial_eigenfunction(xi, z) /
               (E + 0.25 + xi * xi);
    };
    QuadratureSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 1e-12);
    local.rel_tol = std::max(spec.rel_tol, 1e-10);

    // algebraic decay with asymptotic period 2 pi / rho in xi: adaptive head,
    // then averaged half-period blocks for the oscillatory remainder
    const double head_end = std::max(10.0, 3.0 * kPi / rho);
    const QuadValue head = quad(f, 0.0, head_end, local);
    const QuadValue tail = quad_oscillatory_tail(f, head_end, kPi / rho, local);
    return (head.value + tail.value) / (2.0 * kPi);
}

double greens_function_laplace(double rho, double E, const QuadratureSpec& spec) {
    if (!(E > 0.0))
        throw std::domain_error("greens_function_laplace: E must be > 0 (resolvent region)");
    if (!(rho > 0.0)) throw std::invalid_argument("greens_function_laplace: rho must be > 0");

    QuadratureSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-9);
    outer.rel_tol = std::max(spec.rel_tol, 1e-8);

    auto f = [rho](double t, double E_) {
        QuadratureSpec inner = inner_kernel_spec();
        // short times push the spectral cutoff out and the kernel value far
        // below the oscillatory integral's roundoff; the absolute tolerance
        // must sit above that floor or the inner run would chase ghosts
        const double xi_max = spectral_cutoff(t);
        inner.abs_tol += 1e-14 * 0.6 * std::pow(xi_max, 1.5) / std::sqrt(std::sinh(rho));
        return std::exp(-E_ * t) * heat_kernel_radial(rho, t, inner);
    };
    // below t_min the kernel has fallen ~22 e-folds, the truncated mass is
    // ~1e-12; past T the exponential and the spectral bottom have damped the
    // integrand by e^-42
    const double t_min = rho * rho / 90.0;
    const double upper = std::max(42.0 / (E + 0.25), 8.0 * t_min + 1.0);
    return quad([&](double t) { return f(t, E); }, t_min, upper, outer).value;
}

DualValue composition_formula(double lambda, double a, double b,
                              const QuadratureSpec& spec) {
    if (!(lambda > 0.0) || lambda > 5.0)
        throw std::invalid_argument("composition_formula: lambda must lie in (0, 5]");
    if (!(a > 0.0) || !(b > 0.0) || a + b > 50.0)
        throw std::invalid_argument("composition_formula: need a, b > 0 with a + b <= 50");

    // nu sinh(pi nu) |Gamma(lambda + i nu)|^2 decays like e^{-pi nu} against
    // the K product's growth; assembled in log form to keep both factors in
    // range on the whole interval
    auto f = [lambda, a, b](double nu) {
        const double lg = 2.0 * lgamma_complex(cplx(lambda, nu)).real();
        const double w = nu * std::exp(kPi * nu + lg - std::log(2.0)) *
                         (-std::expm1(-2.0 * kPi * nu));
        return w * bessel_k_imag(nu, a).value.real() *
               bessel_k_imag(nu, b).value.real();
    };
    QuadratureSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 1e-12);
    local.rel_tol = std::max(spec.rel_tol, 1e-9);
    const double upper = std::max(20.0, lambda + 15.0);

    DualValue r;
    r.lhs = quad(f, 0.0, upper, local).value;
    r.rhs = 0.5 * std::pow(kPi, 1.5) * std::tgamma(lambda + 0.5) *
            std::pow(2.0 * a * b / (a + b), lambda) *
            bessel_k_real(lambda, a + b).value.real();
    r.rel_err = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
    return r;
}

DualValue heat_semigroup_check(double rho, double t, double s,
                               const QuadratureSpec& spec) {
    if (!(rho > 0.0)) throw std::invalid_argument("heat_semigroup_check: rho must be > 0");
    if (!(t > 0.0) || !(s > 0.0))
        throw std::invalid_argument("heat_semigroup_check: times must be > 0");
    (void)spec;

    const double r_max = kernel_range(t);
    const double d_max = r_max + rho + 0.05;

    // both kernels are tabulated once on log scale through the closed form,
    // whose positive integrand keeps relative accuracy far into the tail;
    // the spectral route loses the tail to oscillatory cancellation and a
    // noisy log table would leak spline oscillations into the near field
    QuadratureSpec tab;
    tab.abs_tol = 1e-120;
    tab.rel_tol = 1e-10;
    auto tabulate = [&tab](double time, double upper, int n) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = upper * i / (n - 1);
            y[i] = std::log(heat_kernel_mckean(x[i], time, tab));
        }
        return CubicSpline(x, y);
    };
    const CubicSpline log_kt = tabulate(t, r_max, 261);
    const CubicSpline log_ks = tabulate(s, d_max, 261);

    const double ch_rho = std::cosh(rho), sh_rho = std::sinh(rho);
    auto integrand = [&](double r, double theta) {
        const double chd = std::cosh(r) * ch_rho - std::sinh(r) * sh_rho * std::cos(theta);
        const double d = std::acosh(std::max(1.0, chd));
        return std::exp(log_kt(r) + log_ks(std::min(d, d_max))) * std::sinh(r);
    };

    // composite Simpson in both directions; the integrand is smooth (the
    // kernels depend on cosh of the distance) and even in theta
    const int nr = 560, nth = 288;
    const double hr = r_max / nr, hth = kPi / nth;
    auto simpson_w = [](int i, int n) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double acc = 0.0;
    for (int i = 0; i <= nr; ++i) {
        const double r = i * hr;
        double row = 0.0;
        for (int j = 0; j <= nth; ++j)
            row += simpson_w(j, nth) * integrand(r, j * hth);
        acc += simpson_w(i, nr) * (hth / 3.0) * row;
    }
    DualValue out;
    out.lhs = 2.0 * (hr / 3.0) * acc;
    out.rhs = heat_kernel_mckean(rho, t + s, tab);
    out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
    return out;
}

std::vector<double> brownian_sampler(double tau0, double t, int n_paths,
                                     double dt, std::uint64_t seed) {
    if (!(tau0 >= 0.0)) throw std::invalid_argument("brownian_sampler: tau0 must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("brownian_sampler: t must be > 0");
    if (n_paths < 1000)
        throw std::invalid_argument("brownian_sampler: need at least 1000 paths");
    if (!(dt > 0.0) || dt > 1e-3 * std::max(1.0, t))
        throw std::invalid_argument("brownian_sampler: dt must lie in (0, 1e-3*max(1,t)]");

    const long n_steps = std::max(1L, std::lround(std::ceil(t / dt - 1e-9)));
    const double h = t / n_steps;
    const double sd = std::sqrt(2.0 * h);

    std::vector<double> out(static_cast<std::size_t>(n_paths));
    for (int p = 0; p < n_paths; ++p) {
        SplitMix64 rng{mix64(seed + kGolden * static_cast<std::uint64_t>(p + 1))};
        double tau = tau0;
        for (long k = 0; k < n_steps; ++k) {
            // Box-Muller pair; both normals are drawn on every step so the
            // stream position never depends on the branch taken
            const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
            const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            const double amp = std::sqrt(-2.0 * std::log(u1));
            const double z1 = amp * std::cos(2.0 * kPi * u2);
            const double z2 = amp * std::sin(2.0 * kPi * u2);
            if (tau < 0.1) {
                // planar two-component step carries the 1/tau part of the
                // drift exactly; only the hyperbolic remainder is explicit
                const double c = tau * (1.0 / 3.0 - tau * tau / 45.0);
                tau = std::hypot(tau + c * h + sd * z1, sd * z2);
            } else {
                tau += h / std::tanh(tau) + sd * z1;
            }
            if (tau < 1e-6) tau = 1e-6; // reflecting floor keeps the drift finite
        }
        out[static_cast<std::size_t>(p)] = tau;
    }
    return out;
}

double brownian_ks_statistic(double t, int n_paths, double dt,
                             std::uint64_t seed, const QuadratureSpec& spec) {
    (void)spec;
    std::vector<double> ep = brownian_sampler(0.0, t, n_paths, dt, seed);
    std::sort(ep.begin(), ep.end());

    // radial CDF from the spectral kernel: cumulative Simpson of the density
    // K_t(u) 2 pi sinh u on a grid covering every sample
    const QuadratureSpec inner = inner_kernel_spec();
    const double tau_max = ep.back() + 0.5;
    const int m = 1024;
    const double h = tau_max / m;
    std::vector<double> dens(m + 1), cdf(m + 1, 0.0);
    for (int i = 0; i <= m; ++i)
        dens[i] = heat_kernel_radial(i * h, t, inner) * 2.0 * kPi * std::sinh(i * h);
    for (int i = 0; i + 2 <= m; i += 2) {
        cdf[i + 1] = cdf[i] + h * (5.0 * dens[i] + 8.0 * dens[i + 1] - dens[i + 2]) / 12.0;
        cdf[i + 2] = cdf[i] + h * (dens[i] + 4.0 * dens[i + 1] + dens[i + 2]) / 3.0;
    }
    for (int i = 0; i <= m; ++i) {
        cdf[i] = std::clamp(cdf[i], 0.0, 1.0);
        if (i > 0) cdf[i] = std::max(cdf[i], cdf[i - 1]);
    }

    const double n = static_cast<double>(ep.size());
    double dist = 0.0;
    for (std::size_t i = 0; i < ep.size(); ++i) {
        const int j = std::min(static_cast<int>(ep[i] / h), m - 1);
        const double frac = ep[i] / h - j;
        const double fx = cdf[j] + (cdf[j + 1] - cdf[j]) * frac;
        dist = std::max({dist, std::abs(fx - (i + 1.0) / n), std::abs(fx - i / n)});
    }
    return dist;
}

} // namespace hypdiff
