#pragma once

#include "hypdiff/quadrature.hpp"

#include <cstdint>
#include <vector>

namespace hypdiff {

// Heat kernel of the hyperbolic plane at geodesic distance rho and time t,
// normalized so the kernel integrates to 1 against the area element; the
// semigroup weight is e^{-(1/4 + xi^2) t} over the radial spectrum.
double heat_kernel_radial(double rho, double t, const QuadratureSpec& spec = {});

// Same kernel through McKean's single-integral closed form. Shares no code
// with the spectral route; serves as its independent cross-check.
double heat_kernel_mckean(double rho, double t, const QuadratureSpec& spec = {});

// Total mass of the kernel over the plane; equals 1 for every t.
double heat_kernel_mass(double t, const QuadratureSpec& spec = {});

// Resolvent kernel at spectral shift E > 0, direct spectral form with the
// E + 1/4 + xi^2 denominator.
double greens_function(double rho, double E, const QuadratureSpec& spec = {});

// The same resolvent through the time side, as the Laplace transform of the
// heat kernel in t.
double greens_function_laplace(double rho, double E, const QuadratureSpec& spec = {});

struct DualValue {
    double lhs{0.0};
    double rhs{0.0};
    double rel_err{0.0};
};

// Product-to-single Macdonald reduction: the nu-integral of
// nu sinh(pi nu) |Gamma(lambda + i nu)|^2 K_{i nu}(a) K_{i nu}(b) against its
// closed form (pi^{3/2} Gamma(lambda + 1/2) / 2) (2ab/(a+b))^lambda K_lambda(a+b).
DualValue composition_formula(double lambda, double a, double b,
                              const QuadratureSpec& spec = {});

// Chapman-Kolmogorov identity: the 2D convolution of K_t and K_s over the
// plane against K_{t+s}, at geodesic separation rho.
DualValue heat_semigroup_check(double rho, double t, double s,
                               const QuadratureSpec& spec = {});

// Endpoint samples of the radial diffusion d tau = coth(tau) dt + sqrt(2) dW,
// whose transition density is heat_kernel_radial times the area element.
// Euler-Maruyama with a planar two-component step below tau = 0.1, where the
// drift singularity would otherwise bias the walk. Counter-based splitmix64
// streams keyed by (seed, path); identical arguments give identical output.
// Requires tau0 >= 0, t > 0, n_paths >= 1000, 0 < dt <= 1e-3 * max(1, t).
std::vector<double> brownian_sampler(double tau0, double t, int n_paths,
                                     double dt, std::uint64_t seed);

// Kolmogorov-Smirnov distance between sampled endpoints started at the origin
// and the radial CDF tabulated from the spectral kernel.
double brownian_ks_statistic(double t, int n_paths, double dt,
                             std::uint64_t seed, const QuadratureSpec& spec = {});

} // namespace hypdiff
