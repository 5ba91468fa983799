#pragma once

#include "hypdiff/quadrature.hpp"
#include "hypdiff/specfun.hpp"

#include <vector>

namespace hypdiff {

enum class TransformDirection { forward, inverse };

struct TransformPoint {
    double parameter{0.0};
    double value{0.0};
    double est_error{0.0};
};

struct TransformResult {
    std::vector<TransformPoint> values;
    double truncation_report{0.0}; // worst tail bound across grid points
};

// Spectral weight |Gamma(ip+mu)|^2 p sinh(pi p); closed forms at mu = 0 and
// mu = 1/2, log-Gamma form otherwise (stable for large p).
double mehler_fock_weight(double p, double mu);

// Index transform with kernel P^{1/2-mu}_{ip-1/2}(x) on (1, inf). forward
// maps f(x) to F(p); inverse maps F(p) to f(x) with weight
// mehler_fock_weight/pi. spec.truncation > 0 pins the integration cutoff.
TransformResult mehler_fock(const RealFn& f, double mu, const std::vector<double>& grid,
                            TransformDirection dir, const QuadratureSpec& spec = {});

// Kontorovich-Lebedev pair: forward G(nu) = int_0^inf g(a) K_{i nu}(a) da/a,
// inverse g(x) = (2/pi^2) int_0^inf nu sinh(pi nu) G(nu) K_{i nu}(x) dnu.
TransformResult kontorovich_lebedev(const RealFn& g, const std::vector<double>& grid,
                                    TransformDirection dir, const QuadratureSpec& spec = {});

// Forward-tabulate, spline, invert, and report the relative L2 error on
// x_grid. The spectral grid is uniform on [0, cutoff].
double mehler_fock_round_trip_l2(const RealFn& f, double mu,
                                 const std::vector<double>& x_grid, double p_max,
                                 const QuadratureSpec& spec = {});
double kontorovich_lebedev_round_trip_l2(const RealFn& g,
                                         const std::vector<double>& x_grid, double nu_max,
                                         const QuadratureSpec& spec = {});

struct BridgeResult {
    double lhs{0.0};
    double rhs{0.0};
    double rel_err{0.0};
};

// Laplace transform of the conical function with weight ((x+1)/(x-1))^{k/2}
// against W_{k, i nu}(2a)/a. The x -> 1 endpoint behaves like (x-1)^{-k},
// so k must stay below 1.
BridgeResult bridge_whittaker(double k, double nu, double a,
                              const QuadratureSpec& spec = {});

// Laplace transform of (x^2-1)^{-mu/2} P^mu_degree(x) against
// sqrt(2/pi) a^{mu-1/2} K_{degree+1/2}(a); endpoint exponent (x-1)^{-mu}.
BridgeResult bridge_macdonald(double mu, double degree, double a,
                              const QuadratureSpec& spec = {});

// Conical variant: a^lam sqrt(pi/2) int_1^inf (x^2-1)^{lam/2-1/4}
// P^{1/2-lam}_{i nu - 1/2}(x) e^{-ax} dx = K_{i nu}(a).
BridgeResult bridge_macdonald_conical(double lam, double nu, double a,
                                      const QuadratureSpec& spec = {});

struct WhippleResult {
    cplx fitted_constant{0.0};
    double max_deviation{0.0};
};

// Ratio Q^k_{i rho - 1/2}(cosh tau) sqrt(sinh tau) / P^{-i rho}_{k-1/2}(coth tau)
// evaluated over tau_grid; reports the component-wise median constant and the
// worst relative deviation from it.
WhippleResult whipple_check(double k, double rho, const std::vector<double>& tau_grid);

enum class ConjugationMode { whittaker_premultiplier, macdonald_premultiplier };

struct ConjugationResult {
    double literal_path{0.0};    // premultiply, apply operator, divide out
    double conjugated_path{0.0}; // closed-form conjugated coefficients
    double rel_err{0.0};
};

// Conjugation of the order-k Legendre operator
// (z^2-1) d^2 + 2z d - k^2/(z^2-1) by the two weights used above:
// ((z+1)/(z-1))^{k/2} gives (z^2-1) f'' + 2(z-k) f'; (z^2-1)^{k/2} gives
// (z^2-1) f'' + 2(k+1) z f' + k(k+1) f. Both paths use 5-point stencils.
ConjugationResult legendre_operator_conjugation(double k, ConjugationMode mode,
                                                const RealFn& f, double z);

} // namespace hypdiff
