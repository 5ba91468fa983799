#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace hypdiff {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

enum class EndpointSingularity { none, inverse_sqrt, log };

struct QuadratureSpec {
    double abs_tol{1e-10};
    double rel_tol{1e-10};
    int max_subdivisions{2000};
    double truncation{0.0}; // initial upper cutoff for semi-infinite runs; 0 = auto
    EndpointSingularity endpoint_singularity{EndpointSingularity::none};
};

struct QuadValue {
    double value{0.0};
    double est_error{0.0};
    double tail_bound{0.0}; // reported whenever a semi-infinite range was truncated
    long evaluations{0};
};

struct QuadValueC {
    std::complex<double> value{0.0};
    double est_error{0.0};
    double tail_bound{0.0};
    long evaluations{0};
};

// Raised when the panel budget is exhausted; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), best_error(err) {}
    double best_estimate;
    double best_error;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b]; pass b = infinity for a semi-infinite
// range (upper cutoff doubled until |f| falls below abs_tol * e^-5, tail bound
// reported). Declared endpoint singularities are handled at the lower limit:
// inverse_sqrt by the u^2 substitution, log by tanh-sinh on the first panel.
QuadValue quad(const RealFn& f, double a, double b, const QuadratureSpec& spec = {});
QuadValueC quad_c(const ComplexFn& f, double a, double b, const QuadratureSpec& spec = {});

// Double-exponential rule on a finite interval; robust to integrable endpoint
// singularities on either side.
QuadValue tanh_sinh(const RealFn& f, double a, double b, double tol, int max_level = 10);
QuadValueC tanh_sinh_c(const ComplexFn& f, double a, double b, double tol, int max_level = 10);

// Integral over [a, cut] of (x-a)^(-alpha) * smooth(x) for alpha in (0, 1),
// via the exact substitution v = (x-a)^(1-alpha). The caller supplies only the
// smooth factor; the principal endpoint mass is captured analytically.
QuadValue quad_power_singularity(const RealFn& smooth, double a, double cut,
                                 double alpha, const QuadratureSpec& spec = {});

// Tail sum over [t0, infinity) of an integrand with asymptotic half-period
// `half_period`: consecutive half-period blocks are integrated and the
// alternating partial sums accelerated by repeated averaging.
QuadValue quad_oscillatory_tail(const RealFn& f, double t0, double half_period,
                                const QuadratureSpec& spec = {},
                                int blocks = 24, int passes = 10);
QuadValueC quad_oscillatory_tail_c(const ComplexFn& f, double t0, double half_period,
                                 const QuadratureSpec& spec = {},
                                 int blocks = 24, int passes = 10);

} // namespace hypdiff
