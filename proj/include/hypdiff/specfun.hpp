#pragma once

#include "hypdiff/quadrature.hpp"

#include <complex>
#include <functional>

namespace hypdiff {

using cplx = std::complex<double>;

enum class EvalMethod { series, quadrature, recurrence };

struct EvalResult {
    cplx value{0.0};
    double est_error{0.0};
    EvalMethod method{EvalMethod::series};
};

// Index pair for conical (Mehler-type) Legendre functions: order mu and real
// spectral parameter nu encoding the degree i*nu - 1/2.
struct ConicalIndex {
    cplx mu{0.0};
    double nu{0.0};
};

enum class SpectralBranch { lower, upper }; // eigenvalue -1/4 + xi^2 or +1/4 + xi^2

struct SpectralPoint {
    double xi{0.0};
    double k{0.0};
    double E{0.0};
    SpectralBranch branch{SpectralBranch::upper};
};

SpectralPoint make_spectral_point(double xi, double k, SpectralBranch branch);
bool spectral_point_consistent(const SpectralPoint& p, double tol = 1e-15);

// Lanczos Gamma with reflection for Re z < 1/2; throws on poles.
cplx gamma_complex(cplx z);
// log-Gamma via upward recurrence into the Lanczos region; real part exact
// (= ln|Gamma|), imaginary part reported modulo 2 pi.
cplx lgamma_complex(cplx z);

struct SeriesResult {
    cplx value{0.0};
    double est_error{0.0};
    long terms{0};
};

// Gauss series at real argument; Pfaff-transformed for x < -1/2. Throws when
// c is a nonpositive integer.
SeriesResult hyp2f1(cplx a, cplx b, cplx c, double x);
// Kummer confluent series, entire in x.
SeriesResult hyp1f1(cplx a, cplx c, double x);

// Associated Legendre P of general complex order/degree on (1, inf), via the
// hypergeometric representation; integer orders go through the limit formula,
// order +-1/2 through elementary closed forms. For zero order and degree
// i*nu - 1/2 with large |nu| sqrt(z^2-1), the series loses precision and the
// evaluation falls back to the Mehler-Dirichlet integral.
EvalResult legendre_p(cplx mu, cplx degree, double z);

// Second-kind companion in the real (Hobson) normalization, through the
// hypergeometric series in 1/z^2. Accuracy degrades as z -> 1.
EvalResult legendre_q(cplx mu, cplx degree, double z);

EvalResult conical_p(const ConicalIndex& idx, double z); // P^mu with degree i nu - 1/2
EvalResult conical_q(const ConicalIndex& idx, double z);

// Macdonald function of imaginary order i*nu via the real cosine integral;
// real order variant for half-integer and real indices.
EvalResult bessel_k_imag(double nu, double x);
EvalResult bessel_k_real(double order, double x);

// Modified Bessel I of imaginary order by its ascending series. With
// real_combination the real part (I_{i nu} + I_{-i nu})/2 is returned.
EvalResult bessel_i_imag(double nu, double x, bool real_combination = false);

// Whittaker W by the Gamma-weighted integral representation when
// Re(m) - kappa + 1/2 > 0, otherwise through the Kummer-function relation.
EvalResult whittaker_w(double kappa, cplx m, double z);

// Relative residual |a2 f'' + a1 f' + a0 f| / max |term| with 5-point central
// differences; h must lie in [1e-5, 1e-2]. Real-valued solutions pass through
// the complex signature unchanged.
double ode_residual(const std::function<double(double)>& a2,
                    const std::function<double(double)>& a1,
                    const std::function<double(double)>& a0,
                    const std::function<cplx(double)>& f, double x, double h);

} // namespace hypdiff
