#pragma once

#include "hypdiff/mat2.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace hypdiff {

// Two-component state with its rapidity/angle parametrization kept alongside
// the amplitudes, because the pairing rule below needs the angles.
struct HypState {
    cplx c1{1.0}, c2{0.0};
    double tau{0.0}, phi{0.0}, psi{0.0};
    std::array<cplx, 2> initial{cplx{1.0}, cplx{0.0}};
};

// Factor matrices of the Euler decomposition U(tau,phi,psi).
Mat2C euler_rotation(double angle); // diag(e^{i angle/2}, e^{-i angle/2})
Mat2C euler_boost(double tau);      // [[cosh(tau/2), i sinh(tau/2)], [-i sinh(tau/2), cosh(tau/2)]]
Mat2C euler_matrix(double tau, double phi, double psi);

HypState state_from_euler(double tau, double phi, double psi,
                          std::array<cplx, 2> initial = {cplx{1.0}, cplx{0.0}});

// Transposition-only bra: the state re-evaluated at (tau, -phi, -psi), laid
// out as a row. No complex conjugation anywhere.
std::array<cplx, 2> bar_state(const HypState& s);

// <bra|ket> and <bra|X|ket> under the bilinear pairing.
cplx pairing(const std::array<cplx, 2>& bra, const std::array<cplx, 2>& ket);
cplx pairing(const std::array<cplx, 2>& bra, const Mat2C& x, const std::array<cplx, 2>& ket);

// |Psi><Psi-bar|; its trace is 1 for any built state.
Mat2C projector(const HypState& s);

struct MetricTensor {
    int dim{0};
    std::vector<double> g; // row-major dim x dim
    std::vector<std::string> coords;

    double at(int i, int j) const { return g[size_t(i) * dim + j]; }
    double& at(int i, int j) { return g[size_t(i) * dim + j]; }
    bool degenerate_axis(int i, double tol = 1e-13) const;
    // determinant restricted to non-degenerate axes
    double det_nondegenerate(double tol = 1e-13) const;
    double max_asymmetry() const;
};

using MetricField = std::function<MetricTensor(const std::vector<double>&)>;

// Full overlap tensor before taking the real part; row/column order tau, phi, psi.
struct OverlapTensor {
    std::array<std::array<cplx, 3>, 3> f{};
};

OverlapTensor fubini_study_tensor(double tau, double phi, double psi, double h);
MetricTensor fubini_study_metric(double tau, double phi, double psi, double h);

// Second/first order coefficients of the invariant Laplacian as callables:
// sum_i A_i(x) d^2/dx_i^2 + B_i(x) d/dx_i + C(x).
struct LaplaceBeltramiCoeffs {
    int dim{0};
    std::vector<std::function<double(const std::vector<double>&)>> A;
    std::vector<std::function<double(const std::vector<double>&)>> B;
    std::function<double(const std::vector<double>&)> C;
};

// Assembles the coefficients from a diagonal metric field via central
// differences of sqrt(|det g|) g^{ii}. Non-diagonal metrics are rejected.
LaplaceBeltramiCoeffs laplace_beltrami_coeffs(const MetricField& field,
                                              int dim, double h = 1e-5);

// Chart metrics used across the test surface.
MetricField hyperbolic_plane_metric(); // coords (tau, phi): diag(-1, sinh^2 tau)
MetricField pseudosphere_metric();     // coords (r, tau, phi): diag(1, -r^2, -r^2 sinh^2 tau)
MetricField euclidean_metric(int dim);

// Potential q of the normal form F'' + q F = 0 obtained by removing the
// first-order term of the radial equation: q(tau) = (1/4 - k^2)/sinh^2 tau + xi^2.
std::function<double(double)> liouville_normal_form(double k, double xi);

} // namespace hypdiff
