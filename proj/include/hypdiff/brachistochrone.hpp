#pragma once

#include "hypdiff/geometry.hpp"
#include "hypdiff/mat2.hpp"

#include <vector>

namespace hypdiff {

// Closed-form two-level evolution operator at angular rate omega. With
// keep_phase the overall e^{i omega (t-s)} factor is retained; without it the
// bare rotation block is returned.
Mat2C evolution_spherical(double t, double s, double omega, bool keep_phase = true);
Mat2C evolution_spherical(cplx t, cplx s, double omega, bool keep_phase = true);

// The same evolution continued to imaginary time: u = omega (t - s),
// e^{-u} [[cosh u, i sinh u], [-i sinh u, cosh u]].
Mat2C continue_to_hyperbolic(double t, double s, double omega);

// Instantaneous generator i (dU/dsigma) U^{-1} extracted from the closed form
// by central differences at a (possibly complex) time sigma. It is constant in
// sigma; tests pin the constancy.
Mat2C evolution_generator_at(cplx sigma, double omega, double h = 1e-5);
Mat2C evolution_generator(double omega); // closed form omega [[-1, i], [-i, -1]]

// -i times the contour integral of the extracted generator along the straight
// path from 0 to i*t (composite Simpson, `panels` even and >= 2). Feeding the
// result through expm2 reproduces continue_to_hyperbolic(t, 0, omega).
Mat2C continuation_exponent(double t, double omega, int panels = 64);

// Eigenvector-column matrix of the driven problem at complex time u:
// (1/sqrt 2) [[e^{2 i omega u}, i], [i e^{2 i omega u}, 1]].
Mat2C w_eigenmatrix(cplx u, double omega);

// Hamiltonian family H(t) = R [[-cosh 2wt, i sinh 2wt], [i sinh 2wt, cosh 2wt]]
// solving dH/dt = [F0, H] with F0 = -omega sigma_y and H(0) = R diag(-1, 1).
Mat2C hamiltonian_hyperbolic(double t, double omega, double R);
Mat2C constraint_operator(double omega); // F0 = [[0, i omega], [-i omega, 0]]

struct TrajectoryPoint {
    double t{0.0};
    Mat2C H;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    double energy_drift{0.0};        // max relative drift of tr(H^2)/2
    double orthogonality_drift{0.0}; // max absolute drift of tr(H F)
    bool drift_warning{false};       // energy_drift above 1e-8
};

// Fixed-step RK4 for dH/dt = [F0, H]. Rejects steps < 16.
Trajectory integrate_brachistochrone(const Mat2C& H0, const Mat2C& F0,
                                     double t_end, int steps);

struct DispersionResult {
    double value{0.0};
    bool negative_radicand{false};
    cplx mean{0.0};
    cplx second_moment{0.0};
};

// Energy dispersion sqrt(<H^2> - <H>^2) under the bilinear pairing of the
// geometry module. States of (near-)zero indefinite norm are rejected.
DispersionResult energy_dispersion(const Mat2C& H, const HypState& psi);

} // namespace hypdiff
