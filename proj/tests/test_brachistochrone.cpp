#include "doctest.h"

#include "hypdiff/brachistochrone.hpp"
#include "hypdiff/geometry.hpp"
#include "hypdiff/mat2.hpp"

#include <cmath>
#include <complex>

using namespace hypdiff;

namespace {

const cplx I{0.0, 1.0};

// Independent finite-difference check of dH/dt = [F0, H].
double flow_equation_residual(double t, double omega, double R) {
    const double h = 1e-5;
    const Mat2C dH = (1.0 / (2.0 * h)) * (hamiltonian_hyperbolic(t + h, omega, R) +
                                          (-1.0) * hamiltonian_hyperbolic(t - h, omega, R));
    const Mat2C rhs = commutator(constraint_operator(omega), hamiltonian_hyperbolic(t, omega, R));
    return mismatch(dH, rhs);
}

} // namespace

TEST_SUITE("brachistochrone") {

TEST_CASE("closed-form evolution composes and inverts") {
    const double omega = 0.9;
    const double pts[] = {-0.7, 0.0, 0.4, 1.3, 2.1};
    for (double t : pts) {
        for (double s : pts) {
            const Mat2C lhs = evolution_spherical(t, s, omega);
            const Mat2C rhs = evolution_spherical(t, 0.0, omega) * evolution_spherical(0.0, s, omega);
            CHECK(mismatch(lhs, rhs) < 1e-13);
            CHECK(mismatch(evolution_spherical(s, t, omega) * lhs, Mat2C::identity()) < 1e-13);
        }
    }
    // the bare rotation block is special-unimodular; the phase factor doubles in the determinant
    CHECK(std::abs(evolution_spherical(1.0, 0.0, omega, false).det() - cplx{1.0}) < 1e-14);
    const cplx d = evolution_spherical(1.0, 0.0, omega, true).det();
    CHECK(std::abs(d - std::exp(2.0 * I * omega)) < 1e-14);
}

TEST_CASE("extracted generator is constant and matches the closed form") {
    const double omega = 0.8;
    const Mat2C gcf = evolution_generator(omega);
    CHECK(mismatch(gcf, Mat2C{-omega, I * omega, -I * omega, -omega}) < 1e-15);

    const cplx sigmas[] = {cplx{0.0}, cplx{0.5}, cplx{0.0, 0.4}, cplx{0.3, 0.7}};
    for (const cplx& s : sigmas) {
        CHECK(mismatch(evolution_generator_at(s, omega), gcf) < 1e-8);
    }
}

TEST_CASE("imaginary-time contour integral reproduces the hyperbolic evolution") {
    const double omega = 0.75;
    for (double t : {0.2, 0.6, 1.0, 1.8}) {
        const Mat2C m = continuation_exponent(t, omega);
        const Mat2C target = continue_to_hyperbolic(t, 0.0, omega);
        CHECK(mismatch(expm2(m), target) < 1e-9);
    }
    CHECK_THROWS_AS(continuation_exponent(1.0, omega, 3), std::invalid_argument);
}

TEST_CASE("hyperbolic evolution is the damped boost family") {
    const double omega = 0.6;
    for (double t : {0.1, 0.9, 2.0}) {
        const double u = omega * t;
        const Mat2C expected =
            std::exp(-u) * Mat2C{std::cosh(u), I * std::sinh(u), -I * std::sinh(u), std::cosh(u)};
        CHECK(mismatch(continue_to_hyperbolic(t, 0.0, omega), expected) < 1e-14);
    }
    // group property of the continued family
    const Mat2C a = continue_to_hyperbolic(1.4, 0.5, omega);
    const Mat2C b = continue_to_hyperbolic(1.4, 0.0, omega) * continue_to_hyperbolic(0.0, 0.5, omega);
    CHECK(mismatch(a, b) < 1e-13);
}

TEST_CASE("eigenvector factorization reassembles the continued evolution") {
    const double omega = 1.1;
    const double pts[] = {0.0, 0.3, 0.8, 1.5, 2.2};
    for (double t : pts) {
        for (double s : pts) {
            const Mat2C w = w_eigenmatrix(I * t, omega) *
                            w_eigenmatrix(-I * s, omega).conj_transpose();
            CHECK(mismatch(w, continue_to_hyperbolic(t, s, omega)) < 1e-12);
        }
    }
}

TEST_CASE("hamiltonian family solves the flow equation") {
    const double omega = 0.7, R = 1.3;
    const Mat2C h0 = hamiltonian_hyperbolic(0.0, omega, R);
    CHECK(mismatch(h0, Mat2C::diag(-R, R)) < 1e-15);
    for (double t : {0.0, 0.4, 1.0, 1.7}) {
        CHECK(flow_equation_residual(t, omega, R) < 1e-8);
        const Mat2C h = hamiltonian_hyperbolic(t, omega, R);
        CHECK(std::abs(h.trace()) < 1e-13);
        CHECK(std::abs(0.5 * (h * h).trace() - cplx{R * R}) < 1e-12);
        CHECK(std::abs((h * constraint_operator(omega)).trace()) < 1e-12);
    }
}

TEST_CASE("rk4 integration tracks the closed form") {
    const double omega = 0.7, R = 1.3, t_end = 1.0;
    const Mat2C h0 = hamiltonian_hyperbolic(0.0, omega, R);
    const Mat2C f0 = constraint_operator(omega);

    const Trajectory traj = integrate_brachistochrone(h0, f0, t_end, 1024);
    REQUIRE(traj.points.size() == 1025);
    const Mat2C ref = hamiltonian_hyperbolic(t_end, omega, R);
    CHECK(mismatch(traj.points.back().H, ref) < 1e-8);
    CHECK(traj.energy_drift < 1e-8);
    CHECK(traj.orthogonality_drift < 1e-8);
    CHECK(!traj.drift_warning);

    // fourth-order convergence: halving the step divides the error by ~16
    const Trajectory coarse = integrate_brachistochrone(h0, f0, t_end, 256);
    const Trajectory fine = integrate_brachistochrone(h0, f0, t_end, 512);
    const double e_coarse = mismatch(coarse.points.back().H, ref);
    const double e_fine = mismatch(fine.points.back().H, ref);
    CHECK(e_coarse / e_fine > 12.0);
    CHECK(e_coarse / e_fine < 20.0);

    CHECK_THROWS_AS(integrate_brachistochrone(h0, f0, t_end, 8), std::invalid_argument);
}

TEST_CASE("dispersion of the raising-generator hamiltonian from the origin state") {
    const double R = 1.7;
    const GeneratorSet g = su11_generators();
    const Mat2C h = (2.0 * R) * g.a_plus; // equals R sigma_x
    const HypState origin = state_from_euler(0.0, 0.0, 0.0);
    const DispersionResult r = energy_dispersion(h, origin);
    CHECK(!r.negative_radicand);
    CHECK(r.value == doctest::Approx(R).epsilon(1e-12));
    CHECK(std::abs(r.mean) < 1e-13);
}

TEST_CASE("dispersion vanishes for multiples of the identity and for eigenstates") {
    const HypState s = state_from_euler(1.2, 0.4, -0.3);
    const DispersionResult r = energy_dispersion(Mat2C::diag(2.5, 2.5), s);
    CHECK(r.value < 1e-7);

    // the t=0 hamiltonian is diagonal, and the origin state is an eigenvector
    const HypState origin = state_from_euler(0.0, 0.0, 0.0);
    const DispersionResult r2 = energy_dispersion(hamiltonian_hyperbolic(0.0, 0.5, 2.0), origin);
    CHECK(r2.value < 1e-7);
    CHECK(std::abs(r2.mean - cplx{-2.0}) < 1e-13);
}

TEST_CASE("dispersion on a boosted state, including a negative radicand") {
    // sigma_x on the boosted state: <H> = -i sinh(1), <H^2> = 1, giving cosh(1)
    const HypState s = state_from_euler(1.0, 0.0, 0.0);
    const Mat2C sx{0.0, 1.0, 1.0, 0.0};
    const DispersionResult rx = energy_dispersion(sx, s);
    CHECK(rx.value == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(!rx.negative_radicand);

    // sigma_z on the same state has <H> = cosh(1), <H^2> = 1: flagged, |.| = sinh(1)
    const Mat2C sz = Mat2C::diag(1.0, -1.0);
    const DispersionResult rz = energy_dispersion(sz, s);
    CHECK(rz.negative_radicand);
    CHECK(rz.value == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
}

TEST_CASE("states of zero indefinite norm are rejected") {
    const HypState null_state = state_from_euler(0.7, 0.2, 0.0, {cplx{1.0}, I});
    CHECK_THROWS_AS(energy_dispersion(Mat2C::identity(), null_state), std::domain_error);
}

} // TEST_SUITE
