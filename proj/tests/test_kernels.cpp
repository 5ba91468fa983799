#include "doctest.h"

#include "hypdiff/kernels.hpp"
#include "hypdiff/specfun.hpp"

#include <cmath>
#include <vector>

using namespace hypdiff;

TEST_SUITE_BEGIN("kernels");

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_close(double got, double want, double rtol) {
    CHECK(std::abs(got - want) <= rtol * std::abs(want));
}
} // namespace

TEST_CASE("closed-form heat kernel matches frozen values") {
    check_close(heat_kernel_mckean(1.0, 0.5), 0.07572675264356898994, 5e-9);
    check_close(heat_kernel_mckean(0.5, 0.35), 0.1660563800600710948, 5e-9);
    check_close(heat_kernel_mckean(2.0, 1.0), 0.01591411576891038813, 5e-9);
    check_close(heat_kernel_mckean(0.1, 0.05), 1.487710645969926386, 5e-9);
}

TEST_CASE("spectral heat kernel agrees with the independent closed form") {
    check_close(heat_kernel_radial(1.0, 0.5), 0.07572675264356898994, 1e-7);
    check_close(heat_kernel_radial(0.5, 0.35), 0.1660563800600710948, 1e-7);
    check_close(heat_kernel_radial(2.0, 1.0), 0.01591411576891038813, 1e-7);
    check_close(heat_kernel_radial(0.1, 0.05), 1.487710645969926386, 1e-7);

    // the two routes share no code, including at zero separation
    for (double t : {0.35, 0.5, 1.0}) {
        const double a = heat_kernel_radial(0.0, t);
        const double b = heat_kernel_mckean(0.0, t);
        CHECK(std::abs(a - b) <= 1e-8 * b);
    }
}

TEST_CASE("heat kernel integrates to unit mass") {
    CHECK(std::abs(heat_kernel_mass(0.5) - 1.0) < 1e-5);
}

TEST_CASE("heat kernel decreases with distance") {
    double prev = heat_kernel_radial(0.0, 0.5);
    for (double rho = 0.3; rho <= 2.4; rho += 0.3) {
        const double cur = heat_kernel_radial(rho, 0.5);
        CHECK(cur > 0.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("heat kernel input validation") {
    CHECK_THROWS_AS(heat_kernel_radial(-0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(heat_kernel_radial(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_kernel_mckean(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_kernel_mass(0.0), std::invalid_argument);
}

TEST_CASE("resolvent kernel matches frozen values and the Legendre closed form") {
    check_close(greens_function(1.0, 0.3), 0.08495225265894618217, 1e-7);
    check_close(greens_function(0.7, 1.0), 0.08574751018601702876, 1e-7);

    // away from the frozen points the second-kind Legendre function at
    // degree sqrt(E + 1/4) - 1/2 supplies an independent closed form
    for (auto [rho, E] : std::vector<std::pair<double, double>>{
             {1.3, 0.6}, {0.9, 2.0}, {1.8, 1.0}}) {
        const double nu = std::sqrt(E + 0.25) - 0.5;
        const double closed =
            legendre_q(0.0, nu, std::cosh(rho)).value.real() / (2.0 * kPi);
        check_close(greens_function(rho, E), closed, 1e-7);
    }
}

TEST_CASE("resolvent time route agrees with the spectral route") {
    const double spectral = greens_function(1.0, 1.0);
    const double laplace = greens_function_laplace(1.0, 1.0);
    CHECK(std::abs(spectral - laplace) <= 1e-5 * spectral);
}

TEST_CASE("resolvent monotonicity") {
    CHECK(greens_function(0.5, 1.0) > greens_function(1.0, 1.0));
    CHECK(greens_function(1.0, 1.0) > greens_function(1.5, 1.0));
    CHECK(greens_function(1.0, 0.3) > greens_function(1.0, 1.0));
    CHECK(greens_function(1.0, 1.0) > greens_function(1.0, 2.5));
}

TEST_CASE("resolvent rejects spectrum-side arguments") {
    CHECK_THROWS_AS(greens_function(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(greens_function(1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(greens_function(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(greens_function_laplace(1.0, 0.0), std::domain_error);
}

TEST_CASE("composition formula anchor at half-integer order") {
    const DualValue r = composition_formula(0.5, 1.0, 1.0);
    // rhs collapses to pi^2/4 * e^-2
    check_close(r.rhs, 0.3339264267636868806, 1e-10);
    CHECK(r.rel_err < 1e-6);
}

TEST_CASE("composition formula across orders and arguments") {
    CHECK(composition_formula(1.0, 1.0, 2.0).rel_err < 1e-6);
    CHECK(composition_formula(0.5, 2.0, 3.0).rel_err < 1e-5);
    CHECK(composition_formula(1.5, 1.0, 1.0).rel_err < 1e-5);
    CHECK(composition_formula(1.5, 2.0, 3.0).rel_err < 1e-5);
}

TEST_CASE("composition formula is symmetric in its arguments") {
    const double ab = composition_formula(0.8, 1.4, 2.2).lhs;
    const double ba = composition_formula(0.8, 2.2, 1.4).lhs;
    CHECK(std::abs(ab - ba) <= 1e-10 * std::abs(ab));
}

TEST_CASE("composition formula input validation") {
    CHECK_THROWS_AS(composition_formula(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(composition_formula(5.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(composition_formula(1.0, 30.0, 21.0), std::invalid_argument);
    CHECK_THROWS_AS(composition_formula(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("kernel convolution reproduces the longer-time kernel") {
    const DualValue r = heat_semigroup_check(0.9, 0.35, 0.25);
    CHECK(r.lhs > 0.0);
    CHECK(r.rel_err < 1e-3);
}

TEST_CASE("path sampler is reproducible and respects the domain") {
    const std::vector<double> a = brownian_sampler(0.5, 0.05, 1000, 1e-3, 42);
    const std::vector<double> b = brownian_sampler(0.5, 0.05, 1000, 1e-3, 42);
    const std::vector<double> c = brownian_sampler(0.5, 0.05, 1000, 1e-3, 43);
    CHECK(a == b);
    CHECK(a != c);
    for (double tau : a) CHECK(tau > 0.0);
}

TEST_CASE("path sampler concentrates at short times") {
    const double tau0 = 1.0, t = 0.01;
    const std::vector<double> ep = brownian_sampler(tau0, t, 5000, 1e-4, 7);
    int inside = 0;
    for (double tau : ep)
        if (std::abs(tau - tau0) < 3.0 * std::sqrt(t)) ++inside;
    CHECK(inside >= static_cast<int>(0.95 * ep.size()));
}

TEST_CASE("path endpoints follow the spectral radial law") {
    const int n = 20000;
    const double d = brownian_ks_statistic(0.5, n, 1e-3, 20260818u);
    CHECK(d < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("path sampler input validation") {
    CHECK_THROWS_AS(brownian_sampler(-0.1, 0.5, 2000, 1e-4, 1), std::invalid_argument);
    CHECK_THROWS_AS(brownian_sampler(0.5, 0.0, 2000, 1e-4, 1), std::invalid_argument);
    CHECK_THROWS_AS(brownian_sampler(0.5, 0.5, 999, 1e-4, 1), std::invalid_argument);
    CHECK_THROWS_AS(brownian_sampler(0.5, 0.5, 2000, 2e-3, 1), std::invalid_argument);
    CHECK_THROWS_AS(brownian_sampler(0.5, 0.5, 2000, 0.0, 1), std::invalid_argument);
}

TEST_SUITE_END();
