#include "doctest.h"

#include "hypdiff/geometry.hpp"

#include <cmath>
#include <complex>

using namespace hypdiff;

namespace {

const cplx I{0.0, 1.0};

// Closed-form amplitudes of the decomposed state, written out directly so the
// matrix-product path is checked against an independent expression.
std::array<cplx, 2> closed_form_state(double tau, double phi, double psi) {
    const cplx c1 = std::cosh(0.5 * tau) * std::exp(I * (0.5 * (phi + psi)));
    const cplx c2 = -I * std::sinh(0.5 * tau) * std::exp(-I * (0.5 * (phi - psi)));
    return {c1, c2};
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("euler product reproduces the closed-form amplitudes") {
    const double taus[] = {0.0, 0.3, 1.0, 2.4};
    const double angs[] = {-1.1, 0.0, 0.7, 2.9};
    for (double tau : taus) {
        for (double phi : angs) {
            for (double psi : angs) {
                const HypState s = state_from_euler(tau, phi, psi);
                const auto ref = closed_form_state(tau, phi, psi);
                CHECK(std::abs(s.c1 - ref[0]) < 1e-14);
                CHECK(std::abs(s.c2 - ref[1]) < 1e-14);
            }
        }
    }
}

TEST_CASE("euler factors are unimodular and invert by angle flip") {
    const double tau = 1.3, phi = 0.4, psi = -0.9;
    const Mat2C u = euler_matrix(tau, phi, psi);
    CHECK(std::abs(u.det() - cplx{1.0}) < 1e-14);

    // transpose at flipped angles is the inverse
    const Mat2C v = euler_matrix(tau, -phi, -psi).transpose();
    CHECK(mismatch(v * u, Mat2C::identity()) < 1e-14);
    CHECK(mismatch(u * v, Mat2C::identity()) < 1e-14);
}

TEST_CASE("bilinear pairing normalizes built states") {
    for (double tau : {0.0, 0.8, 2.0}) {
        const HypState s = state_from_euler(tau, 0.5, -1.2);
        const cplx n = pairing(bar_state(s), {s.c1, s.c2});
        CHECK(std::abs(n - cplx{1.0}) < 1e-13);
    }

    // bilinearity: scaling the initial vector by i scales the norm by i^2
    const HypState t = state_from_euler(0.9, 0.2, 0.1, {I, cplx{0.0}});
    const cplx n = pairing(bar_state(t), {t.c1, t.c2});
    CHECK(std::abs(n + cplx{1.0}) < 1e-13);
}

TEST_CASE("projector has unit trace and is idempotent") {
    const HypState s = state_from_euler(1.1, -0.6, 0.3);
    const Mat2C p = projector(s);
    CHECK(std::abs(p.trace() - cplx{1.0}) < 1e-13);
    CHECK(mismatch(p * p, p) < 1e-13);
}

TEST_CASE("overlap tensor matches the closed form in the rapidity chart") {
    // F = (1/4) [[-1, i sinh tau, 0], [i sinh tau, sinh^2 tau, 0], [0,0,0]],
    // independent of phi and psi.
    const double phis[] = {0.0, 0.8};
    const double psis[] = {0.0, -1.3};
    for (double tau : {0.5, 1.0, 2.0}) {
        for (double phi : phis) {
            for (double psi : psis) {
                const OverlapTensor f = fubini_study_tensor(tau, phi, psi, 1e-5);
                const double sh = std::sinh(tau);
                CHECK(std::abs(f.f[0][0] - cplx{-0.25}) < 1e-8);
                CHECK(std::abs(f.f[0][1] - I * (0.25 * sh)) < 1e-8);
                CHECK(std::abs(f.f[1][0] - I * (0.25 * sh)) < 1e-8);
                CHECK(std::abs(f.f[1][1] - cplx{0.25 * sh * sh}) < 1e-7);
                for (int a = 0; a < 3; ++a) {
                    CHECK(std::abs(f.f[a][2]) < 1e-8);
                    CHECK(std::abs(f.f[2][a]) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("metric is the real part, with a degenerate third axis") {
    const MetricTensor g = fubini_study_metric(1.0, 0.3, -0.2, 1e-5);
    REQUIRE(g.dim == 3);
    const double sh = std::sinh(1.0);
    CHECK(std::abs(g.at(0, 0) + 0.25) < 1e-8);
    CHECK(std::abs(g.at(1, 1) - 0.25 * sh * sh) < 1e-7);
    CHECK(std::abs(g.at(0, 1)) < 1e-8); // off-diagonal part is purely imaginary
    CHECK(g.max_asymmetry() < 1e-9);
    CHECK(g.degenerate_axis(2, 1e-8));
    CHECK(!g.degenerate_axis(0, 1e-8));
    // restricted determinant: (-1/4) * (sinh^2 tau / 4)
    CHECK(std::abs(g.det_nondegenerate(1e-8) + 0.0625 * sh * sh) < 1e-7);
}

TEST_CASE("tensor rejects degenerate points and bad steps") {
    CHECK_THROWS_AS(fubini_study_tensor(0.0, 0.0, 0.0, 1e-5), std::domain_error);
    CHECK_THROWS_AS(fubini_study_tensor(-1.0, 0.0, 0.0, 1e-5), std::domain_error);
    CHECK_THROWS_AS(fubini_study_tensor(1.0, 0.0, 0.0, 1e-7), std::domain_error);
    CHECK_THROWS_AS(fubini_study_tensor(1.0, 0.0, 0.0, 1e-2), std::domain_error);
}

TEST_CASE("flat metric gives pure second derivatives") {
    const auto lb = laplace_beltrami_coeffs(euclidean_metric(3), 3);
    const std::vector<double> x{0.4, -1.0, 2.2};
    for (int i = 0; i < 3; ++i) {
        CHECK(lb.A[size_t(i)](x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(lb.B[size_t(i)](x)) < 1e-9);
    }
    CHECK(lb.C(x) == 0.0);
}

TEST_CASE("hyperbolic plane coefficients") {
    const auto lb = laplace_beltrami_coeffs(hyperbolic_plane_metric(), 2);
    for (double tau : {0.7, 1.3}) {
        const std::vector<double> x{tau, 0.4};
        CHECK(std::abs(lb.A[0](x) + 1.0) < 1e-12);
        CHECK(std::abs(lb.B[0](x) + std::cosh(tau) / std::sinh(tau)) < 1e-8);
        CHECK(std::abs(lb.A[1](x) - 1.0 / (std::sinh(tau) * std::sinh(tau))) < 1e-12);
        CHECK(std::abs(lb.B[1](x)) < 1e-9);
    }
}

TEST_CASE("pseudosphere coefficients and their relation to the plane chart") {
    const auto lb = laplace_beltrami_coeffs(pseudosphere_metric(), 3);
    const double cases[][2] = {{1.0, 0.9}, {2.0, 1.4}};
    for (const auto& c : cases) {
        const double r = c[0], tau = c[1];
        const std::vector<double> x{r, tau, -0.3};
        const double coth = std::cosh(tau) / std::sinh(tau);
        const double sh2 = std::sinh(tau) * std::sinh(tau);
        CHECK(std::abs(lb.A[0](x) - 1.0) < 1e-12);
        CHECK(std::abs(lb.B[0](x) - 2.0 / r) < 1e-8);
        CHECK(std::abs(lb.A[1](x) + 1.0 / (r * r)) < 1e-12);
        CHECK(std::abs(lb.B[1](x) + coth / (r * r)) < 1e-8);
        CHECK(std::abs(lb.A[2](x) + 1.0 / (r * r * sh2)) < 1e-12);
        CHECK(std::abs(lb.B[2](x)) < 1e-9);
    }

    // at r = 1 the tau coefficients agree with the two-coordinate chart while
    // the angular second-derivative coefficient flips sign
    const auto plane = laplace_beltrami_coeffs(hyperbolic_plane_metric(), 2);
    const std::vector<double> x3{1.0, 0.9, 0.2};
    const std::vector<double> x2{0.9, 0.2};
    CHECK(std::abs(lb.A[1](x3) - plane.A[0](x2)) < 1e-12);
    CHECK(std::abs(lb.B[1](x3) - plane.B[0](x2)) < 1e-7);
    CHECK(std::abs(lb.A[2](x3) + plane.A[1](x2)) < 1e-12);
}

TEST_CASE("non-diagonal metric is rejected") {
    MetricField skew = [](const std::vector<double>&) {
        MetricTensor g;
        g.dim = 2;
        g.g = {1.0, 0.5, 0.5, 1.0};
        g.coords = {"x0", "x1"};
        return g;
    };
    const auto lb = laplace_beltrami_coeffs(skew, 2);
    CHECK_THROWS_AS(lb.A[0]({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("normal-form potential") {
    const auto q = liouville_normal_form(0.5, 1.2);
    // k = 1/2 cancels the centrifugal term entirely
    CHECK(q(0.7) == doctest::Approx(1.44).epsilon(1e-12));

    const auto q2 = liouville_normal_form(2.0, 0.3);
    const double sh = std::sinh(1.1);
    CHECK(q2(1.1) == doctest::Approx((0.25 - 4.0) / (sh * sh) + 0.09).epsilon(1e-12));
    CHECK_THROWS_AS(q2(0.0), std::domain_error);
}

} // TEST_SUITE
