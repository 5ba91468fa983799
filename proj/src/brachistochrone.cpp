#include "hypdiff/brachistochrone.hpp"

#include <cmath>
#include <stdexcept>

namespace hypdiff {

namespace {

const cplx kI{0.0, 1.0};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

} // namespace

Mat2C evolution_spherical(cplx t, cplx s, double omega, bool keep_phase) {
    require_finite(omega, "omega");
    const cplx arg = omega * (t - s);
    const cplx c = std::cos(arg);
    const cplx sn = std::sin(arg);
    Mat2C u{c, sn, -sn, c};
    if (keep_phase) u = std::exp(kI * arg) * u;
    if (!u.finite()) throw std::runtime_error("evolution_spherical overflow");
    return u;
}

Mat2C evolution_spherical(double t, double s, double omega, bool keep_phase) {
    require_finite(t, "t");
    require_finite(s, "s");
    return evolution_spherical(cplx{t}, cplx{s}, omega, keep_phase);
}

Mat2C continue_to_hyperbolic(double t, double s, double omega) {
    require_finite(t, "t");
    require_finite(s, "s");
    require_finite(omega, "omega");
    const double u = omega * (t - s);
    const double ch = std::cosh(u);
    const double sh = std::sinh(u);
    const double damp = std::exp(-u);
    Mat2C m{damp * ch, kI * (damp * sh), -kI * (damp * sh), damp * ch};
    if (!m.finite()) throw std::runtime_error("continue_to_hyperbolic overflow");
    return m;
}

Mat2C evolution_generator_at(cplx sigma, double omega, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");
    const Mat2C up = evolution_spherical(sigma + h, cplx{0.0}, omega);
    const Mat2C dn = evolution_spherical(sigma - h, cplx{0.0}, omega);
    const Mat2C du = (1.0 / (2.0 * h)) * (up + (-1.0) * dn);
    return kI * (du * evolution_spherical(sigma, cplx{0.0}, omega).inverse());
}

Mat2C evolution_generator(double omega) {
    require_finite(omega, "omega");
    return Mat2C{-omega, kI * omega, -kI * omega, -omega};
}

Mat2C continuation_exponent(double t, double omega, int panels) {
    require_finite(t, "t");
    require_finite(omega, "omega");
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("panels must be even and >= 2");

    // Composite Simpson along sigma = i*tau, tau in [0, t]; d(sigma) = i dtau.
    const double dtau = t / panels;
    Mat2C acc = Mat2C::zero();
    for (int j = 0; j <= panels; ++j) {
        const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        const cplx sigma = kI * (j * dtau);
        acc = acc + w * evolution_generator_at(sigma, omega);
    }
    const cplx dsigma = kI * (dtau / 3.0);
    return (-kI * dsigma) * acc;
}

Mat2C w_eigenmatrix(cplx u, double omega) {
    require_finite(omega, "omega");
    const cplx e = std::exp(2.0 * kI * omega * u);
    const double r = 1.0 / std::sqrt(2.0);
    Mat2C m{r * e, r * kI, r * kI * e, cplx{r}};
    if (!m.finite()) throw std::runtime_error("w_eigenmatrix overflow");
    return m;
}

Mat2C hamiltonian_hyperbolic(double t, double omega, double R) {
    require_finite(t, "t");
    require_finite(omega, "omega");
    require_finite(R, "R");
    const double ch = std::cosh(2.0 * omega * t);
    const double sh = std::sinh(2.0 * omega * t);
    Mat2C m{-R * ch, kI * (R * sh), kI * (R * sh), R * ch};
    if (!m.finite()) throw std::runtime_error("hamiltonian_hyperbolic overflow");
    return m;
}

Mat2C constraint_operator(double omega) {
    require_finite(omega, "omega");
    return Mat2C{0.0, kI * omega, -kI * omega, 0.0};
}

Trajectory integrate_brachistochrone(const Mat2C& H0, const Mat2C& F0,
                                     double t_end, int steps) {
    require_finite(t_end, "t_end");
    if (steps < 16) throw std::invalid_argument("integrate_brachistochrone needs steps >= 16");
    if (!H0.finite() || !F0.finite())
        throw std::invalid_argument("integrate_brachistochrone: non-finite input");

    auto rhs = [&F0](const Mat2C& h) { return commutator(F0, h); };

    const double dt = t_end / steps;
    const cplx e0 = 0.5 * (H0 * H0).trace();
    const cplx o0 = (H0 * F0).trace();
    const double e_scale = std::max(std::abs(e0), 1.0);

    Trajectory out;
    out.points.reserve(size_t(steps) + 1);
    out.points.push_back({0.0, H0});

    Mat2C h = H0;
    for (int k = 0; k < steps; ++k) {
        const Mat2C k1 = rhs(h);
        const Mat2C k2 = rhs(h + (0.5 * dt) * k1);
        const Mat2C k3 = rhs(h + (0.5 * dt) * k2);
        const Mat2C k4 = rhs(h + dt * k3);
        h = h + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!h.finite()) throw std::runtime_error("integrate_brachistochrone overflow");

        const double t = (k + 1) * dt;
        out.points.push_back({t, h});
        out.energy_drift = std::max(out.energy_drift,
                                    std::abs(0.5 * (h * h).trace() - e0) / e_scale);
        out.orthogonality_drift = std::max(out.orthogonality_drift,
                                           std::abs((h * F0).trace() - o0));
    }
    out.drift_warning = out.energy_drift > 1e-8;
    return out;
}

DispersionResult energy_dispersion(const Mat2C& H, const HypState& psi) {
    if (!H.finite()) throw std::invalid_argument("energy_dispersion: non-finite operator");
    const std::array<cplx, 2> ket{psi.c1, psi.c2};
    const std::array<cplx, 2> bra = bar_state(psi);
    const cplx norm = pairing(bra, ket);
    if (std::abs(norm) < 1e-12)
        throw std::domain_error("energy_dispersion: state has zero indefinite norm");

    DispersionResult r;
    r.mean = pairing(bra, H, ket) / norm;
    r.second_moment = pairing(bra, H * H, ket) / norm;
    const cplx radicand = r.second_moment - r.mean * r.mean;
    const double mag = std::abs(radicand);
    if (radicand.real() < 0.0 || std::abs(radicand.imag()) > 1e-10 * std::max(mag, 1.0)) {
        r.negative_radicand = true;
        r.value = std::sqrt(mag);
    } else {
        r.value = std::sqrt(std::max(radicand.real(), 0.0));
    }
    return r;
}

} // namespace hypdiff
