#include "hypdiff/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hypdiff {

namespace {

const cplx kI{0.0, 1.0};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

} // namespace

Mat2C euler_rotation(double angle) {
    require_finite(angle, "angle");
    return Mat2C::diag(std::exp(kI * (0.5 * angle)), std::exp(-kI * (0.5 * angle)));
}

Mat2C euler_boost(double tau) {
    require_finite(tau, "tau");
    const double ch = std::cosh(0.5 * tau);
    const double sh = std::sinh(0.5 * tau);
    return Mat2C{ch, kI * sh, -kI * sh, ch};
}

Mat2C euler_matrix(double tau, double phi, double psi) {
    return euler_rotation(phi) * euler_boost(tau) * euler_rotation(psi);
}

HypState state_from_euler(double tau, double phi, double psi, std::array<cplx, 2> initial) {
    require_finite(tau, "tau");
    require_finite(phi, "phi");
    require_finite(psi, "psi");
    const Mat2C m = euler_matrix(tau, phi, psi);
    HypState s;
    s.c1 = m.a11 * initial[0] + m.a12 * initial[1];
    s.c2 = m.a21 * initial[0] + m.a22 * initial[1];
    s.tau = tau;
    s.phi = phi;
    s.psi = psi;
    s.initial = initial;
    return s;
}

std::array<cplx, 2> bar_state(const HypState& s) {
    const Mat2C m = euler_matrix(s.tau, -s.phi, -s.psi);
    return {m.a11 * s.initial[0] + m.a12 * s.initial[1],
            m.a21 * s.initial[0] + m.a22 * s.initial[1]};
}

cplx pairing(const std::array<cplx, 2>& bra, const std::array<cplx, 2>& ket) {
    return bra[0] * ket[0] + bra[1] * ket[1];
}

cplx pairing(const std::array<cplx, 2>& bra, const Mat2C& x, const std::array<cplx, 2>& ket) {
    return pairing(bra, {x.a11 * ket[0] + x.a12 * ket[1], x.a21 * ket[0] + x.a22 * ket[1]});
}

Mat2C projector(const HypState& s) {
    const std::array<cplx, 2> bra = bar_state(s);
    return Mat2C{s.c1 * bra[0], s.c1 * bra[1], s.c2 * bra[0], s.c2 * bra[1]};
}

bool MetricTensor::degenerate_axis(int i, double tol) const {
    for (int j = 0; j < dim; ++j) {
        if (std::abs(at(i, j)) > tol || std::abs(at(j, i)) > tol) return false;
    }
    return true;
}

double MetricTensor::det_nondegenerate(double tol) const {
    std::vector<int> keep;
    for (int i = 0; i < dim; ++i) {
        if (!degenerate_axis(i, tol)) keep.push_back(i);
    }
    const int n = int(keep.size());
    if (n == 0) return 1.0;
    std::vector<double> m(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[size_t(i) * n + j] = at(keep[i], keep[j]);
    // Gaussian elimination with partial pivoting.
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[size_t(r) * n + c]) > std::abs(m[size_t(p) * n + c])) p = r;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m[size_t(p) * n + j], m[size_t(c) * n + j]);
            det = -det;
        }
        const double piv = m[size_t(c) * n + c];
        if (piv == 0.0) return 0.0;
        det *= piv;
        for (int r = c + 1; r < n; ++r) {
            const double f = m[size_t(r) * n + c] / piv;
            for (int j = c; j < n; ++j) m[size_t(r) * n + j] -= f * m[size_t(c) * n + j];
        }
    }
    return det;
}

double MetricTensor::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) worst = std::max(worst, std::abs(at(i, j) - at(j, i)));
    return worst;
}

namespace {

std::array<cplx, 2> amplitudes(double tau, double phi, double psi) {
    const HypState s = state_from_euler(tau, phi, psi);
    return {s.c1, s.c2};
}

// d/dalpha of the amplitudes, central difference at (tau, phi, psi).
std::array<cplx, 2> amp_derivative(double tau, double phi, double psi, int alpha, double h) {
    double p[3] = {tau, phi, psi};
    double m[3] = {tau, phi, psi};
    p[alpha] += h;
    m[alpha] -= h;
    const auto up = amplitudes(p[0], p[1], p[2]);
    const auto dn = amplitudes(m[0], m[1], m[2]);
    return {(up[0] - dn[0]) / (2.0 * h), (up[1] - dn[1]) / (2.0 * h)};
}

} // namespace

OverlapTensor fubini_study_tensor(double tau, double phi, double psi, double h) {
    if (!(tau > 0.0)) throw std::domain_error("fubini_study_tensor requires tau > 0");
    if (!(h >= 1e-6 && h <= 1e-3)) throw std::domain_error("step h must lie in [1e-6, 1e-3]");
    require_finite(phi, "phi");
    require_finite(psi, "psi");

    const auto ket = amplitudes(tau, phi, psi);
    const auto bra = bar_state(state_from_euler(tau, phi, psi));

    std::array<std::array<cplx, 2>, 3> dket;
    std::array<std::array<cplx, 2>, 3> dbra;
    for (int a = 0; a < 3; ++a) {
        dket[a] = amp_derivative(tau, phi, psi, a, h);
        // The bra of a derivative state is that derivative re-evaluated at the
        // angle-flipped point, laid out as a row.
        dbra[a] = amp_derivative(tau, -phi, -psi, a, h);
    }

    OverlapTensor out;
    for (int a = 0; a < 3; ++a) {
        const cplx da_psi = pairing(dbra[a], ket);
        for (int b = 0; b < 3; ++b) {
            out.f[a][b] = pairing(dbra[a], dket[b]) - da_psi * pairing(bra, dket[b]);
        }
    }
    return out;
}

MetricTensor fubini_study_metric(double tau, double phi, double psi, double h) {
    const OverlapTensor f = fubini_study_tensor(tau, phi, psi, h);
    MetricTensor g;
    g.dim = 3;
    g.g.assign(9, 0.0);
    g.coords = {"tau", "phi", "psi"};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) g.at(a, b) = f.f[a][b].real();
    return g;
}

LaplaceBeltramiCoeffs laplace_beltrami_coeffs(const MetricField& field, int dim, double h) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");

    auto diag_at = [field, dim](const std::vector<double>& x) {
        if (int(x.size()) != dim) throw std::invalid_argument("coordinate dimension mismatch");
        const MetricTensor g = field(x);
        if (g.dim != dim) throw std::invalid_argument("metric field dimension mismatch");
        std::vector<double> d(static_cast<size_t>(dim), 0.0);
        double scale = 0.0;
        for (int i = 0; i < dim; ++i) scale = std::max(scale, std::abs(g.at(i, i)));
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                if (i != j && std::abs(g.at(i, j)) > 1e-12 * std::max(scale, 1.0))
                    throw std::invalid_argument("laplace_beltrami_coeffs requires a diagonal metric");
            }
            if (g.at(i, i) == 0.0)
                throw std::invalid_argument("metric has a vanishing diagonal entry");
            d[size_t(i)] = g.at(i, i);
        }
        return d;
    };

    auto sqrt_abs_det = [diag_at](const std::vector<double>& x) {
        double det = 1.0;
        for (double v : diag_at(x)) det *= v;
        return std::sqrt(std::abs(det));
    };

    LaplaceBeltramiCoeffs out;
    out.dim = dim;
    for (int i = 0; i < dim; ++i) {
        out.A.push_back([diag_at, i](const std::vector<double>& x) {
            return 1.0 / diag_at(x)[size_t(i)];
        });
        out.B.push_back([diag_at, sqrt_abs_det, i, h](const std::vector<double>& x) {
            auto shifted = [&x, i](double dx) {
                std::vector<double> y = x;
                y[size_t(i)] += dx;
                return y;
            };
            auto s = [diag_at, sqrt_abs_det, i](const std::vector<double>& y) {
                return sqrt_abs_det(y) / diag_at(y)[size_t(i)];
            };
            return (s(shifted(h)) - s(shifted(-h))) / (2.0 * h * sqrt_abs_det(x));
        });
    }
    out.C = [](const std::vector<double>&) { return 0.0; };
    return out;
}

MetricField hyperbolic_plane_metric() {
    return [](const std::vector<double>& x) {
        if (x.size() != 2) throw std::invalid_argument("hyperbolic_plane_metric expects (tau, phi)");
        if (!(x[0] > 0.0)) throw std::domain_error("hyperbolic_plane_metric requires tau > 0");
        MetricTensor g;
        g.dim = 2;
        g.g = {-1.0, 0.0, 0.0, std::sinh(x[0]) * std::sinh(x[0])};
        g.coords = {"tau", "phi"};
        return g;
    };
}

MetricField pseudosphere_metric() {
    return [](const std::vector<double>& x) {
        if (x.size() != 3) throw std::invalid_argument("pseudosphere_metric expects (r, tau, phi)");
        if (!(x[0] > 0.0) || !(x[1] > 0.0))
            throw std::domain_error("pseudosphere_metric requires r > 0 and tau > 0");
        const double r2 = x[0] * x[0];
        const double sh = std::sinh(x[1]);
        MetricTensor g;
        g.dim = 3;
        g.g = {1.0, 0.0, 0.0, 0.0, -r2, 0.0, 0.0, 0.0, -r2 * sh * sh};
        g.coords = {"r", "tau", "phi"};
        return g;
    };
}

MetricField euclidean_metric(int dim) {
    return [dim](const std::vector<double>& x) {
        if (int(x.size()) != dim) throw std::invalid_argument("euclidean_metric dimension mismatch");
        MetricTensor g;
        g.dim = dim;
        g.g.assign(size_t(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i) g.at(i, i) = 1.0;
        for (int i = 0; i < dim; ++i) g.coords.push_back("x" + std::to_string(i));
        return g;
    };
}

std::function<double(double)> liouville_normal_form(double k, double xi) {
    require_finite(k, "k");
    require_finite(xi, "xi");
    return [k, xi](double tau) {
        if (!(tau > 0.0)) throw std::domain_error("normal-form potential requires tau > 0");
        const double sh = std::sinh(tau);
        return (0.25 - k * k) / (sh * sh) + xi * xi;
    };
}

} // namespace hypdiff
