#include "hypdiff/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypdiff {

Mat2C Mat2C::conj_transpose() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
}

Mat2C Mat2C::inverse() const {
    const cplx d = det();
    if (std::abs(d) < 1e-300) throw std::runtime_error("Mat2C::inverse: matrix is singular");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2C::max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
}

bool Mat2C::finite() const {
    auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(a11) && ok(a12) && ok(a21) && ok(a22);
}

Mat2C operator+(const Mat2C& a, const Mat2C& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2C operator-(const Mat2C& a, const Mat2C& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2C operator*(cplx s, const Mat2C& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

Mat2C operator*(const Mat2C& a, cplx s) { return s * a; }

Mat2C commutator(const Mat2C& a, const Mat2C& b) { return a * b - b * a; }

Mat2C expm2(const Mat2C& a) {
    if (!a.finite()) throw std::invalid_argument("expm2: non-finite input");
    const cplx alpha = 0.5 * a.trace();
    const Mat2C n = a - Mat2C::diag(alpha, alpha);
    const cplx s2 = -n.det(); // n is traceless, so n^2 = s2 * I
    const cplx s = std::sqrt(s2);

    cplx ch, shc; // cosh(s), sinh(s)/s
    if (std::abs(s) < 1e-4) {
        // 6-term even series in s2; error below 1e-28 at |s| = 1e-4.
        cplx term = 1.0, c = 1.0, sh = 1.0;
        for (int k = 1; k <= 6; ++k) {
            term *= s2 / double(2 * k * (2 * k - 1));
            c += term;
            sh += term / double(2 * k + 1);
        }
        ch = c;
        shc = sh;
    } else {
        ch = std::cosh(s);
        shc = std::sinh(s) / s;
    }
    const cplx ea = std::exp(alpha);
    Mat2C r = ea * (Mat2C::diag(ch, ch) + shc * n);
    if (!r.finite()) throw std::runtime_error("expm2: overflow in result");
    return r;
}

GeneratorSet su11_generators() {
    const cplx i{0.0, 1.0};
    GeneratorSet g;
    g.a_plus = {0.0, 0.5, 0.5, 0.0};
    g.a_minus = {0.0, 0.5 * i, -0.5 * i, 0.0};
    g.a_3 = Mat2C::diag(-0.5 * i, 0.5 * i);
    return g;
}

double mismatch(const Mat2C& a, const Mat2C& b) {
    auto dev = [](cplx x, cplx y) {
        const double scale = std::max({std::abs(x), std::abs(y), 1.0});
        return std::abs(x - y) / scale;
    };
    return std::max(std::max(dev(a.a11, b.a11), dev(a.a12, b.a12)),
                    std::max(dev(a.a21, b.a21), dev(a.a22, b.a22)));
}

} // namespace hypdiff
