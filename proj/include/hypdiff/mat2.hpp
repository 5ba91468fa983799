#pragma once

#include <complex>

namespace hypdiff {

using cplx = std::complex<double>;

// 2x2 complex matrix, value type. Carries group elements, Hamiltonians and
// constraint operators throughout the library.
struct Mat2C {
    cplx a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};

    static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2C zero() { return {}; }
    static Mat2C diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

    cplx trace() const { return a11 + a22; }
    cplx det() const { return a11 * a22 - a12 * a21; }
    Mat2C transpose() const { return {a11, a21, a12, a22}; }
    Mat2C conj_transpose() const;
    Mat2C inverse() const; // throws on |det| below 1e-300
    double max_abs() const;
    bool finite() const;
};

Mat2C operator+(const Mat2C& a, const Mat2C& b);
Mat2C operator-(const Mat2C& a, const Mat2C& b);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, const Mat2C& a);
Mat2C operator*(const Mat2C& a, cplx s);

// AB - BA.
Mat2C commutator(const Mat2C& a, const Mat2C& b);

// Closed-form matrix exponential: A = alpha*I + N with tr N = 0, so
// N^2 = -det(N)*I and exp(A) = e^alpha (cosh(s) I + sinhc(s) N), s^2 = -det(N).
// The s -> 0 limit uses a short series; see mat2.cpp.
Mat2C expm2(const Mat2C& a);

struct GeneratorSet {
    Mat2C a_plus;
    Mat2C a_minus;
    Mat2C a_3;
};

// The su(1,1) triple satisfying [a+,a-] = a3 and [a+-, a3] = +-a-+ exactly.
GeneratorSet su11_generators();

// Max entrywise deviation, absolute below magnitude 1 and relative above.
// All matrix comparisons in the library go through this.
double mismatch(const Mat2C& a, const Mat2C& b);

} // namespace hypdiff
