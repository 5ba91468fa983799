#include "hypdiff/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypdiff {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw std::invalid_argument("CubicSpline: need >= 3 matching knots");
    for (size_t i = 0; i + 1 < n; ++i) {
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("CubicSpline: abscissae must increase");
        if (!std::isfinite(y_[i]) || !std::isfinite(y_[i + 1]))
            throw std::invalid_argument("CubicSpline: non-finite ordinate");
    }

    // Thomas solve of the natural-spline tridiagonal system for m_.
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
        const double rhs =
            6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
        c[i] = h1 / diag;
        d[i] = (rhs - h0 * d[i - 1]) / diag;
    }
    for (size_t i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
}

double CubicSpline::operator()(double t) const {
    const double span = x_.back() - x_.front();
    if (t < x_.front() || t > x_.back()) {
        if (t >= x_.front() - 1e-9 * span && t <= x_.back() + 1e-9 * span)
            t = std::clamp(t, x_.front(), x_.back());
        else
            throw std::domain_error("CubicSpline: evaluation outside knot range");
    }
    const size_t j =
        std::upper_bound(x_.begin(), x_.end() - 1, t) - x_.begin() - 1;
    const size_t i = std::min(j, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    const double u = (x_[i + 1] - t) / h, v = (t - x_[i]) / h;
    return u * y_[i] + v * y_[i + 1] +
           ((u * u * u - u) * m_[i] + (v * v * v - v) * m_[i + 1]) * h * h / 6.0;
}

} // namespace hypdiff
