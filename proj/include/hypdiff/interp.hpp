#pragma once

#include <vector>

namespace hypdiff {

// Natural cubic spline through strictly increasing abscissae. Evaluation
// outside the knot range throws; a 1e-9-relative fuzz at the ends is clamped
// so quadrature nodes at the boundary survive rounding.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

  private:
    std::vector<double> x_, y_, m_; // m_ holds second derivatives at knots
};

} // namespace hypdiff
