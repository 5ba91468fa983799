#include "hypdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hypdiff {

namespace {

using cplx = std::complex<double>;

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

double vnorm(double v) { return std::abs(v); }
double vnorm(const cplx& v) { return std::abs(v); }

template <typename T>
struct Panel {
    double a{0.0}, b{0.0};
    T value{};
    double err{0.0};
};

template <typename T, typename F>
Panel<T> kronrod15(const F& f, double a, double b, long& evals) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    const T fc = f(centr);
    T resg = kWg[3] * fc;
    T resk = kWgk[7] * fc;
    double resabs = kWgk[7] * vnorm(fc);
    T fv[15];
    fv[7] = fc;
    evals += 15;

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk[jtw];
        const T f1 = f(centr - absc);
        const T f2 = f(centr + absc);
        fv[jtw] = f1;
        fv[14 - jtw] = f2;
        resg = resg + kWg[j] * (f1 + f2);
        resk = resk + kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (vnorm(f1) + vnorm(f2));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk[jtwm1];
        const T f1 = f(centr - absc);
        const T f2 = f(centr + absc);
        fv[jtwm1] = f1;
        fv[14 - jtwm1] = f2;
        resk = resk + kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (vnorm(f1) + vnorm(f2));
    }

    const T reskh = 0.5 * resk;
    double resasc = kWgk[7] * vnorm(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (vnorm(fv[j] - reskh) + vnorm(fv[14 - j] - reskh));

    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double err = vnorm((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(eps50 * resabs, err);

    Panel<T> p;
    p.a = a;
    p.b = b;
    p.value = hlgth * resk;
    p.err = err;
    return p;
}

template <typename T, typename F>
void adaptive(const F& f, double a, double b, const QuadratureSpec& spec,
              T& value, double& err, long& evals) {
    if (!(b > a)) {
        if (a == b) {
            value = T{};
            err = 0.0;
            return;
        }
        throw std::invalid_argument("quad: b must be >= a");
    }

    auto cmp = [](const Panel<T>& x, const Panel<T>& y) { return x.err < y.err; };
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

    // Pre-split long ranges so a single 15-point rule never spans many
    // oscillation periods unnoticed.
    const int nseg = std::clamp(int(std::ceil((b - a) / 2.0)), 1, 64);
    T total{};
    double total_err = 0.0;
    for (int i = 0; i < nseg; ++i) {
        const double pa = a + (b - a) * i / nseg;
        const double pb = a + (b - a) * (i + 1) / nseg;
        Panel<T> p = kronrod15<T>(f, pa, pb, evals);
        total = total + p.value;
        total_err += p.err;
        heap.push(p);
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * vnorm(total))) {
        if (splits >= spec.max_subdivisions)
            throw QuadratureError("quad: subdivision budget exhausted", vnorm(total), total_err);
        Panel<T> worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; accept its contribution as is
            continue;
        }
        Panel<T> left = kronrod15<T>(f, worst.a, mid, evals);
        Panel<T> right = kronrod15<T>(f, mid, worst.b, evals);
        total = total + left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    value = total;
    err = total_err;
}

template <typename T, typename F>
void tanh_sinh_impl(const F& f, double a, double b, double tol, int max_level,
                    T& value, double& err, long& evals) {
    if (!(b > a)) throw std::invalid_argument("tanh_sinh: b must be > a");
    const double r = 0.5 * (b - a);
    const double tmax = 3.8;

    // x is quantized at eps * endpoint scale; for singular integrands the
    // induced error |f'| dx ~ |f|/dist * ulp is tracked as an honest floor
    const double ulp_scale =
        std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), 1e-30});
    double rounding_sum = 0.0;

    auto node_sum = [&](double h, bool odd_only) {
        T s{};
        const int kmax = int(tmax / h);
        for (int k = -kmax; k <= kmax; ++k) {
            if (odd_only && (k % 2 == 0)) continue;
            const double t = k * h;
            const double q = 0.5 * M_PI * std::sinh(t);
            // distance to the nearer endpoint, formed without cancellation
            const double dist = r * (2.0 / (1.0 + std::exp(2.0 * std::abs(q))));
            const double x = (q <= 0.0) ? a + dist : b - dist;
            const double ch = std::cosh(q);
            const double w = r * (0.5 * M_PI) * std::cosh(t) / (ch * ch);
            if (x <= a || x >= b || w < 1e-280) continue;
            const T fx = f(x);
            s = s + w * fx;
            rounding_sum += w * vnorm(fx) * (ulp_scale / dist);
            ++evals;
        }
        return s;
    };

    double h = 1.0;
    T sum = node_sum(h, false);
    T prev = h * sum;
    T cur = prev;
    err = vnorm(cur);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        sum = sum + node_sum(h, true);
        cur = h * sum;
        err = vnorm(cur - prev);
        if (level >= 3 && err < tol * std::max(1.0, vnorm(cur))) break;
        prev = cur;
    }
    err += h * rounding_sum;
    value = cur;
}

// Doubles the cutoff until the integrand magnitude near it drops below
// abs_tol * e^-5, probing three offsets to dodge incidental zeros.
template <typename F>
double pick_cutoff(const F& f, double a, const QuadratureSpec& spec,
                   double& tail_bound, long& evals) {
    const double threshold = spec.abs_tol * std::exp(-5.0);
    double t = (spec.truncation > a) ? spec.truncation : a + 8.0;
    const double t_limit = a + 1e9;
    auto probe = [&](double x) {
        const double w = x - a;
        evals += 3;
        return std::max({vnorm(f(x)), vnorm(f(x - 0.31 * std::min(1.0, w))),
                         vnorm(f(x - 0.77 * std::min(1.0, w)))});
    };
    double mag = probe(t);
    while (mag > threshold) {
        t = a + 2.0 * (t - a);
        if (t > t_limit)
            throw QuadratureError("quad: integrand does not decay on the semi-infinite range",
                                  0.0, mag);
        mag = probe(t);
    }
    // crude tail estimate from the local decay rate; slow decay (small rate)
    // honestly inflates the bound
    const double m1 = vnorm(f(t - 1.0));
    evals += 1;
    if (mag == 0.0) {
        tail_bound = 0.0;
    } else if (m1 > mag * (1.0 + 1e-9)) {
        tail_bound = mag / std::log(m1 / mag);
    } else {
        tail_bound = mag * (t - a);
    }
    return t;
}

template <typename T, typename F>
void quad_impl(const F& f, double a, double b, const QuadratureSpec& spec,
               T& value, double& err, double& tail, long& evals) {
    if (!std::isfinite(a)) throw std::invalid_argument("quad: lower limit must be finite");
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw std::invalid_argument("quad: tolerances must be positive");

    value = T{};
    err = 0.0;
    tail = 0.0;

    double upper = b;
    if (std::isinf(b)) upper = pick_cutoff(f, a, spec, tail, evals);

    double lo = a;
    if (spec.endpoint_singularity != EndpointSingularity::none && upper > a) {
        const double cut = std::min(upper, a + 1.0);
        T head{};
        double head_err = 0.0;
        if (spec.endpoint_singularity == EndpointSingularity::inverse_sqrt) {
            auto g = [&f, a](double u) { return (2.0 * u) * f(a + u * u); };
            adaptive<T>(g, 0.0, std::sqrt(cut - a), spec, head, head_err, evals);
        } else {
            tanh_sinh_impl<T>(f, a, cut, std::min(spec.abs_tol, spec.rel_tol), 10,
                              head, head_err, evals);
        }
        value = value + head;
        err += head_err;
        lo = cut;
    }

    if (upper > lo) {
        T body{};
        double body_err = 0.0;
        adaptive<T>(f, lo, upper, spec, body, body_err, evals);
        value = value + body;
        err += body_err;
    }
    err += tail; // truncation is part of the honest error budget
}

template <typename T, typename F>
void oscillatory_impl(const F& f, double t0, double half_period, const QuadratureSpec& spec,
                      int blocks, int passes, T& value, double& err, long& evals) {
    if (!(half_period > 0.0)) throw std::invalid_argument("oscillatory tail: half_period must be > 0");
    if (blocks < passes + 2) throw std::invalid_argument("oscillatory tail: need blocks >= passes + 2");

    QuadratureSpec block_spec = spec;
    block_spec.abs_tol = spec.abs_tol * 1e-2;

    // partial sums of consecutive half-period blocks
    std::vector<T> s(size_t(blocks) + 1);
    s[0] = T{};
    double block_err = 0.0;
    T acc{};
    for (int j = 0; j < blocks; ++j) {
        T v{};
        double e = 0.0;
        adaptive<T>(f, t0 + j * half_period, t0 + (j + 1) * half_period, block_spec, v, e, evals);
        acc = acc + v;
        block_err += e;
        s[size_t(j) + 1] = acc;
    }

    // repeated averaging of the alternating partial sums
    std::vector<T> row(s.begin() + 1, s.end());
    T prev_mid = row[row.size() / 2];
    for (int p = 0; p < passes && row.size() > 1; ++p) {
        prev_mid = row[row.size() / 2];
        for (size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
    }
    value = row[row.size() / 2];
    err = vnorm(value - prev_mid) + block_err;
}

} // namespace

QuadValue quad(const RealFn& f, double a, double b, const QuadratureSpec& spec) {
    QuadValue r;
    quad_impl<double>(f, a, b, spec, r.value, r.est_error, r.tail_bound, r.evaluations);
    return r;
}

QuadValueC quad_c(const ComplexFn& f, double a, double b, const QuadratureSpec& spec) {
    QuadValueC r;
    quad_impl<cplx>(f, a, b, spec, r.value, r.est_error, r.tail_bound, r.evaluations);
    return r;
}

QuadValue tanh_sinh(const RealFn& f, double a, double b, double tol, int max_level) {
    QuadValue r;
    tanh_sinh_impl<double>(f, a, b, tol, max_level, r.value, r.est_error, r.evaluations);
    return r;
}

QuadValueC tanh_sinh_c(const ComplexFn& f, double a, double b, double tol, int max_level) {
    QuadValueC r;
    tanh_sinh_impl<cplx>(f, a, b, tol, max_level, r.value, r.est_error, r.evaluations);
    return r;
}

QuadValue quad_power_singularity(const RealFn& smooth, double a, double cut,
                                 double alpha, const QuadratureSpec& spec) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("quad_power_singularity: alpha must lie in (0, 1)");
    if (!(cut > a)) throw std::invalid_argument("quad_power_singularity: cut must exceed a");
    const double beta = 1.0 - alpha;
    const double vmax = std::pow(cut - a, beta);
    auto g = [&smooth, a, beta](double v) { return smooth(a + std::pow(v, 1.0 / beta)); };
    QuadValue r;
    adaptive<double>(g, 0.0, vmax, spec, r.value, r.est_error, r.evaluations);
    r.value /= beta;
    r.est_error /= beta;
    return r;
}

QuadValue quad_oscillatory_tail(const RealFn& f, double t0, double half_period,
                                const QuadratureSpec& spec, int blocks, int passes) {
    QuadValue r;
    oscillatory_impl<double>(f, t0, half_period, spec, blocks, passes,
                             r.value, r.est_error, r.evaluations);
    return r;
}

QuadValueC quad_oscillatory_tail_c(const ComplexFn& f, double t0, double half_period,
                                 const QuadratureSpec& spec, int blocks, int passes) {
    QuadValueC r;
    oscillatory_impl<cplx>(f, t0, half_period, spec, blocks, passes,
                           r.value, r.est_error, r.evaluations);
    return r;
}

} // namespace hypdiff
