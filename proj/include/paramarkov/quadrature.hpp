#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "paramarkov/errors.hpp"

namespace paramarkov {

// Adaptive Gauss-Kronrod (G7-K15) on finite intervals. Value type may be
// double or std::complex<double>; the error estimate is |K15 - G7|.
namespace quad_detail {

// QUADPACK dqk15 constants.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double norm_of(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>) return std::abs(v);
    else return std::abs(static_cast<double>(v));
}

template <class F, class T = std::invoke_result_t<F, double>>
void kronrod_15(F&& f, double a, double b, T& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T res_g = fc * kWg[3];
    T res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        T f1 = f(c - dx);
        T f2 = f(c + dx);
        res_k += (f1 + f2) * kWgk[j];
        if (j % 2 == 1) res_g += (f1 + f2) * kWg[j / 2];
    }
    value = res_k * h;
    err = norm_of<T>((res_k - res_g) * h);
}

} // namespace quad_detail

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
    bool throw_on_failure = true;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
};

template <class F, class T = std::invoke_result_t<F, double>>
QuadResult<T> integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    struct Piece {
        double a, b, err;
        T val;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    std::priority_queue<Piece> heap;
    T total{};
    double total_err = 0.0;
    {
        Piece p{a, b, 0.0, T{}};
        quad_detail::kronrod_15(f, a, b, p.val, p.err);
        total = p.val;
        total_err = p.err;
        heap.push(p);
    }
    int n = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * quad_detail::norm_of<T>(total)) &&
           n < opt.max_intervals) {
        Piece worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Piece left{worst.a, m, 0.0, T{}};
        Piece right{m, worst.b, 0.0, T{}};
        quad_detail::kronrod_15(f, left.a, left.b, left.val, left.err);
        quad_detail::kronrod_15(f, right.a, right.b, right.val, right.err);
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        n += 1;
        if (m <= worst.a || m >= worst.b) break; // interval at rounding limit
    }
    QuadResult<T> r;
    r.value = total;
    r.error = total_err;
    r.converged =
        total_err <= std::max(opt.abs_tol, opt.rel_tol * quad_detail::norm_of<T>(total));
    if (!r.converged && opt.throw_on_failure)
        throw accuracy_error("adaptive Gauss-Kronrod quadrature failed to converge");
    return r;
}

// Integrate over consecutive panels [p0,p1],[p1,p2],... Useful when the
// integrand has known breakpoints (spikes, cliffs).
template <class F, class T = std::invoke_result_t<F, double>>
QuadResult<T> integrate_panels(F&& f, std::span<const double> pts, const QuadOptions& opt = {}) {
    QuadResult<T> acc;
    acc.converged = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        QuadOptions local = opt;
        local.throw_on_failure = false;
        auto r = integrate(f, pts[i], pts[i + 1], local);
        acc.value += r.value;
        acc.error += r.error;
        acc.converged = acc.converged && r.converged;
    }
    if (!acc.converged && opt.throw_on_failure)
        throw accuracy_error("panel quadrature failed to converge");
    return acc;
}

} // namespace paramarkov
