#include "paramarkov/ml_special.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "paramarkov/quadrature.hpp"

namespace paramarkov {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kTermCap = 10000;

void check_nu(double nu) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::domain_error("nu must lie in (0,1], got " + std::to_string(nu));
}

void check_finite(double z) {
    if (!std::isfinite(z)) throw std::domain_error("argument must be finite");
}

// Neumaier-compensated accumulator.
struct Kahan {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(long double x) {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

struct KahanC {
    Kahan re, im;
    void add(std::complex<long double> x) {
        re.add(x.real());
        im.add(x.imag());
    }
    std::complex<long double> value() const { return {re.value(), im.value()}; }
};

// Generic truncated series sum_k coeff_k(z). CoeffFn yields the k-th term;
// stops once three consecutive terms drop below 1e-16 * |sum|.
template <class Term, class Acc, class Scalar>
Scalar sum_series(Term&& term, Acc& acc, long double& peak, const char* what) {
    int small_run = 0;
    for (int k = 0; k < kTermCap; ++k) {
        Scalar t = term(k);
        acc.add(t);
        long double mag = std::abs(std::complex<long double>(t));
        peak = std::max(peak, mag);
        long double cur = std::abs(std::complex<long double>(acc.value()));
        if (mag < 1e-16L * std::max(cur, (long double)1e-290)) {
            if (++small_run >= 3) return Scalar(acc.value());
        } else {
            small_run = 0;
        }
    }
    throw accuracy_error(std::string(what) + ": series term cap reached without convergence");
}

// --- series on the real axis ------------------------------------------------

// |z| <= series_switch(nu) (alternating case) or any positive z that stays
// within double range. Terms iterate z^k directly while representable, then
// fall back to log-space (positive z only).
double ml_series_real(double nu, double z) {
    Kahan acc;
    long double peak = 0.0L;
    long double zp = 1.0L;
    bool direct = true;
    auto term = [&](int k) -> long double {
        long double t;
        double a = 1.0 + nu * k;
        if (direct && a <= 170.0 && std::fabs((long double)k * std::log(std::fabs((long double)z))) < 11000.0L) {
            t = zp / std::tgammal((long double)a);
            zp *= (long double)z;
        } else {
            if (z < 0.0) throw accuracy_error("ml_one: series regime exceeded for negative argument");
            direct = false;
            long double lg = std::lgammal((long double)a);
            t = std::expl((long double)k * std::logl((long double)z) - lg);
        }
        return t;
    };
    double v = (double)sum_series<decltype(term)&, Kahan, long double>(term, acc, peak, "ml_one");
    if (!std::isfinite(v)) throw accuracy_error("ml_one: result overflows double range");
    return v;
}

std::complex<double> ml_series_cplx(double nu, std::complex<double> z) {
    using CL = std::complex<long double>;
    KahanC acc;
    long double peak = 0.0L;
    CL zl(z.real(), z.imag());
    CL zp(1.0L, 0.0L);
    auto term = [&](int k) -> CL {
        double a = 1.0 + nu * k;
        if (a > 170.0) throw accuracy_error("ml_one: complex argument outside supported domain");
        CL t = zp / (CL)std::tgammal((long double)a);
        zp *= zl;
        return t;
    };
    CL v = sum_series<decltype(term)&, KahanC, CL>(term, acc, peak, "ml_one");
    long double mag = std::abs(v);
    if (peak * 1e-18L > 1e-9L * std::max(mag, (long double)1e-30L))
        throw accuracy_error("ml_one: cancellation too severe for complex argument");
    return {(double)v.real(), (double)v.imag()};
}

// --- integral representation on the negative real axis ----------------------
//
// With t = s^{1/nu} the Lamperti Laplace transform becomes
//   M_nu(-x) = sin(pi nu)/(nu pi) * int_0^inf e^{-eta s^{1/nu}} /
//              (s^2 + 2 s cos(pi nu) + 1) ds,     eta = x^{1/nu},
// a positive smooth integrand; panels cover the exponential cliff and, for nu
// near 1, the near-pole of the rational kernel at s = -cos(pi nu).

std::vector<double> kernel_panels(double nu, double s_cut) {
    std::vector<double> pts = {0.0, s_cut / 8.0, s_cut / 2.0, s_cut, 2.0 * s_cut};
    double c = std::cos(kPi * nu);
    if (c < 0.0) {
        double w = std::max(std::sin(kPi * nu), 1e-8);
        for (double p : {-c / 2.0, -c - w, -c, -c + w, 1.0}) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [&](double p) { return p < 0.0 || p > 2.0 * s_cut; }),
              pts.end());
    pts.push_back(2.0 * s_cut);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double eta_of(double nu, double x) {
    double le = std::log(x) / nu;
    if (le > 690.0) throw accuracy_error("ml_one: x^{1/nu} overflows double range");
    return std::exp(le);
}

double lamperti_moment_integral(double nu, double eta, int j) {
    const double c = std::cos(kPi * nu);
    const double inv_nu = 1.0 / nu;
    double s_cut = std::pow((60.0 + 12.0 * j) / eta, nu);
    auto pts = kernel_panels(nu, s_cut);
    auto f = [&](double s) -> double {
        if (s <= 0.0) return 0.0;
        double p = std::pow(s, inv_nu);
        double mono = (j == 0) ? 1.0 : std::pow(p, j);
        return mono * std::exp(-eta * p) / (s * s + 2.0 * c * s + 1.0);
    };
    QuadOptions opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-13;
    auto r = integrate_panels(f, pts, opt);
    return std::sin(kPi * nu) / (nu * kPi) * r.value;
}

} // namespace

namespace ml_detail {

double ml_neg_axis_integral(double nu, double x) {
    return lamperti_moment_integral(nu, eta_of(nu, x), 0);
}

// Chain-rule inversion: with G(eta) = M_nu(-eta^nu), Faa di Bruno gives
// G^{(j)} = sum_k M^{(k)} B_{j,k}(z', z'', ...) for z(eta) = -eta^nu. The
// moments G^{(j)}(eta) = (-1)^j int t^j e^{-eta t} f_L(t) dt are cheap and
// positive, and the triangular system yields M^{(n)}(-x).
double ml_deriv_neg_axis_integral(double nu, double x, int n) {
    const double eta = eta_of(nu, x);
    std::vector<long double> G(n + 1);
    for (int j = 0; j <= n; ++j) {
        double m = lamperti_moment_integral(nu, eta, j);
        G[j] = (j % 2 == 0) ? (long double)m : -(long double)m;
    }
    if (n == 0) return (double)G[0];
    const long double leta = std::logl((long double)eta);
    std::vector<long double> zd(n + 1, 0.0L); // zd[i] = d^i/deta^i (-eta^nu)
    for (int i = 1; i <= n; ++i)
        zd[i] = -(long double)falling_factorial(nu, i) * std::expl(((long double)nu - i) * leta);
    // partial Bell polynomials over zd
    std::vector<std::vector<long double>> B(n + 1, std::vector<long double>(n + 1, 0.0L));
    B[0][0] = 1.0L;
    std::vector<std::vector<long double>> C(n + 1, std::vector<long double>(n + 1, 0.0L));
    for (int j = 0; j <= n; ++j) {
        C[j][0] = 1.0L;
        for (int i = 1; i <= j; ++i) C[j][i] = C[j - 1][i - 1] + C[j - 1][i];
    }
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= j; ++k)
            for (int i = 1; i <= j - k + 1; ++i)
                B[j][k] += C[j - 1][i - 1] * zd[i] * B[j - i][k - 1];
    std::vector<long double> M(n + 1, 0.0L);
    for (int j = 1; j <= n; ++j) {
        long double rhs = G[j];
        for (int k = 1; k < j; ++k) rhs -= M[k] * B[j][k];
        M[j] = rhs / B[j][j];
    }
    return (double)M[n];
}

} // namespace ml_detail

MLParams::MLParams(double nu_, double lambda_) : nu(nu_), lambda(lambda_) {
    check_nu(nu);
    if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
}

MLParams MLParams::for_rate(double nu, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("rate must be positive");
    return MLParams(nu, std::pow(rate, nu));
}

PrabhakarParams::PrabhakarParams(double alpha_, double beta_, double gamma_)
    : alpha(alpha_), beta(beta_), gamma(gamma_) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
        throw std::domain_error("Prabhakar parameters must all be positive");
}

double ml_one(double nu, double z) {
    check_nu(nu);
    check_finite(z);
    if (nu == 1.0) return std::exp(z);
    if (z == 0.0) return 1.0;
    if (z > 0.0 || -z <= ml_detail::series_switch(nu)) return ml_series_real(nu, z);
    return ml_detail::ml_neg_axis_integral(nu, -z);
}

std::complex<double> ml_one(double nu, std::complex<double> z) {
    check_nu(nu);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("argument must be finite");
    if (nu == 1.0) return std::exp(z);
    if (z.imag() == 0.0) return {ml_one(nu, z.real()), 0.0};
    if (std::abs(z) <= ml_detail::series_switch(nu)) return ml_series_cplx(nu, z);
    std::complex<double> w = -z;
    if (std::abs(std::arg(w)) < 0.85 * nu * kPi / 2.0) {
        // analytic continuation of the negative-axis integral into the sector
        std::complex<double> eta = std::exp(std::log(w) / nu);
        const double c = std::cos(kPi * nu);
        const double inv_nu = 1.0 / nu;
        double s_cut = std::pow(60.0 / eta.real(), nu);
        auto pts = kernel_panels(nu, s_cut);
        auto f = [&](double s) -> std::complex<double> {
            if (s <= 0.0) return {0.0, 0.0};
            double p = std::pow(s, inv_nu);
            return std::exp(-eta * p) / (s * s + 2.0 * c * s + 1.0);
        };
        QuadOptions opt;
        opt.abs_tol = 1e-300;
        opt.rel_tol = 1e-12;
        auto r = integrate_panels(f, pts, opt);
        return std::sin(kPi * nu) / (nu * kPi) * r.value;
    }
    return ml_series_cplx(nu, z);
}

double prabhakar(const PrabhakarParams& p, double z) {
    check_finite(z);
    if (z < 0.0 && -z > ml_detail::series_switch(p.alpha)) {
        // Only the Mittag-Leffler derivative pattern gamma = n+1,
        // beta = n alpha + 1 has a stable route this far out.
        double g = std::round(p.gamma);
        if (std::fabs(p.gamma - g) < 1e-12 && g >= 1.0 &&
            std::fabs(p.beta - ((g - 1.0) * p.alpha + 1.0)) < 1e-12) {
            int n = (int)g - 1;
            return ml_detail::ml_deriv_neg_axis_integral(p.alpha, -z, n) / std::tgamma(g);
        }
        throw accuracy_error("prabhakar: argument outside the supported series domain");
    }
    Kahan acc;
    long double peak = 0.0L;
    long double zp = 1.0L;
    long double ck = 1.0L; // Gamma(k+gamma)/(Gamma(gamma) k!)
    bool direct = true;
    auto term = [&](int k) -> long double {
        long double t;
        double a = p.alpha * k + p.beta;
        if (direct && a <= 170.0) {
            t = ck * zp / std::tgammal((long double)a);
            ck *= ((long double)k + (long double)p.gamma) / ((long double)k + 1.0L);
            zp *= (long double)z;
        } else {
            if (z < 0.0) throw accuracy_error("prabhakar: series regime exceeded");
            direct = false;
            long double lg = std::lgammal((long double)a);
            long double lc = std::lgammal((long double)k + (long double)p.gamma) -
                             std::lgammal((long double)p.gamma) - std::lgammal((long double)k + 1.0L);
            t = std::expl(lc + (long double)k * std::logl((long double)z) - lg);
        }
        return t;
    };
    double v = (double)sum_series<decltype(term)&, Kahan, long double>(term, acc, peak, "prabhakar");
    if (!std::isfinite(v)) throw accuracy_error("prabhakar: result overflows double range");
    return v;
}

std::complex<double> prabhakar(const PrabhakarParams& p, std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("argument must be finite");
    if (z.imag() == 0.0) return {prabhakar(p, z.real()), 0.0};
    using CL = std::complex<long double>;
    KahanC acc;
    long double peak = 0.0L;
    CL zl(z.real(), z.imag());
    CL zp(1.0L, 0.0L);
    long double ck = 1.0L;
    auto term = [&](int k) -> CL {
        double a = p.alpha * k + p.beta;
        if (a > 170.0) throw accuracy_error("prabhakar: complex argument outside supported domain");
        CL t = ck * zp / (CL)std::tgammal((long double)a);
        ck *= ((long double)k + (long double)p.gamma) / ((long double)k + 1.0L);
        zp *= zl;
        return t;
    };
    CL v = sum_series<decltype(term)&, KahanC, CL>(term, acc, peak, "prabhakar");
    long double mag = std::abs(v);
    if (peak * 1e-18L > 1e-9L * std::max(mag, (long double)1e-30L))
        throw accuracy_error("prabhakar: cancellation too severe for complex argument");
    return {(double)v.real(), (double)v.imag()};
}

double ml_deriv_n(double nu, double z, int n) {
    check_nu(nu);
    check_finite(z);
    if (n < 0) throw std::domain_error("derivative order must be >= 0");
    if (n == 0) return ml_one(nu, z);
    if (nu == 1.0) return std::exp(z);
    return std::tgamma((double)n + 1.0) * prabhakar(PrabhakarParams(nu, n * nu + 1.0, n + 1.0), z);
}

std::complex<double> ml_deriv_n(double nu, std::complex<double> z, int n) {
    check_nu(nu);
    if (n < 0) throw std::domain_error("derivative order must be >= 0");
    if (n == 0) return ml_one(nu, z);
    if (nu == 1.0) return std::exp(z);
    return std::tgamma((double)n + 1.0) * prabhakar(PrabhakarParams(nu, n * nu + 1.0, n + 1.0), z);
}

double falling_factorial(double nu, int h) {
    if (h < 0) throw std::domain_error("falling factorial needs h >= 0");
    double r = 1.0;
    for (int i = 0; i < h; ++i) r *= (nu - i);
    return r;
}

double faa_coeff(int k, int n, double nu) {
    if (k < 1 || n < 1) throw std::domain_error("faa_coeff requires k,n >= 1");
    if (k > n) throw std::domain_error("faa_coeff: no tuple of positive parts exists for k > n");
    if (n > 64) throw size_error("faa_coeff capped at n <= 64");
    // weights (nu)_h / h!
    std::vector<double> w(n + 1, 0.0);
    double ff = 1.0, fact = 1.0;
    for (int h = 1; h <= n; ++h) {
        ff *= (nu - (h - 1));
        fact *= h;
        w[h] = ff / fact;
    }
    // c[kk][nn] over tuples of positive parts
    std::vector<std::vector<double>> c(k + 1, std::vector<double>(n + 1, 0.0));
    c[0][0] = 1.0;
    for (int kk = 1; kk <= k; ++kk)
        for (int nn = kk; nn <= n; ++nn) {
            double s = 0.0;
            for (int h = 1; h <= nn - kk + 1; ++h) s += w[h] * c[kk - 1][nn - h];
            c[kk][nn] = s;
        }
    return c[k][n];
}

double frac_binomial(double nu, int j) {
    if (j < 0) throw std::domain_error("binomial index must be >= 0");
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r *= (nu - (i - 1)) / i;
    return r;
}

} // namespace paramarkov
