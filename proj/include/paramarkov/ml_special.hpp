#pragma once

#include <cmath>
#include <complex>

#include "paramarkov/errors.hpp"

namespace paramarkov {

// Parameter pair of a Mittag-Leffler waiting time. `lambda` is the
// coefficient multiplying t^nu inside the survival function:
//
//     P(J > t) = M_nu(-lambda * t^nu).
//
// A counting process of rate r has marginal waits with lambda = r^nu, i.e.
// survival M_nu(-(r t)^nu); semi-Markov chains use lambda = rate directly.
// Both conventions appear in the literature, so the coefficient form is the
// single documented boundary between them.
struct MLParams {
    double nu;
    double lambda;

    MLParams(double nu_, double lambda_);

    // lambda = rate^nu so that the marginal survival is M_nu(-(rate*t)^nu).
    static MLParams for_rate(double nu, double rate);

    // Inverse of for_rate: the exponential rate of the underlying Poisson
    // clock in the Lamperti time-change representation.
    double rate() const { return std::pow(lambda, 1.0 / nu); }
};

// Parameters of the three-parameter (Prabhakar) Mittag-Leffler function.
struct PrabhakarParams {
    double alpha;
    double beta;
    double gamma;

    PrabhakarParams(double alpha_, double beta_, double gamma_);
};

// One-parameter Mittag-Leffler function M_nu(z) = sum_k z^k / Gamma(1+nu k).
// Real-axis evaluation is global: truncated compensated series for small
// arguments, Lamperti-kernel integral representation for large negative ones.
double ml_one(double nu, double z);

// Complex arguments as needed for matrix spectra. Supported domain: moderate
// |z|, or large |z| in a sector around the negative real axis; outside it an
// accuracy_error is thrown rather than returning a value with cancellation
// damage.
std::complex<double> ml_one(double nu, std::complex<double> z);

// Prabhakar function M^gamma_{alpha,beta}(z)
//   = (1/Gamma(gamma)) sum_k Gamma(k+gamma) z^k / (k! Gamma(alpha k + beta)).
double prabhakar(const PrabhakarParams& p, double z);
std::complex<double> prabhakar(const PrabhakarParams& p, std::complex<double> z);

// n-th derivative of M_nu with respect to z: n! * M^{n+1}_{nu, n nu + 1}(z).
double ml_deriv_n(double nu, double z, int n);
std::complex<double> ml_deriv_n(double nu, std::complex<double> z, int n);

// Falling factorial (nu)_h = nu (nu-1) ... (nu-h+1); empty product for h=0.
double falling_factorial(double nu, int h);

// Composition coefficient c(k,n;nu) = sum over k-tuples of positive integers
// h_1+...+h_k = n of prod_i (nu)_{h_i}/h_i!. Requires 1 <= k <= n <= 64.
double faa_coeff(int k, int n, double nu);

// Generalized binomial coefficient (nu choose j).
double frac_binomial(double nu, int j);

namespace ml_detail {

// Series/integral regime boundary on the negative real axis: the truncated
// series loses about e^{|z|^{1/nu}} to cancellation, so it is only used while
// |z|^{1/nu} stays small.
inline double series_switch(double nu) { return std::min(4.0, std::pow(9.0, nu)); }

// Derivatives of M_nu on the far negative axis by inverting the chain rule
// of G(eta) = M_nu(-eta^nu) = integral of e^{-eta t} against the Lamperti
// density; exposed for cross-checks.
double ml_deriv_neg_axis_integral(double nu, double x, int n);

// Integral-representation evaluation of M_nu(-x), x > 0 (0 < nu < 1).
double ml_neg_axis_integral(double nu, double x);

} // namespace ml_detail

} // namespace paramarkov
