#ifndef HECKESIGN_ANALYTIC_HPP
#define HECKESIGN_ANALYTIC_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "heckesign/forms.hpp"

namespace heckesign {

using Complex = std::complex<double>;

// Principal branch of log Gamma by upward recursion into the Stirling
// region. Throws std::domain_error at the poles (nonpositive integers).
// Target accuracy ~1e-12 relative for |z| <= 1e4.
Complex log_gamma(Complex z);

struct ValueWithTail {
    Complex value{0.0, 0.0};
    double tail_bound = 0.0;  // reported truncation-error estimate
};

// Riemann zeta by Euler-Maclaurin: direct series to an adaptive cutoff plus
// the integral tail and correction terms; only valid for Re(s) > 1.
ValueWithTail zeta_em(Complex s);

// Satake parameters at p: roots of X^2 - lambda(p) X + 1. Requires the
// Kim-Sarnak bound |lambda(p)| <= 2 p^{7/64}.
struct LocalParameters {
    std::int64_t p = 0;
    Complex alpha1{0.0, 0.0};
    Complex alpha2{0.0, 0.0};
};

LocalParameters local_parameters(double lambda_p, std::int64_t p);

// zeta(2s) * sum_{n<=N} lambda_f(n) lambda_g(n) n^{-s}, with a reported
// truncation-error estimate. Refuses Re(s) < 5/4 (no continuation).
ValueWithTail rankin_dirichlet(const CoefficientTable& f, const CoefficientTable& g, Complex s,
                               std::int64_t N, int workers = -1);

// prod_{p<=P} prod_{i,j} (1 - alpha_{f,i} alpha_{g,j} p^{-s})^{-1}, same
// region restriction, with a reported truncation-error estimate.
ValueWithTail rankin_euler(const CoefficientTable& f, const CoefficientTable& g, Complex s,
                           std::int64_t P);

// lambda(p^2), checked against lambda(p)^2 - 1 within tol.
double sym_square_coefficient(const CoefficientTable& table, std::int64_t p, double tol = 1e-8);

// Gamma-factor data for the product of four ratio factors appearing in the
// functional-equation magnitude estimate.
struct GammaFactorSpec {
    double u = 0.0;
    double v = 0.0;
    int r = 0;  // 0 when the two parities are equal, 1 otherwise

    GammaFactorSpec(double u_, double v_, int r_);
    static GammaFactorSpec from_parities(double u, double v, int parity_f, int parity_g);
};

// log |prod_{k=1..4} Gamma(5/8 + r/2 + i w_k) / Gamma(-1/8 + r/2 - i w_k)|
// with w = { (u+v-t)/2, (u-v-t)/2, (u+v+t)/2, (u-v+t)/2 }.
double gamma_ratio_log_magnitude(const GammaFactorSpec& spec, double t);
double gamma_ratio_magnitude(const GammaFactorSpec& spec, double t);

// |Gamma(5/8 + ix) / Gamma(-1/8 + ix)|, the single-factor building block.
double single_gamma_ratio_magnitude(double x);

// Fitted slope of log magnitude against log t over a log-spaced grid.
double gamma_ratio_slope(const GammaFactorSpec& spec, double t_lo, double t_hi, int points = 25);
double single_gamma_ratio_slope(double t_lo, double t_hi, int points = 25);

// Three-line interpolation bound:
// (E |P+sigma+it|^alpha)^{(b-sigma)/(b-a)} (F |P+sigma+it|^beta)^{(sigma-a)/(b-a)}.
double rademacher_bound(double a, double b, double E, double F, double P, double alpha,
                        double beta, double sigma, double t);

// ((1+u+v)(3+|t|))^{2(5/4-sigma)}, valid for -1/4 < sigma < 5/4.
double convexity_bound_eval(double u, double v, double sigma, double t);

// Same bound on the line sigma = 1/2 + delta, written with exponent
// 3/2 - 2 delta; valid for 0 < delta <= 3/4.
double corollary_bound_eval(double u, double v, double delta, double t);

// (1+|t|)^{8(1+eps-sigma)}, valid for 15/16 + eps <= sigma < 1 + eps.
double lfg_convexity_eval(double sigma, double t, double eps);

}  // namespace heckesign

#endif
