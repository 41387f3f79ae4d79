#include "heckesign/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "heckesign/fit.hpp"
#include "heckesign/parallel.hpp"
#include "heckesign/primes.hpp"
#include "heckesign/summation.hpp"

namespace heckesign {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogTwoPi = 1.8378770664093454836;  // log(2 pi)

// Stirling coefficients B_{2k} / (2k (2k-1)).
constexpr double kStirling[] = {
    1.0 / 12,   -1.0 / 360,       1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360,  1.0 / 156,  -3617.0 / 122400,
};

bool near_nonpositive_integer(Complex z) {
    if (std::abs(z.imag()) > 1e-13) return false;
    double r = z.real();
    if (r > 0.5) return false;
    return std::abs(r - std::round(r)) < 1e-13;
}

}  // namespace

Complex log_gamma(Complex z) {
    if (near_nonpositive_integer(z))
        throw std::domain_error("log_gamma: pole at z = " + std::to_string(z.real()));
    Complex shift(0.0, 0.0);
    while (z.real() < 16.0 && std::abs(z) < 1.0e6) {
        shift += std::log(z);
        z += 1.0;
    }
    Complex zinv = 1.0 / z;
    Complex zinv2 = zinv * zinv;
    Complex series(0.0, 0.0);
    Complex zpow = zinv;
    for (double c : kStirling) {
        series += c * zpow;
        zpow *= zinv2;
    }
    Complex result = (z - 0.5) * std::log(z) - z + 0.5 * kLogTwoPi + series;
    return result - shift;
}

ValueWithTail zeta_em(Complex s) {
    if (s.real() <= 1.0)
        throw std::domain_error("zeta_em: requires Re(s) > 1");
    const std::int64_t N0 =
        std::max<std::int64_t>(32, static_cast<std::int64_t>(std::abs(s.imag())) + 16);
    Complex sum(0.0, 0.0);
    CompensatedSum re, im;
    for (std::int64_t n = 1; n < N0; ++n) {
        Complex term = std::exp(-s * std::log(static_cast<double>(n)));
        re.add(term.real());
        im.add(term.imag());
    }
    sum = Complex(re.value(), im.value());
    double logN = std::log(static_cast<double>(N0));
    Complex NmS = std::exp(-s * logN);  // N0^{-s}
    sum += 0.5 * NmS;
    sum += NmS * static_cast<double>(N0) / (s - 1.0);  // N0^{1-s} / (s-1)

    // Euler-Maclaurin corrections B_{2k}/(2k)! prod_{j<2k-1}(s+j) N0^{-s-2k+1}.
    constexpr double kB2kOverFact[] = {
        1.0 / 12,            // B2/2!
        -1.0 / 720,          // B4/4!
        1.0 / 30240,         // B6/6!
        -1.0 / 1209600,      // B8/8!
        1.0 / 47900160,      // B10/10!
        -691.0 / 1307674368000.0,
    };
    Complex poch(1.0, 0.0);  // prod_{j=0}^{2k-2} (s+j)
    double Npow = static_cast<double>(N0);  // N0^{2k-1}
    Complex last(0.0, 0.0);
    for (std::size_t k = 0; k < 6; ++k) {
        if (k == 0)
            poch = s;
        else
            poch *= (s + Complex(2.0 * k - 1.0, 0.0)) * (s + Complex(2.0 * k, 0.0));
        Complex term = kB2kOverFact[k] * poch * NmS / Npow;
        sum += term;
        last = term;
        Npow *= static_cast<double>(N0) * static_cast<double>(N0);
    }
    return {sum, 2.0 * std::abs(last)};
}

LocalParameters local_parameters(double lambda_p, std::int64_t p) {
    if (p < 2) throw std::invalid_argument("local_parameters: p must be a prime >= 2");
    double ks = 2.0 * std::pow(static_cast<double>(p), 7.0 / 64.0);
    if (std::abs(lambda_p) > ks * (1.0 + 1e-12))
        throw std::invalid_argument(
            "local_parameters: |lambda(p)| exceeds the Kim-Sarnak bound 2 p^{7/64} at p = " +
            std::to_string(p));
    LocalParameters out;
    out.p = p;
    double half = lambda_p / 2.0;
    if (std::abs(lambda_p) < 2.0) {
        double im = std::sqrt(std::max(0.0, 1.0 - half * half));
        out.alpha1 = Complex(half, im);
        out.alpha2 = Complex(half, -im);
    } else {
        double root = std::sqrt(std::max(0.0, half * half - 1.0));
        double a1 = half + (lambda_p >= 0 ? root : -root);  // larger-magnitude root
        out.alpha1 = Complex(a1, 0.0);
        out.alpha2 = Complex(1.0 / a1, 0.0);
    }
    return out;
}

namespace {

void require_convergence_region(Complex s, const char* who) {
    if (s.real() < 1.25 - 1e-12)
        throw std::domain_error(std::string(who) +
                                ": Re(s) must be >= 5/4 (analytic continuation out of scope)");
}

// Mean of |f(n) g(n)| over (N/2, N]: the empirical term-size scale used for
// tail estimates.
double recent_mean_abs(const CoefficientTable& f, const CoefficientTable& g, std::int64_t N) {
    std::int64_t lo = std::max<std::int64_t>(1, N / 2 + 1);
    CompensatedSum acc;
    for (std::int64_t n = lo; n <= N; ++n) acc.add(std::abs(f(n) * g(n)));
    return acc.value() / static_cast<double>(N - lo + 1);
}

}  // namespace

ValueWithTail rankin_dirichlet(const CoefficientTable& f, const CoefficientTable& g, Complex s,
                               std::int64_t N, int workers) {
    require_convergence_region(s, "rankin_dirichlet");
    if (N < 1 || N > std::min(f.size(), g.size()))
        throw std::out_of_range("rankin_dirichlet: N outside table range");

    const double sigma = s.real(), t = s.imag();
    std::vector<CompensatedSum> res(block_count(1, N)), ims(block_count(1, N));
    parallel_blocks(
        1, N,
        [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
            CompensatedSum re, im;
            for (std::int64_t n = lo; n <= hi; ++n) {
                double c = f(n) * g(n);
                if (c != 0.0) {
                    double ln = std::log(static_cast<double>(n));
                    double mag = c * std::exp(-sigma * ln);
                    re.add(mag * std::cos(t * ln));
                    im.add(-mag * std::sin(t * ln));
                }
            }
            res[b] = re;
            ims[b] = im;
        },
        workers);
    CompensatedSum re, im;
    for (std::size_t b = 0; b < res.size(); ++b) {
        re.merge(res[b]);
        im.merge(ims[b]);
    }
    Complex series(re.value(), im.value());

    ValueWithTail zeta = zeta_em(2.0 * s);
    ValueWithTail out;
    out.value = zeta.value * series;

    // Tail of the coefficient series from the recent mean term size; no
    // cancellation is assumed.
    double mean_abs = recent_mean_abs(f, g, N);
    double series_tail =
        2.0 * mean_abs * std::pow(static_cast<double>(N), 1.0 - sigma) / (sigma - 1.0);
    out.tail_bound = std::abs(zeta.value) * series_tail + std::abs(series) * zeta.tail_bound +
                     zeta.tail_bound * series_tail;
    return out;
}

ValueWithTail rankin_euler(const CoefficientTable& f, const CoefficientTable& g, Complex s,
                           std::int64_t P) {
    require_convergence_region(s, "rankin_euler");
    if (P < 2 || P > std::min(f.size(), g.size()))
        throw std::out_of_range("rankin_euler: P outside table range");

    const double sigma = s.real();
    auto sieve = shared_sieve(P);
    Complex prod(1.0, 0.0);
    CompensatedSum mean_ab, mean_a2b2;
    std::int64_t window = 0;
    for (std::int64_t p : sieve->primes()) {
        if (p > P) break;
        double a = f(p), b = g(p);
        Complex X = std::exp(-s * std::log(static_cast<double>(p)));
        Complex X2 = X * X;
        // prod_{i,j} (1 - alpha_i beta_j X) expanded by symmetric functions:
        // e1 = ab, e2 = a^2 + b^2 - 2, e3 = ab, e4 = 1.
        Complex local = 1.0 - (a * b) * X + (a * a + b * b - 2.0) * X2 - (a * b) * X2 * X + X2 * X2;
        prod *= 1.0 / local;
        if (2 * p > P) {
            mean_ab.add(std::abs(a * b));
            mean_a2b2.add(a * a + b * b);
            ++window;
        }
    }

    double m1 = window > 0 ? mean_ab.value() / window : 4.0;
    double m2 = window > 0 ? mean_a2b2.value() / window : 8.0;
    double logP = std::log(static_cast<double>(P));
    double log_tail = 2.0 * (m1 * std::pow(static_cast<double>(P), 1.0 - sigma) /
                                 ((sigma - 1.0) * logP) +
                             m2 * std::pow(static_cast<double>(P), 1.0 - 2.0 * sigma) /
                                 ((2.0 * sigma - 1.0) * logP));
    ValueWithTail out;
    out.value = prod;
    out.tail_bound = std::abs(prod) * std::expm1(log_tail);
    return out;
}

double sym_square_coefficient(const CoefficientTable& table, std::int64_t p, double tol) {
    if (p < 2 || !shared_sieve(std::max<std::int64_t>(p, 2))->is_prime(p))
        throw std::invalid_argument("sym_square_coefficient: p must be prime");
    if (p > table.size() / p)
        throw std::out_of_range("sym_square_coefficient: p^2 exceeds table length");
    double lp = table(p);
    double lp2 = table(p * p);
    double derived = lp * lp - 1.0;
    if (std::abs(lp2 - derived) > tol * (1.0 + std::abs(derived)))
        throw std::runtime_error("sym_square_coefficient: lambda(p^2) != lambda(p)^2 - 1 at p = " +
                                 std::to_string(p));
    return lp2;
}

GammaFactorSpec::GammaFactorSpec(double u_, double v_, int r_) : u(u_), v(v_), r(r_) {
    if (r != 0 && r != 1) throw std::invalid_argument("GammaFactorSpec: r must be 0 or 1");
}

GammaFactorSpec GammaFactorSpec::from_parities(double u, double v, int parity_f, int parity_g) {
    if ((parity_f != 0 && parity_f != 1) || (parity_g != 0 && parity_g != 1))
        throw std::invalid_argument("GammaFactorSpec: parities must be 0 or 1");
    return GammaFactorSpec(u, v, parity_f == parity_g ? 0 : 1);
}

double gamma_ratio_log_magnitude(const GammaFactorSpec& spec, double t) {
    const double u = spec.u, v = spec.v;
    const double half_r = spec.r / 2.0;
    const double w[4] = {(u + v - t) / 2.0, (u - v - t) / 2.0, (u + v + t) / 2.0,
                         (u - v + t) / 2.0};
    double log_mag = 0.0;
    for (int k = 0; k < 4; ++k) {
        Complex num(5.0 / 8.0 + half_r, w[k]);
        Complex den(-1.0 / 8.0 + half_r, w[k]);  // |Gamma(x - iy)| = |Gamma(x + iy)|
        if (near_nonpositive_integer(den))
            throw std::domain_error("gamma_ratio_magnitude: denominator gamma factor " +
                                    std::to_string(k + 1) + " has a pole");
        log_mag += log_gamma(num).real() - log_gamma(den).real();
    }
    return log_mag;
}

double gamma_ratio_magnitude(const GammaFactorSpec& spec, double t) {
    return std::exp(gamma_ratio_log_magnitude(spec, t));
}

double single_gamma_ratio_magnitude(double x) {
    Complex num(5.0 / 8.0, x);
    Complex den(-1.0 / 8.0, x);
    return std::exp(log_gamma(num).real() - log_gamma(den).real());
}

namespace {

double slope_of(const std::function<double(double)>& log_value, double t_lo, double t_hi,
                int points) {
    if (!(t_lo > 0) || !(t_hi > t_lo) || points < 2)
        throw std::invalid_argument("slope fit: need 0 < t_lo < t_hi and points >= 2");
    std::vector<double> lx(points), ly(points);
    for (int i = 0; i < points; ++i) {
        double f = static_cast<double>(i) / (points - 1);
        double t = t_lo * std::pow(t_hi / t_lo, f);
        lx[i] = std::log(t);
        ly[i] = log_value(t);
    }
    return fit_line(lx, ly).slope;
}

}  // namespace

double gamma_ratio_slope(const GammaFactorSpec& spec, double t_lo, double t_hi, int points) {
    return slope_of([&](double t) { return gamma_ratio_log_magnitude(spec, t); }, t_lo, t_hi,
                    points);
}

double single_gamma_ratio_slope(double t_lo, double t_hi, int points) {
    return slope_of([&](double t) { return std::log(single_gamma_ratio_magnitude(t)); }, t_lo,
                    t_hi, points);
}

double rademacher_bound(double a, double b, double E, double F, double P, double alpha,
                        double beta, double sigma, double t) {
    if (!(a < sigma)) throw std::invalid_argument("rademacher_bound: requires a < sigma");
    if (!(sigma < b)) throw std::invalid_argument("rademacher_bound: requires sigma < b");
    if (!(P + a > 0)) throw std::invalid_argument("rademacher_bound: requires P + a > 0");
    if (!(alpha >= beta)) throw std::invalid_argument("rademacher_bound: requires alpha >= beta");
    if (!(E > 0)) throw std::invalid_argument("rademacher_bound: requires E > 0");
    if (!(F > 0)) throw std::invalid_argument("rademacher_bound: requires F > 0");
    double wa = (b - sigma) / (b - a);
    double wb = (sigma - a) / (b - a);
    double log_mod = 0.5 * std::log((P + sigma) * (P + sigma) + t * t);
    return std::exp(wa * (std::log(E) + alpha * log_mod) + wb * (std::log(F) + beta * log_mod));
}

double convexity_bound_eval(double u, double v, double sigma, double t) {
    if (!(sigma > -0.25 && sigma < 1.25))
        throw std::domain_error("convexity_bound_eval: requires -1/4 < sigma < 5/4");
    double e = 2.0 * (1.25 - sigma);
    return std::pow((1.0 + u + v) * (3.0 + std::abs(t)), e);
}

double corollary_bound_eval(double u, double v, double delta, double t) {
    if (!(delta > 0.0 && delta <= 0.75))
        throw std::domain_error("corollary_bound_eval: requires 0 < delta <= 3/4");
    double e = 1.5 - 2.0 * delta;
    return std::pow((1.0 + u + v) * (3.0 + std::abs(t)), e);
}

double lfg_convexity_eval(double sigma, double t, double eps) {
    if (!(eps > 0.0))
        throw std::domain_error("lfg_convexity_eval: requires eps > 0");
    if (!(sigma >= 15.0 / 16.0 + eps && sigma < 1.0 + eps))
        throw std::domain_error("lfg_convexity_eval: requires 15/16 + eps <= sigma < 1 + eps");
    return std::pow(1.0 + std::abs(t), 8.0 * (1.0 + eps - sigma));
}

}  // namespace heckesign
