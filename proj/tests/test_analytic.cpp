#include <doctest.h>

#include <cmath>
#include <random>

#include "heckesign/analytic.hpp"
#include "heckesign/forms.hpp"
#include "heckesign/primes.hpp"

using namespace heckesign;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("log_gamma at classical points") {
    CHECK(log_gamma(Complex(0.5, 0)).real() == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-13));
    CHECK(log_gamma(Complex(1, 0)).real() == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(log_gamma(Complex(5, 0)).real() == doctest::Approx(std::log(24.0)).epsilon(1e-13));
    CHECK(log_gamma(Complex(11, 0)).real() == doctest::Approx(std::log(3628800.0)).epsilon(1e-13));
}

TEST_CASE("log_gamma matches |Gamma(1+iy)|^2 = pi y / sinh(pi y)") {
    for (double y : {0.25, 0.5, 2.0, 10.0, 100.0, 3000.0}) {
        double lhs = 2.0 * log_gamma(Complex(1.0, y)).real();
        double rhs = std::log(kPi * y) - (kPi * y + std::log1p(-std::exp(-2 * kPi * y)) - std::log(2.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    // and |Gamma(1/2+iy)|^2 = pi / cosh(pi y)
    for (double y : {0.5, 5.0, 50.0}) {
        double lhs = 2.0 * log_gamma(Complex(0.5, y)).real();
        double rhs = std::log(kPi) - (kPi * y + std::log1p(std::exp(-2 * kPi * y)) - std::log(2.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma satisfies the recurrence and conjugate symmetry") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> re(-0.4, 20.0), im(-100.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        Complex z(re(rng), im(rng));
        if (std::abs(z.imag()) < 1e-3) z += Complex(0, 0.5);
        Complex lhs = log_gamma(z + 1.0) - log_gamma(z);
        // exp(lhs) should equal z
        Complex back = std::exp(lhs);
        CHECK(std::abs(back - z) <= 1e-9 * (1.0 + std::abs(z)));
        Complex conj = log_gamma(std::conj(z));
        CHECK(conj.real() == doctest::Approx(log_gamma(z).real()).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma rejects poles") {
    CHECK_THROWS_AS(log_gamma(Complex(0, 0)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(Complex(-3, 0)), std::domain_error);
    CHECK_NOTHROW(log_gamma(Complex(-0.125, 0)));
}

TEST_CASE("zeta at even integers") {
    CHECK(zeta_em(Complex(2, 0)).value.real() == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
    CHECK(zeta_em(Complex(4, 0)).value.real() == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-14));
    CHECK(zeta_em(Complex(6, 0)).value.real() == doctest::Approx(std::pow(kPi, 6) / 945.0).epsilon(1e-14));
    CHECK_THROWS_AS(zeta_em(Complex(0.9, 0)), std::domain_error);
}

TEST_CASE("zeta against a brute-force partial sum at a complex point") {
    Complex s(2.5, 20.0);
    Complex brute(0, 0);
    const long long M = 2000000;
    for (long long n = 1; n <= M; ++n) brute += std::exp(-s * std::log(static_cast<double>(n)));
    // brute truncation is ~ M^{1-sigma}/|s-1|; allow that much slack
    double slack = 2.0 * std::pow(static_cast<double>(M), -1.5);
    auto z = zeta_em(s);
    CHECK(std::abs(z.value - brute) <= slack);
    CHECK(z.tail_bound < 1e-10);
    CHECK(std::abs(zeta_em(std::conj(s)).value - std::conj(z.value)) < 1e-13);
}

TEST_CASE("local parameters: double root, imaginary pair, eisenstein powers") {
    auto lp2 = local_parameters(2.0, 5);
    CHECK(lp2.alpha1 == Complex(1.0, 0.0));
    CHECK(lp2.alpha2 == Complex(1.0, 0.0));
    auto lp0 = local_parameters(0.0, 5);
    CHECK(lp0.alpha1.imag() == doctest::Approx(1.0));
    CHECK(lp0.alpha2.imag() == doctest::Approx(-1.0));
    // eisenstein: lambda(p) = 2cos(t log p) -> alpha = p^{±it}
    double t = 1.0;
    for (std::int64_t p : {2, 3, 5}) {
        double lam = 2.0 * std::cos(t * std::log(static_cast<double>(p)));
        auto lp = local_parameters(lam, p);
        Complex pit = std::exp(Complex(0, t * std::log(static_cast<double>(p))));
        Complex sum = pit + 1.0 / pit;
        CHECK(sum.real() == doctest::Approx(lam).epsilon(1e-12));
        CHECK((lp.alpha1 + lp.alpha2).real() == doctest::Approx(lam).epsilon(1e-12));
    }
}

TEST_CASE("local parameters invariants for random inputs") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> lam(-2.6, 2.6);
    auto sieve = shared_sieve(10000);
    const auto& ps = sieve->primes();
    for (int i = 0; i < 10000; ++i) {
        std::int64_t p = ps[rng() % ps.size()];
        double l = lam(rng);
        if (std::abs(l) > 2.0 * std::pow(static_cast<double>(p), 7.0 / 64.0)) continue;
        auto lp = local_parameters(l, p);
        CHECK(std::abs(lp.alpha1 * lp.alpha2 - 1.0) <= 1e-10);
        CHECK(std::abs(lp.alpha1 + lp.alpha2 - Complex(l, 0)) <= 1e-10);
    }
    CHECK_THROWS_AS(local_parameters(5.0, 2), std::invalid_argument);  // 5 > 2*2^{7/64}
}

TEST_CASE("sym_square coefficient equals lambda(p)^2 - 1") {
    auto tau = tau_oracle(200);
    CHECK(sym_square_coefficient(tau, 2) == doctest::Approx(tau(2) * tau(2) - 1.0).epsilon(1e-12));
    CHECK(sym_square_coefficient(tau, 13) == doctest::Approx(tau(169)).epsilon(1e-12));
    CHECK_THROWS_AS(sym_square_coefficient(tau, 17), std::out_of_range);  // 17^2 > 200
    // lambda(p) = 0 -> -1; lambda(p) = 2 -> 3 on constructed tables
    std::vector<double> v = {0.0, 1.0, 0.0, 0.0, -1.0};
    CoefficientTable z(FormDescriptor{"z", FormKind::file_ingested, std::nullopt, 0}, v, 1e-8);
    CHECK(sym_square_coefficient(z, 2) == doctest::Approx(-1.0));
    std::vector<double> w = {0.0, 1.0, 2.0, 0.0, 3.0};
    CoefficientTable y(FormDescriptor{"y", FormKind::file_ingested, std::nullopt, 0}, w, 1e-8);
    CHECK(sym_square_coefficient(y, 2) == doctest::Approx(3.0));
}

TEST_CASE("rankin region guard: continuation is refused") {
    auto tau = tau_oracle(100);
    CHECK_THROWS_AS(rankin_dirichlet(tau, tau, Complex(1.2, 0), 100), std::domain_error);
    CHECK_THROWS_AS(rankin_euler(tau, tau, Complex(1.0, 5), 97), std::domain_error);
    CHECK_NOTHROW(rankin_dirichlet(tau, tau, Complex(1.25, 0), 100));
}

TEST_CASE("rankin_dirichlet on the lambda(n>1) = 0 table equals zeta(6) at s = 3") {
    std::vector<double> v(201, 0.0);
    v[1] = 1.0;
    CoefficientTable zero(FormDescriptor{"zero", FormKind::file_ingested, std::nullopt, 0}, v, 1e-8);
    auto r = rankin_dirichlet(zero, zero, Complex(3, 0), 200);
    CHECK(r.value.real() == doctest::Approx(std::pow(kPi, 6) / 945.0).epsilon(1e-12));
    CHECK(std::abs(r.value.imag()) < 1e-14);
}

TEST_CASE("rankin_euler with vanishing prime coefficients gives zeta(2s)^2") {
    // alpha = ±i at every p makes the local factor (1 - p^{-2s})^{-2}: the
    // Euler route sees the Hecke-extended zero-prime table, not the all-zero
    // sequence.
    std::vector<std::pair<std::int64_t, double>> entries;
    for_each_prime(2, 3000, [&](std::int64_t p) { entries.emplace_back(p, 0.0); });
    auto table = hecke_extend(PrimeCoefficientSet(std::move(entries), 3000),
                              FormDescriptor{"z0", FormKind::maass_cusp, 1.0, 0}, 3000);
    Complex s(3, 0);
    auto e = rankin_euler(table, table, s, 3000);
    double z6 = std::pow(kPi, 6) / 945.0;
    CHECK(e.value.real() == doctest::Approx(z6 * z6).epsilon(1e-6));
    // dual route on the same table agrees
    auto d = rankin_dirichlet(table, table, s, 3000);
    CHECK(std::abs(d.value - e.value) <= d.tail_bound + e.tail_bound);
}

TEST_CASE("rankin dirichlet and euler agree within reported tails (oracle pairs)") {
    auto tau = tau_oracle(200000);
    auto eis = eisenstein_coefficients(1.0, 200000);
    for (Complex s : {Complex(2, 0), Complex(1.25, 10.0), Complex(2.75, -30.0)}) {
        auto d1 = rankin_dirichlet(tau, tau, s, 200000);
        auto e1 = rankin_euler(tau, tau, s, 50000);
        CHECK(std::abs(d1.value - e1.value) <= d1.tail_bound + e1.tail_bound);
        auto d2 = rankin_dirichlet(tau, eis, s, 200000);
        auto e2 = rankin_euler(tau, eis, s, 50000);
        CHECK(std::abs(d2.value - e2.value) <= d2.tail_bound + e2.tail_bound);
    }
}

TEST_CASE("rankin agreement at random points in the convergence region") {
    auto tau = tau_oracle(100000);
    auto eis = eisenstein_coefficients(1.0, 100000);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> sig(1.25, 3.0), tt(-50.0, 50.0);
    for (int i = 0; i < 50; ++i) {
        Complex s(sig(rng), tt(rng));
        auto d = rankin_dirichlet(tau, eis, s, 100000);
        auto e = rankin_euler(tau, eis, s, 30000);
        CHECK(std::abs(d.value - e.value) <= d.tail_bound + e.tail_bound);
    }
}

TEST_CASE("gamma ratio slopes match the Stirling growth") {
    CHECK(single_gamma_ratio_slope(100.0, 10000.0) == doctest::Approx(0.75).epsilon(0.01));
    GammaFactorSpec spec(0.0, 0.0, 0);
    CHECK(gamma_ratio_slope(spec, 100.0, 10000.0) == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("gamma ratio magnitude is even in t for u = v = 0") {
    GammaFactorSpec spec(0.0, 0.0, 0);
    for (double t : {0.5, 3.0, 77.7}) {
        CHECK(gamma_ratio_log_magnitude(spec, t) ==
              doctest::Approx(gamma_ratio_log_magnitude(spec, -t)).epsilon(1e-12));
    }
}

TEST_CASE("gamma ratio at t=0, u=v=0 is the 4th power of the single ratio") {
    GammaFactorSpec spec(0.0, 0.0, 0);
    double full = gamma_ratio_magnitude(spec, 0.0);
    double single = single_gamma_ratio_magnitude(0.0);
    CHECK(full == doctest::Approx(std::pow(single, 4.0)).epsilon(1e-10));
    CHECK(full > 0.0);
    CHECK(std::isfinite(full));
}

TEST_CASE("gamma spec r from parities; bad r rejected") {
    CHECK(GammaFactorSpec::from_parities(1.0, 2.0, 0, 0).r == 0);
    CHECK(GammaFactorSpec::from_parities(1.0, 2.0, 0, 1).r == 1);
    CHECK_THROWS_AS(GammaFactorSpec(1.0, 2.0, 5), std::invalid_argument);
}

TEST_CASE("rademacher endpoints and midpoint") {
    double a = -0.25, b = 1.25, E = 3.0, F = 0.5, P = 1.25, alpha = 3.0, beta = 0.0, t = 7.0;
    auto endpoint = [&](double sigma, double C, double expo) {
        double mod = std::hypot(P + sigma, t);
        return C * std::pow(mod, expo);
    };
    // sigma -> a and sigma -> b limits
    double near_a = rademacher_bound(a, b, E, F, P, alpha, beta, a + 1e-12, t);
    CHECK(near_a == doctest::Approx(endpoint(a, E, alpha)).epsilon(1e-9));
    double near_b = rademacher_bound(a, b, E, F, P, alpha, beta, b - 1e-12, t);
    CHECK(near_b == doctest::Approx(endpoint(b, F, beta)).epsilon(1e-9));
    // midpoint: geometric mean of the two endpoint expressions at that point
    double mid = 0.5 * (a + b);
    double val = rademacher_bound(a, b, E, F, P, alpha, beta, mid, t);
    double gm = std::sqrt(endpoint(mid, E, alpha) * endpoint(mid, F, beta));
    CHECK(val == doctest::Approx(gm).epsilon(1e-12));
}

TEST_CASE("rademacher preconditions are named individually") {
    auto expect_msg = [&](double a, double b, double E, double F, double P, double al, double be,
                          double s, const char* needle) {
        try {
            rademacher_bound(a, b, E, F, P, al, be, s, 0.0);
            FAIL("expected throw");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_msg(0, 1, 1, 1, 1, 1, 0, -0.5, "a < sigma");
    expect_msg(0, 1, 1, 1, 1, 1, 0, 1.5, "sigma < b");
    expect_msg(0, 1, 1, 1, -2, 1, 0, 0.5, "P + a > 0");
    expect_msg(0, 1, 1, 1, 1, 0, 1, 0.5, "alpha >= beta");
    expect_msg(0, 1, -1, 1, 1, 1, 0, 0.5, "E > 0");
    expect_msg(0, 1, 1, 0, 1, 1, 0, 0.5, "F > 0");
}

TEST_CASE("rademacher log decomposition is affine in sigma") {
    // log bound minus the modulus part is affine: the weights interpolate
    // linearly between log E and log F.
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> U(0.1, 3.0);
    for (int i = 0; i < 300; ++i) {
        double a = -U(rng), b = U(rng), E = U(rng), F = U(rng), P = -a + U(rng);
        double alpha = U(rng), beta = alpha - U(rng), t = 10.0 * U(rng);
        double s1 = a + (b - a) * 0.2, s2 = a + (b - a) * 0.5, s3 = a + (b - a) * 0.9;
        auto part = [&](double sigma) {
            double mod = std::hypot(P + sigma, t);
            double expo = (alpha * (b - sigma) + beta * (sigma - a)) / (b - a);
            return std::log(rademacher_bound(a, b, E, F, P, alpha, beta, sigma, t)) -
                   expo * std::log(mod);
        };
        double d1 = (part(s2) - part(s1)) / (s2 - s1);
        double d2 = (part(s3) - part(s2)) / (s3 - s2);
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-7));
    }
}

TEST_CASE("rademacher with the functional-equation inputs matches the convexity shape") {
    // E = (1+u+v)^3, F = 1, a = -1/4, b = 5/4, P = 5/4, alpha = 3, beta = 0
    // collapses to ((1+u+v)|5/4+sigma+it|)^{2(5/4-sigma)}.
    for (double u : {0.3, 1.0}) {
        for (double v : {0.5, 2.0}) {
            for (double sigma : {-0.1, 0.25, 0.75, 1.2}) {
                double t = 3.0;
                double E = std::pow(1.0 + u + v, 3.0);
                double lhs = rademacher_bound(-0.25, 1.25, E, 1.0, 1.25, 3.0, 0.0, sigma, t);
                double mod = std::hypot(1.25 + sigma, t);
                double rhs = std::pow((1.0 + u + v) * mod, 2.0 * (1.25 - sigma));
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("convexity bound evaluations") {
    CHECK(convexity_bound_eval(1.0, 2.0, 1.25 - 1e-15, 5.0) == doctest::Approx(1.0).epsilon(1e-10));
    // sigma = 1/2 + delta: exponents 3/2 - 2 delta, cross-checked via the corollary form
    for (double delta : {0.1, 0.25, 0.5}) {
        double direct = convexity_bound_eval(1.0, 2.0, 0.5 + delta, 4.0);
        double coro = corollary_bound_eval(1.0, 2.0, delta, 4.0);
        CHECK(direct == doctest::Approx(coro).epsilon(1e-12));
        double expo = 1.5 - 2.0 * delta;
        CHECK(coro == doctest::Approx(std::pow(4.0 * (3.0 + 4.0), expo)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(convexity_bound_eval(1.0, 1.0, 1.3, 0.0), std::domain_error);
    CHECK_THROWS_AS(corollary_bound_eval(1.0, 1.0, 0.8, 0.0), std::domain_error);
    CHECK(corollary_bound_eval(1.0, 1.0, 0.75, 9.0) == doctest::Approx(1.0));
}

TEST_CASE("L_{f,g} convexity strip evaluation") {
    double eps = 0.01;
    CHECK(lfg_convexity_eval(1.0 + eps - 1e-15, 100.0, eps) == doctest::Approx(1.0).epsilon(1e-9));
    double sigma = 15.0 / 16.0 + eps;
    CHECK(lfg_convexity_eval(sigma, 10.0, eps) ==
          doctest::Approx(std::pow(11.0, 8.0 * (1.0 + eps - sigma))).epsilon(1e-12));
    CHECK_THROWS_AS(lfg_convexity_eval(0.9, 1.0, eps), std::domain_error);
    CHECK_THROWS_AS(lfg_convexity_eval(1.02, 1.0, eps), std::domain_error);
}

TEST_CASE("rankin agreement for the self-pair at random points") {
    auto tau = tau_oracle(100000);
    std::mt19937_64 rng(5050);
    std::uniform_real_distribution<double> sig(1.25, 3.0), tt(-50.0, 50.0);
    for (int i = 0; i < 50; ++i) {
        Complex s(sig(rng), tt(rng));
        auto d = rankin_dirichlet(tau, tau, s, 100000);
        auto e = rankin_euler(tau, tau, s, 30000);
        CHECK(std::abs(d.value - e.value) <= d.tail_bound + e.tail_bound);
    }
}
