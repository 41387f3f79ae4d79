#ifndef HECKESIGN_SUMS_HPP
#define HECKESIGN_SUMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "heckesign/fit.hpp"
#include "heckesign/forms.hpp"
#include "heckesign/signscan.hpp"
#include "heckesign/summation.hpp"

namespace heckesign {

struct PrimeSumRow {
    double x = 0.0;
    double sum = 0.0;    // sum over primes p <= x of lambda(p)^2 log p
    double ratio = 0.0;  // sum / x
    double error_bound = 0.0;
};

// Prime sums with log weight on an increasing grid; one pass over the primes.
std::vector<PrimeSumRow> prime_sum_ledger(const CoefficientTable& table,
                                          const std::vector<double>& x_grid);

// sum over primes p <= sqrt(x) of lambda_f(p)^2 lambda_g(p)^2.
SumResult paired_prime_sum(const CoefficientTable& f, const CoefficientTable& g, double x);

struct IdentityCheck {
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

// (sum_{p<=sqrt x} lf(p)lg(p))^2 - sum_{p<=sqrt x} lf^2 lg^2  versus
// sum_{p != q <= sqrt x} lf(pq) lg(pq) read from the tables. Requires x <= N.
IdentityCheck offdiagonal_identity_check(const CoefficientTable& f, const CoefficientTable& g,
                                         double x, double tol);

SumResult partial_sum(const ProductSequence& seq, double x, int workers = -1);

struct FitPoint {
    double x = 0.0;
    double value = 0.0;     // block sum over (x, 2x]
    double residual = 0.0;  // fit residual in log coordinates
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
    std::vector<FitPoint> points;
};

// Least-squares slope of log(|sum over (x,2x]| + 1) against log x. Purely a
// diagnostic; raw block sums and residuals are always reported.
ExponentFit dyadic_exponent_fit(const ProductSequence& seq, const std::vector<double>& x_grid,
                                int workers = -1);

// S(x) = sum_{n<=x} lambda_f(n) lambda_g(n) log^2(x/n).
SumResult smoothed_sum(const ProductSequence& seq, double x, int workers = -1);

// sum_{n<=x} lambda_f(n)^2 lambda_g(n)^2 log^2(x/n).
SumResult smoothed_square_sum(const CoefficientTable& f, const CoefficientTable& g, double x,
                              int workers = -1);

struct LinearGrowthFit {
    double c = 0.0;                  // through-origin slope: value ~ c x
    double residual_exponent = 0.0;  // slope of log|value - c x| against log x
    std::vector<FitPoint> points;
};

LinearGrowthFit smoothed_square_fit(const CoefficientTable& f, const CoefficientTable& g,
                                    const std::vector<double>& x_grid, int workers = -1);

struct SumLedgerRow {
    double x = 0.0;
    double prime_sum_f = 0.0, prime_ratio_f = 0.0;
    double prime_sum_g = 0.0, prime_ratio_g = 0.0;
    double paired_prime_sum = 0.0;
    double partial_sum = 0.0;
    double smoothed_sum = 0.0;
    double smoothed_square_sum = 0.0;
    double max_relative_error_bound = 0.0;
};

struct SumLedger {
    std::string f_id, g_id;
    std::vector<SumLedgerRow> rows;
};

// All summatory quantities on one grid. x_grid must be strictly increasing
// with max x <= min(N_f, N_g).
SumLedger build_sum_ledger(const CoefficientTable& f, const CoefficientTable& g,
                           const std::vector<double>& x_grid, int workers = -1);

std::string sum_ledger_to_csv(const SumLedger& ledger);

}  // namespace heckesign

#endif
