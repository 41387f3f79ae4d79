#include "heckesign/sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "heckesign/parallel.hpp"
#include "heckesign/primes.hpp"

namespace heckesign {

namespace {

void require_increasing(const std::vector<double>& grid, double max_allowed, const char* who) {
    if (grid.empty()) throw std::invalid_argument(std::string(who) + ": empty grid");
    double prev = 0.0;
    for (double x : grid) {
        if (!(x > prev)) throw std::invalid_argument(std::string(who) + ": grid not strictly increasing");
        prev = x;
    }
    if (grid.back() > max_allowed)
        throw std::out_of_range(std::string(who) + ": max x exceeds table length");
}

}  // namespace

std::vector<PrimeSumRow> prime_sum_ledger(const CoefficientTable& table,
                                          const std::vector<double>& x_grid) {
    require_increasing(x_grid, static_cast<double>(table.size()), "prime_sum_ledger");
    auto sieve = shared_sieve(table.size());
    std::vector<PrimeSumRow> rows(x_grid.size());
    CompensatedSum acc;
    std::size_t i = 0;
    for (std::int64_t p : sieve->primes()) {
        if (static_cast<double>(p) > x_grid.back()) break;
        while (i < x_grid.size() && static_cast<double>(p) > x_grid[i]) {
            rows[i] = {x_grid[i], acc.value(), acc.value() / x_grid[i], acc.error_bound()};
            ++i;
        }
        if (i == x_grid.size()) break;
        double lp = table(p);
        acc.add(lp * lp * std::log(static_cast<double>(p)));
    }
    while (i < x_grid.size()) {
        rows[i] = {x_grid[i], acc.value(), acc.value() / x_grid[i], acc.error_bound()};
        ++i;
    }
    return rows;
}

SumResult paired_prime_sum(const CoefficientTable& f, const CoefficientTable& g, double x) {
    double r = std::sqrt(x);
    std::int64_t bound = static_cast<std::int64_t>(std::floor(r));
    while (static_cast<double>(bound + 1) <= r) ++bound;
    if (bound > std::min(f.size(), g.size()))
        throw std::out_of_range("paired_prime_sum: sqrt(x) exceeds table length");
    auto sieve = shared_sieve(std::max<std::int64_t>(bound, 2));
    CompensatedSum acc;
    for (std::int64_t p : sieve->primes()) {
        if (p > bound) break;
        double a = f(p), b = g(p);
        acc.add(a * a * b * b);
    }
    return finish(acc);
}

IdentityCheck offdiagonal_identity_check(const CoefficientTable& f, const CoefficientTable& g,
                                         double x, double tol) {
    const std::int64_t N = std::min(f.size(), g.size());
    if (x > static_cast<double>(N))
        throw std::out_of_range("offdiagonal_identity_check: x exceeds table length");
    std::int64_t bound = static_cast<std::int64_t>(std::floor(std::sqrt(x)));
    while (static_cast<double>((bound + 1)) <= std::sqrt(x)) ++bound;
    auto sieve = shared_sieve(std::max<std::int64_t>(bound, 2));
    std::vector<std::int64_t> ps;
    for (std::int64_t p : sieve->primes()) {
        if (p > bound) break;
        ps.push_back(p);
    }

    CompensatedSum cross, diag;
    for (std::int64_t p : ps) {
        cross.add(f(p) * g(p));
        double a = f(p), b = g(p);
        diag.add(a * a * b * b);
    }
    double s = cross.value();
    double lhs = s * s - diag.value();

    CompensatedSum off;
    for (std::int64_t p : ps)
        for (std::int64_t q : ps) {
            if (p == q) continue;
            off.add(f(p * q) * g(p * q));
        }
    double rhs = off.value();

    IdentityCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.pass = std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs));
    return out;
}

SumResult partial_sum(const ProductSequence& seq, double x, int workers) {
    if (x > static_cast<double>(seq.size()))
        throw std::out_of_range("partial_sum: x exceeds sequence length");
    std::int64_t hi = static_cast<std::int64_t>(std::floor(x));
    if (hi < 1) return {};
    return parallel_sum(1, hi, [&](std::int64_t n) { return seq(n); }, workers);
}

ExponentFit dyadic_exponent_fit(const ProductSequence& seq, const std::vector<double>& x_grid,
                                int workers) {
    require_increasing(x_grid, static_cast<double>(seq.size()) / 2.0, "dyadic_exponent_fit");
    ExponentFit out;
    std::vector<double> lx, ly;
    for (double x : x_grid) {
        std::int64_t lo = static_cast<std::int64_t>(std::floor(x)) + 1;
        std::int64_t hi = static_cast<std::int64_t>(std::floor(2.0 * x));
        double block = 0.0;
        if (lo <= hi)
            block = parallel_sum(lo, hi, [&](std::int64_t n) { return seq(n); }, workers).value;
        FitPoint pt;
        pt.x = x;
        pt.value = block;
        out.points.push_back(pt);
        lx.push_back(std::log(x));
        ly.push_back(std::log(std::abs(block) + 1.0));
    }
    LineFit fit = fit_line(lx, ly);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        out.points[i].residual = ly[i] - (fit.intercept + fit.slope * lx[i]);
        out.max_abs_residual = std::max(out.max_abs_residual, std::abs(out.points[i].residual));
    }
    return out;
}

SumResult smoothed_sum(const ProductSequence& seq, double x, int workers) {
    if (x > static_cast<double>(seq.size()))
        throw std::out_of_range("smoothed_sum: x exceeds sequence length");
    std::int64_t hi = static_cast<std::int64_t>(std::floor(x));
    if (hi < 1) return {};
    double logx = std::log(x);
    return parallel_sum(
        1, hi,
        [&](std::int64_t n) {
            double w = logx - std::log(static_cast<double>(n));
            return seq(n) * w * w;
        },
        workers);
}

SumResult smoothed_square_sum(const CoefficientTable& f, const CoefficientTable& g, double x,
                              int workers) {
    if (x > static_cast<double>(std::min(f.size(), g.size())))
        throw std::out_of_range("smoothed_square_sum: x exceeds table length");
    std::int64_t hi = static_cast<std::int64_t>(std::floor(x));
    if (hi < 1) return {};
    double logx = std::log(x);
    return parallel_sum(
        1, hi,
        [&](std::int64_t n) {
            double a = f(n), b = g(n);
            double w = logx - std::log(static_cast<double>(n));
            return a * a * b * b * w * w;
        },
        workers);
}

LinearGrowthFit smoothed_square_fit(const CoefficientTable& f, const CoefficientTable& g,
                                    const std::vector<double>& x_grid, int workers) {
    require_increasing(x_grid, static_cast<double>(std::min(f.size(), g.size())),
                       "smoothed_square_fit");
    LinearGrowthFit out;
    CompensatedSum svx, sxx;
    for (double x : x_grid) {
        FitPoint pt;
        pt.x = x;
        pt.value = smoothed_square_sum(f, g, x, workers).value;
        out.points.push_back(pt);
        svx.add(pt.value * x);
        sxx.add(x * x);
    }
    out.c = svx.value() / sxx.value();
    std::vector<double> lx, lr;
    for (auto& pt : out.points) {
        pt.residual = pt.value - out.c * pt.x;
        if (pt.residual != 0.0) {
            lx.push_back(std::log(pt.x));
            lr.push_back(std::log(std::abs(pt.residual)));
        }
    }
    out.residual_exponent = lx.size() >= 2 ? fit_line(lx, lr).slope : 0.0;
    return out;
}

SumLedger build_sum_ledger(const CoefficientTable& f, const CoefficientTable& g,
                           const std::vector<double>& x_grid, int workers) {
    const double N = static_cast<double>(std::min(f.size(), g.size()));
    require_increasing(x_grid, N, "build_sum_ledger");
    SumLedger ledger;
    ledger.f_id = f.descriptor().id;
    ledger.g_id = g.descriptor().id;
    auto psf = prime_sum_ledger(f, x_grid);
    auto psg = prime_sum_ledger(g, x_grid);
    ProductSequence seq(f, g);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        SumLedgerRow row;
        row.x = x_grid[i];
        row.prime_sum_f = psf[i].sum;
        row.prime_ratio_f = psf[i].ratio;
        row.prime_sum_g = psg[i].sum;
        row.prime_ratio_g = psg[i].ratio;
        auto paired = paired_prime_sum(f, g, x_grid[i]);
        auto part = partial_sum(seq, x_grid[i], workers);
        auto smooth = smoothed_sum(seq, x_grid[i], workers);
        auto smooth_sq = smoothed_square_sum(f, g, x_grid[i], workers);
        row.paired_prime_sum = paired.value;
        row.partial_sum = part.value;
        row.smoothed_sum = smooth.value;
        row.smoothed_square_sum = smooth_sq.value;
        row.max_relative_error_bound =
            std::max({paired.relative_error_bound, part.relative_error_bound,
                      smooth.relative_error_bound, smooth_sq.relative_error_bound});
        if (!std::isfinite(row.max_relative_error_bound)) row.max_relative_error_bound = 0.0;
        ledger.rows.push_back(row);
    }
    return ledger;
}

std::string sum_ledger_to_csv(const SumLedger& ledger) {
    std::ostringstream out;
    out << "x,prime_sum_f,prime_ratio_f,prime_sum_g,prime_ratio_g,paired_prime_sum,"
           "partial_sum,smoothed_sum,smoothed_square_sum,max_relative_error_bound\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.15g", v);
        out << buf << sep;
    };
    for (const auto& r : ledger.rows) {
        put(r.x, ',');
        put(r.prime_sum_f, ',');
        put(r.prime_ratio_f, ',');
        put(r.prime_sum_g, ',');
        put(r.prime_ratio_g, ',');
        put(r.paired_prime_sum, ',');
        put(r.partial_sum, ',');
        put(r.smoothed_sum, ',');
        put(r.smoothed_square_sum, ',');
        put(r.max_relative_error_bound, '\n');
    }
    return out.str();
}

}  // namespace heckesign
