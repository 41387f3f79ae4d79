#include "heckesign/tau.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "heckesign/parallel.hpp"

namespace heckesign {

namespace {

// 62-bit NTT-friendly primes with 2-adic valuations 57, 56, 55; their product
// (~1e55) leaves huge headroom over any tau value in a 128-bit table.
constexpr u64 kP1 = 4179340454199820289ull;  // 29 * 2^57 + 1
constexpr u64 kP2 = 1945555039024054273ull;  // 27 * 2^56 + 1
constexpr u64 kP3 = 1261007895663738881ull;  // 35 * 2^55 + 1

int length_log2(std::int64_t min_len) {
    int lg = 0;
    while ((std::int64_t(1) << lg) < min_len) ++lg;
    return lg;
}

// Jacobi triple-product coefficients of prod (1-q^m)^3 up to degree deg,
// reduced mod p and placed in Montgomery form.
std::vector<u64> jacobi_cube_mod(std::int64_t deg, std::size_t len, const Montgomery64& m) {
    std::vector<u64> a(len, 0);
    for (std::int64_t k = 0;; ++k) {
        std::int64_t e = k * (k + 1) / 2;
        if (e > deg) break;
        u64 c = static_cast<u64>(2 * k + 1) % m.modulus();
        if (k % 2 == 1) c = m.modulus() - c;
        a[e] = m.to_mont(c);
    }
    return a;
}

}  // namespace

std::vector<i128> tau_qexpansion(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("tau_qexpansion: N must be >= 1");
    const std::int64_t deg = N - 1;  // tau(n) = coefficient n-1 of the 24th power
    const int lg = std::max(1, length_log2(2 * deg + 2));
    const std::size_t len = std::size_t(1) << lg;

    const u64 primes[3] = {kP1, kP2, kP3};
    std::vector<std::vector<u64>> residues(3);
    auto run_prime = [&](int i) {
        NttPlan plan(primes[i], lg);
        const Montgomery64& m = plan.field();
        std::vector<u64> a = jacobi_cube_mod(deg, len, m);
        for (int round = 0; round < 3; ++round) {
            plan.square(a);
            std::fill(a.begin() + (deg + 1), a.end(), 0);  // truncate mod q^{deg+1}
        }
        residues[i].resize(deg + 1);
        for (std::int64_t j = 0; j <= deg; ++j) residues[i][j] = m.from_mont(a[j]);
    };
    // The three residue streams are independent; results do not depend on the
    // schedule.
    if (worker_count() > 1 && deg > (1 << 16)) {
        std::thread t1(run_prime, 1), t2(run_prime, 2);
        run_prime(0);
        t1.join();
        t2.join();
    } else {
        for (int i = 0; i < 3; ++i) run_prime(i);
    }

    Crt3 crt(kP1, kP2, kP3);
    std::vector<i128> tau(N + 1, 0);
    for (std::int64_t n = 1; n <= N; ++n)
        tau[n] = crt.reconstruct(residues[0][n - 1], residues[1][n - 1], residues[2][n - 1]);
    return tau;
}

std::vector<i128> tau_pentagonal_reference(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("tau_pentagonal_reference: N must be >= 1");
    const std::int64_t deg = N - 1;
    // Pentagonal-number series prod (1-q^m) = sum (-1)^k q^{k(3k-1)/2}.
    std::vector<std::pair<std::int64_t, int>> penta;
    penta.emplace_back(0, 1);
    for (std::int64_t k = 1;; ++k) {
        std::int64_t e1 = k * (3 * k - 1) / 2;
        std::int64_t e2 = k * (3 * k + 1) / 2;
        if (e1 > deg && e2 > deg) break;
        int s = (k % 2 == 0) ? 1 : -1;
        if (e1 <= deg) penta.emplace_back(e1, s);
        if (e2 <= deg) penta.emplace_back(e2, s);
    }

    std::vector<i128> acc(deg + 1, 0);
    acc[0] = 1;
    std::vector<i128> next(deg + 1);
    for (int pass = 0; pass < 24; ++pass) {
        std::fill(next.begin(), next.end(), i128(0));
        for (const auto& [e, s] : penta) {
            if (s > 0) {
                for (std::int64_t j = 0; j + e <= deg; ++j) next[j + e] += acc[j];
            } else {
                for (std::int64_t j = 0; j + e <= deg; ++j) next[j + e] -= acc[j];
            }
        }
        acc.swap(next);
    }

    std::vector<i128> tau(N + 1, 0);
    for (std::int64_t n = 1; n <= N; ++n) tau[n] = acc[n - 1];
    return tau;
}

double tau_normalized(i128 tau_n, std::int64_t n) {
    return static_cast<double>(tau_n) / std::pow(static_cast<double>(n), 5.5);
}

}  // namespace heckesign
