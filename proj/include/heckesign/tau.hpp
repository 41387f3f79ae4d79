#ifndef HECKESIGN_TAU_HPP
#define HECKESIGN_TAU_HPP

#include <cstdint>
#include <vector>

#include "heckesign/ntt.hpp"

namespace heckesign {

// Ramanujan tau by power-series expansion of q * prod_{m>=1} (1 - q^m)^24.
// The cube of the product is the sparse Jacobi series
// sum_k (-1)^k (2k+1) q^{k(k+1)/2}, which is squared three times by NTT
// modulo three 62-bit primes and recombined by CRT, so every value is an
// exact integer. Returns tau(1..N) in slot [n]; slot [0] is zero.
std::vector<i128> tau_qexpansion(std::int64_t N);

// Independent slow route for cross-checks: 24 successive sparse
// multiplications by the pentagonal-number series prod (1 - q^m), carried in
// 128-bit integers. Intended for small N only (cost O(24 * N * sqrt(N))).
std::vector<i128> tau_pentagonal_reference(std::int64_t N);

double tau_normalized(i128 tau_n, std::int64_t n);  // tau(n) / n^{11/2}

}  // namespace heckesign

#endif
