#include "heckesign/ntt.hpp"

#include <stdexcept>

namespace heckesign {

Montgomery64::Montgomery64(u64 p) : p_(p) {
    if (p < 3 || p % 2 == 0 || p >= (u64(1) << 63))
        throw std::invalid_argument("Montgomery64: modulus must be odd, 3 <= p < 2^63");
    u64 inv = p;  // Newton iteration doubles correct bits each round
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    np_ = ~inv + 1;  // -p^{-1} mod 2^64
    u128 r = (static_cast<u128>(1) << 64) % p;
    one_ = static_cast<u64>(r);
    r2_ = static_cast<u64>((r * r) % p);
}

u64 Montgomery64::pow(u64 base, u64 exp) const {
    u64 result = one_;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    Montgomery64 m(n);
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = m.powmod(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = m.mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

std::vector<u64> factor_odd_part(u64 m) {
    std::vector<u64> fs;
    for (u64 q = 3; q * q <= m; q += 2) {
        if (m % q == 0) {
            fs.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) fs.push_back(m);
    return fs;
}

u64 find_primitive_root(const Montgomery64& m) {
    u64 p = m.modulus();
    u64 phi = p - 1;
    std::vector<u64> qs = {2};
    u64 odd = phi;
    while (odd % 2 == 0) odd /= 2;
    for (u64 q : factor_odd_part(odd)) qs.push_back(q);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 q : qs) {
            if (m.powmod(g, phi / q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

}  // namespace

NttPlan::NttPlan(u64 prime, int max_log2) : prime_(prime), mont_(prime), max_log2_(max_log2) {
    if (!is_prime_u64(prime)) throw std::invalid_argument("NttPlan: modulus is not prime");
    if (((prime - 1) >> max_log2) << max_log2 != prime - 1)
        throw std::invalid_argument("NttPlan: 2^max_log2 does not divide p-1");
    root_ = find_primitive_root(mont_);
}

void NttPlan::transform(std::vector<u64>& a, bool inverse) const {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("NttPlan: length not a power of two");
    int lg = 0;
    while ((std::size_t(1) << lg) < n) ++lg;
    if (lg > max_log2_) throw std::invalid_argument("NttPlan: length exceeds plan capacity");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const Montgomery64& m = mont_;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 wlen = m.pow(m.to_mont(root_), (prime_ - 1) / len);
        if (inverse) wlen = m.pow(wlen, prime_ - 2);
        for (std::size_t i = 0; i < n; i += len) {
            u64 w = m.one();
            for (std::size_t j = 0; j < len / 2; ++j) {
                u64 u = a[i + j];
                u64 v = m.mul(a[i + j + len / 2], w);
                a[i + j] = m.add(u, v);
                a[i + j + len / 2] = m.sub(u, v);
                w = m.mul(w, wlen);
            }
        }
    }

    if (inverse) {
        u64 n_inv = m.pow(m.to_mont(n % prime_), prime_ - 2);
        for (auto& x : a) x = m.mul(x, n_inv);
    }
}

void NttPlan::square(std::vector<u64>& a) const {
    transform(a, false);
    for (auto& x : a) x = mont_.mul(x, x);
    transform(a, true);
}

Crt3::Crt3(u64 p1, u64 p2, u64 p3) : p1_(p1), p2_(p2), p3_(p3), m2_(p2), m3_(p3) {
    inv_p1_mod_p2_ = m2_.invmod(p1 % p2);
    p1_mod_p3_ = p1 % p3;
    u64 p1p2_mod_p3 = m3_.mulmod(p1 % p3, p2 % p3);
    inv_p1p2_mod_p3_ = m3_.invmod(p1p2_mod_p3);
    p1p2_ = static_cast<u128>(p1) * p2;
    p_all_low_ = p1p2_ * static_cast<u128>(p3);  // wraps mod 2^128 by design
}

i128 Crt3::reconstruct(u64 r1, u64 r2, u64 r3) const {
    u64 c1 = r1;
    u64 c2 = m2_.mulmod(m2_.sub(r2, c1 % p2_), inv_p1_mod_p2_);
    u128 low = static_cast<u128>(c1) + static_cast<u128>(c2) * p1_;  // exact, < p1*p2
    u64 low_mod_p3 = static_cast<u64>(low % p3_);
    u64 c3 = m3_.mulmod(m3_.sub(r3, low_mod_p3), inv_p1p2_mod_p3_);
    u128 x = low + static_cast<u128>(c3) * p1p2_;  // mod 2^128
    if (c3 > p3_ / 2) x -= p_all_low_;             // value is negative: subtract p1*p2*p3
    return static_cast<i128>(x);
}

}  // namespace heckesign
