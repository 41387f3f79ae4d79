#ifndef HECKESIGN_NTT_HPP
#define HECKESIGN_NTT_HPP

#include <cstdint>
#include <vector>

namespace heckesign {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Montgomery arithmetic mod an odd prime p < 2^63.
class Montgomery64 {
public:
    explicit Montgomery64(u64 p);

    u64 modulus() const { return p_; }
    u64 to_mont(u64 x) const { return redc(static_cast<u128>(x % p_) * r2_); }
    u64 from_mont(u64 x) const { return redc(x); }
    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }  // Montgomery form
    u64 one() const { return one_; }

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }

    // Montgomery-form exponentiation; base and result in Montgomery form.
    u64 pow(u64 base, u64 exp) const;

    // Plain-integer helpers (inputs/outputs not in Montgomery form).
    u64 mulmod(u64 a, u64 b) const { return from_mont(mul(to_mont(a), to_mont(b))); }
    u64 powmod(u64 base, u64 exp) const { return from_mont(pow(to_mont(base), exp)); }
    u64 invmod(u64 a) const { return powmod(a, p_ - 2); }

private:
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * np_;
        u128 s = t + static_cast<u128>(m) * p_;
        u64 r = static_cast<u64>(s >> 64);
        return r >= p_ ? r - p_ : r;
    }

    u64 p_;
    u64 np_;   // -p^{-1} mod 2^64
    u64 r2_;   // 2^128 mod p
    u64 one_;  // 2^64 mod p
};

bool is_prime_u64(u64 n);

// Radix-2 NTT context for one prime; transform lengths up to 2^max_log2.
class NttPlan {
public:
    NttPlan(u64 prime, int max_log2);

    const Montgomery64& field() const { return mont_; }
    u64 prime() const { return prime_; }
    u64 primitive_root() const { return root_; }

    // In-place transform; a.size() must be a power of two <= 2^max_log2.
    // Values in Montgomery form.
    void transform(std::vector<u64>& a, bool inverse) const;

    // Squares the polynomial held in a (Montgomery form, length power of two),
    // in place, as a cyclic convolution of that length.
    void square(std::vector<u64>& a) const;

private:
    u64 prime_;
    Montgomery64 mont_;
    u64 root_;
    int max_log2_;
};

// Garner reconstruction of a signed value from residues modulo three fixed
// primes. Exact for |value| < p1*p2*p3 / 2; values must fit a signed 128-bit
// integer.
class Crt3 {
public:
    Crt3(u64 p1, u64 p2, u64 p3);
    i128 reconstruct(u64 r1, u64 r2, u64 r3) const;

private:
    u64 p1_, p2_, p3_;
    Montgomery64 m2_, m3_;
    u64 inv_p1_mod_p2_;
    u64 p1_mod_p3_, inv_p1p2_mod_p3_;
    u128 p1p2_;
    u128 p_all_low_;  // p1*p2*p3 mod 2^128
};

}  // namespace heckesign

#endif
