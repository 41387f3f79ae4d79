#ifndef HECKESIGN_PRIMES_HPP
#define HECKESIGN_PRIMES_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace heckesign {

// Smallest-prime-factor sieve. spf(n) is the least prime dividing n and
// prime_power_part(n) the full power of spf(n) in n, so every n > 1 splits
// as prime_power_part(n) * cofactor with the two parts coprime.
class SpfSieve {
public:
    explicit SpfSieve(std::int64_t limit);

    std::int64_t limit() const { return limit_; }
    bool is_prime(std::int64_t n) const { return n >= 2 && spf_[n] == n; }
    std::int64_t spf(std::int64_t n) const { return spf_[n]; }
    std::int64_t prime_power_part(std::int64_t n) const { return pp_[n]; }
    const std::vector<std::int64_t>& primes() const { return primes_; }

    // Number of divisors, from the spf factorization.
    std::int64_t divisor_count(std::int64_t n) const;

private:
    std::int64_t limit_;
    std::vector<std::int32_t> spf_;
    std::vector<std::int32_t> pp_;
    std::vector<std::int64_t> primes_;
};

// Process-wide sieve cache so concurrent table builds share one sieve per
// size. Returned sieves are immutable.
std::shared_ptr<const SpfSieve> shared_sieve(std::int64_t limit);

// Segmented Eratosthenes iteration over primes in [lo, hi]; memory O(sqrt(hi))
// plus one segment. Usable beyond any sieve held in memory.
void for_each_prime(std::int64_t lo, std::int64_t hi,
                    const std::function<void(std::int64_t)>& fn);

}  // namespace heckesign

#endif
