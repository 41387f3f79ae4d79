#include "heckesign/primes.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace heckesign {

SpfSieve::SpfSieve(std::int64_t limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("SpfSieve: limit must be >= 1");
    if (limit > (std::int64_t(1) << 31) - 2)
        throw std::invalid_argument("SpfSieve: limit too large for 32-bit storage");
    spf_.assign(limit + 1, 0);
    pp_.assign(limit + 1, 0);
    if (limit >= 1) pp_[1] = 1;
    // Linear sieve: each composite is crossed off once, by its smallest prime.
    for (std::int64_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<std::int32_t>(n);
            pp_[n] = static_cast<std::int32_t>(n);
            primes_.push_back(n);
        }
        for (std::int64_t p : primes_) {
            if (p > spf_[n] || n * p > limit) break;
            spf_[n * p] = static_cast<std::int32_t>(p);
            pp_[n * p] = static_cast<std::int32_t>(p == spf_[n] ? pp_[n] * p : p);
        }
    }
}

std::int64_t SpfSieve::divisor_count(std::int64_t n) const {
    if (n < 1 || n > limit_) throw std::out_of_range("divisor_count: n outside sieve range");
    std::int64_t d = 1;
    while (n > 1) {
        std::int64_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        d *= e + 1;
    }
    return d;
}

std::shared_ptr<const SpfSieve> shared_sieve(std::int64_t limit) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const SpfSieve>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        // Reuse any cached sieve that already covers the request.
        auto it = cache.lower_bound(limit);
        if (it != cache.end()) return it->second;
    }
    auto sieve = std::make_shared<const SpfSieve>(limit);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.lower_bound(limit);
    if (it != cache.end()) return it->second;
    cache[limit] = sieve;
    return sieve;
}

void for_each_prime(std::int64_t lo, std::int64_t hi,
                    const std::function<void(std::int64_t)>& fn) {
    if (hi < 2 || hi < lo) return;
    lo = std::max<std::int64_t>(lo, 2);
    std::int64_t root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    while (root * root > hi) --root;
    // Base primes up to sqrt(hi).
    std::vector<char> base(root + 1, 1);
    std::vector<std::int64_t> base_primes;
    for (std::int64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += i) base[j] = 0;
    }
    for (std::int64_t p : base_primes)
        if (p >= lo && p <= hi) fn(p);

    const std::int64_t seg = 1 << 18;
    std::vector<char> mark(seg);
    for (std::int64_t start = std::max(lo, root + 1); start <= hi; start += seg) {
        std::int64_t end = std::min(hi, start + seg - 1);
        std::fill(mark.begin(), mark.begin() + (end - start + 1), 1);
        for (std::int64_t p : base_primes) {
            std::int64_t first = ((start + p - 1) / p) * p;
            if (first < p * p) first = p * p;
            for (std::int64_t j = first; j <= end; j += p) mark[j - start] = 0;
        }
        for (std::int64_t n = start; n <= end; ++n)
            if (mark[n - start]) fn(n);
    }
}

}  // namespace heckesign
