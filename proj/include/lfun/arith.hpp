#pragma once

// Elementary arithmetic tables: smallest-prime-factor sieve and the
// von Mangoldt function built on top of it.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfun/errors.hpp"

namespace lfun {

/// Prime power decomposition n = p^k with its prime and exponent.
struct PrimePower {
    std::uint64_t p = 0;
    unsigned k = 0;
};

/// Smallest-prime-factor table for 1..limit. Immutable after construction.
class PrimeSieve {
public:
    explicit PrimeSieve(std::uint64_t limit) : spf_(limit + 1, 0) {
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            primes_.push_back(static_cast<std::uint32_t>(i));
            spf_[i] = static_cast<std::uint32_t>(i);
            for (std::uint64_t j = i * i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }

    std::uint64_t limit() const { return spf_.size() - 1; }

    std::uint64_t smallest_factor(std::uint64_t n) const {
        check(n);
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const { return n >= 2 && smallest_factor(n) == n; }

    /// Returns {p, k} if n = p^k with k >= 1, otherwise {0, 0}.
    PrimePower prime_power(std::uint64_t n) const {
        if (n < 2) return {};
        const std::uint64_t p = smallest_factor(n);
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        return n == 1 ? PrimePower{p, k} : PrimePower{};
    }

    /// Splits n into (p^k, n / p^k) where p is the smallest prime factor.
    std::pair<std::uint64_t, std::uint64_t> split_smallest(std::uint64_t n) const {
        const std::uint64_t p = smallest_factor(n);
        std::uint64_t pk = 1;
        while (n % p == 0) {
            n /= p;
            pk *= p;
        }
        return {pk, n};
    }

    std::span<const std::uint32_t> primes() const { return primes_; }

private:
    void check(std::uint64_t n) const {
        if (n >= spf_.size())
            throw CapacityError("sieve holds 1.." + std::to_string(limit()) + ", asked for " +
                                std::to_string(n));
    }

    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Lambda(n) for 0 <= n <= n_max: log p when n = p^k, else 0.
inline std::vector<double> von_mangoldt_table(std::uint64_t n_max) {
    if (n_max < 2) throw std::invalid_argument("von_mangoldt_table: n_max must be >= 2");
    const PrimeSieve sieve(n_max);
    std::vector<double> table(n_max + 1, 0.0);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        const auto pp = sieve.prime_power(n);
        if (pp.k != 0) table[n] = std::log(static_cast<double>(pp.p));
    }
    return table;
}

/// Principal character modulo N: 1 if gcd(n, N) = 1, else 0.
inline int principal_character(std::uint64_t n, std::uint64_t level) {
    return std::gcd(n, level) == 1 ? 1 : 0;
}

}  // namespace lfun
