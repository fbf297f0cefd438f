#pragma once

// Real multiplicative coefficient series of holomorphic newforms.
//
// Two generators: the Ramanujan Delta function (weight 12, level 1) by exact
// power-series expansion of q prod (1 - q^j)^24, and Hecke-multiplicative
// extension of arbitrary prime eigenvalues through the local relation
// lambda(p^{j+1}) = lambda(p) lambda(p^j) - chi(p) lambda(p^{j-1}).

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lfun/arith.hpp"
#include "lfun/errors.hpp"
#include "lfun/int128.hpp"

namespace lfun {

/// Absolute tolerance for Hecke relations and the Deligne bound on normalized values.
inline constexpr double kHeckeTol = 1e-10;

enum class Generator { eta_delta, hecke_extend, file };

struct NewformSpec {
    int weight = 12;
    std::uint64_t level = 1;
    std::string label;
    Generator generator = Generator::file;

    void validate() const {
        if (weight < 2 || weight % 2 != 0)
            throw InvariantError("weight must be an even integer >= 2");
        if (level < 1) throw InvariantError("level must be positive");
    }
};

/// lambda(n) for n = 1..n_max, stored at index n (index 0 holds 0).
struct CoefficientSeries {
    NewformSpec spec;
    std::vector<double> values;
    /// a_f(n) n^{(k-1)/2} as exact integers, when the generator produces them.
    std::optional<std::vector<int128>> integer_values;

    std::uint64_t n_max() const { return values.empty() ? 0 : values.size() - 1; }
    bool exact() const { return integer_values.has_value(); }
    double operator[](std::uint64_t n) const { return values[n]; }

    /// Sign of lambda(n); exact when integer values exist, else with the given dead band.
    int sign(std::uint64_t n, double tol = 1e-12) const {
        if (integer_values) {
            const int128 v = (*integer_values)[n];
            return v > 0 ? 1 : (v < 0 ? -1 : 0);
        }
        const double v = values[n];
        return v > tol ? 1 : (v < -tol ? -1 : 0);
    }

    /// Wraps plain values (index n holds lambda(n); index 0 ignored).
    static CoefficientSeries from_values(std::vector<double> v, NewformSpec spec = {}) {
        if (!v.empty()) v[0] = 0.0;
        return CoefficientSeries{std::move(spec), std::move(v), std::nullopt};
    }

    /// Checks lambda(1) = 1 and finiteness.
    void validate(double tol = 1e-12) const {
        spec.validate();
        if (n_max() < 1) throw InvariantError("series must contain n = 1");
        if (std::abs(values[1] - 1.0) > tol) throw InvariantError("lambda(1) must equal 1");
        for (std::uint64_t n = 1; n <= n_max(); ++n)
            if (!std::isfinite(values[n]))
                throw InvariantError("non-finite coefficient at n = " + std::to_string(n));
    }
};

namespace detail::ntt {

// NTT-friendly primes p = c 2^e + 1 (e >= 23) with a primitive root each.
// The product is about 5.9e34, so symmetric residues recover |v| < 2.9e34.
inline constexpr std::array<std::uint32_t, 4> kPrimes = {998244353u, 167772161u, 469762049u,
                                                         754974721u};
inline constexpr std::array<std::uint32_t, 4> kRoots = {3u, 3u, 3u, 11u};

inline std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t mod) {
    std::uint64_t r = 1;
    b %= mod;
    while (e) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline void transform(std::vector<std::uint32_t>& a, bool inverse, std::uint32_t mod,
                      std::uint32_t root) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = pow_mod(root, (mod - 1) / len, mod);
        if (inverse) w = pow_mod(w, mod - 2, mod);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wn = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::uint64_t u = a[i + k];
                const std::uint64_t v = a[i + k + len / 2] * wn % mod;
                a[i + k] = static_cast<std::uint32_t>((u + v) % mod);
                a[i + k + len / 2] = static_cast<std::uint32_t>((u + mod - v) % mod);
                wn = wn * w % mod;
            }
        }
    }
    if (inverse) {
        const std::uint64_t inv_n = pow_mod(n, mod - 2, mod);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % mod);
    }
}

/// a * b mod `mod`, truncated to `len` coefficients.
inline std::vector<std::uint32_t> multiply(std::vector<std::uint32_t> a,
                                           std::vector<std::uint32_t> b, std::size_t len,
                                           std::uint32_t mod, std::uint32_t root) {
    std::size_t n = 1;
    while (n < 2 * len) n <<= 1;
    a.resize(n, 0);
    b.resize(n, 0);
    transform(a, false, mod, root);
    transform(b, false, mod, root);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * b[i] % mod);
    transform(a, true, mod, root);
    a.resize(len);
    return a;
}

/// Garner reconstruction of the symmetric representative from four residues.
inline int128 crt_symmetric(const std::array<std::uint32_t, 4>& r) {
    // mixed-radix digits: v = d0 + d1 m0 + d2 m0 m1 + d3 m0 m1 m2
    std::array<std::uint64_t, 4> d{};
    for (std::size_t i = 0; i < 4; ++i) {
        const std::uint64_t mi = kPrimes[i];
        std::uint64_t x = r[i] % mi;
        std::uint64_t prod = 1;
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < i; ++j) {
            acc = (acc + d[j] % mi * prod) % mi;
            prod = prod * (kPrimes[j] % mi) % mi;
        }
        x = (x + mi - acc) % mi;
        d[i] = x * pow_mod(prod, mi - 2, static_cast<std::uint32_t>(mi)) % mi;
    }
    int128 v = 0;
    int128 radix = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        v += static_cast<int128>(d[i]) * radix;
        radix *= kPrimes[i];
    }
    if (v > radix / 2) v -= radix;
    return v;
}

}  // namespace detail::ntt

/// How generate_delta expands q prod (1 - q^j)^24.
enum class DeltaStrategy {
    /// Euler's pentagonal series for prod (1 - q^j), then exact squaring chains
    /// (P^2, P^4, P^8, P^16, P^16 P^8) by number-theoretic transforms modulo four
    /// primes with CRT reconstruction.
    pentagonal_convolution,
    /// Direct truncated multiplication of every factor (1 - q^j), then 23
    /// schoolbook products. O(n_max^2), for cross-checking only.
    naive_product,
};

/// Largest n_max accepted by generate_delta. With |tau(n)| <= d(n) n^{11/2}
/// and d(n) <= 200 below this point, every tau(n) stays under half the CRT
/// modulus (about 2.9e34) and well inside a signed 128-bit integer.
inline constexpr std::uint64_t kDeltaMaxN = 500000;

namespace detail {

inline std::vector<int128> delta_pentagonal(std::size_t len) {
    using namespace ntt;
    std::array<std::vector<std::uint32_t>, 4> p24;
    for (std::size_t pi = 0; pi < kPrimes.size(); ++pi) {
        const std::uint32_t mod = kPrimes[pi];
        std::vector<std::uint32_t> base(len, 0);
        // prod (1 - q^j) = sum_k (-1)^k q^{k(3k-1)/2}, k over all integers
        base[0] = 1;
        for (std::int64_t k = 1;; ++k) {
            const auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
            const auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
            if (e1 >= len) break;
            const std::uint32_t c = (k % 2 == 0) ? 1u : mod - 1u;
            base[e1] = c;
            if (e2 < len) base[e2] = c;
        }
        const std::uint32_t g = kRoots[pi];
        auto p2 = multiply(base, base, len, mod, g);
        auto p4 = multiply(p2, p2, len, mod, g);
        auto p8 = multiply(p4, p4, len, mod, g);
        auto p16 = multiply(p8, p8, len, mod, g);
        p24[pi] = multiply(std::move(p16), std::move(p8), len, mod, g);
    }
    std::vector<int128> out(len);
    for (std::size_t i = 0; i < len; ++i)
        out[i] = ntt::crt_symmetric({p24[0][i], p24[1][i], p24[2][i], p24[3][i]});
    return out;
}

inline int128 checked_mul_add(int128 acc, int128 a, int128 b) {
    int128 prod;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &acc))
        throw OverflowError("128-bit overflow in naive Delta expansion");
    return acc;
}

inline std::vector<int128> delta_naive(std::size_t len) {
    std::vector<int128> base(len, 0);
    base[0] = 1;
    for (std::size_t j = 1; j < len; ++j)
        for (std::size_t i = len - 1; i >= j; --i) base[i] -= base[i - j];
    std::vector<int128> acc = base;
    for (int rep = 1; rep < 24; ++rep) {
        std::vector<int128> next(len, 0);
        for (std::size_t i = 0; i < len; ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; i + j < len; ++j)
                if (base[j] != 0) next[i + j] = checked_mul_add(next[i + j], acc[i], base[j]);
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

/// Ramanujan's Delta: integer_values[n] = tau(n), values[n] = tau(n) / n^{11/2}.
inline CoefficientSeries generate_delta(std::uint64_t n_max,
                                        DeltaStrategy strategy = DeltaStrategy::pentagonal_convolution) {
    if (n_max < 1) throw std::invalid_argument("generate_delta: n_max must be >= 1");
    if (n_max > kDeltaMaxN)
        throw OverflowError("tau(n) for n_max = " + std::to_string(n_max) +
                            " exceeds the exact range; limit is " + std::to_string(kDeltaMaxN));
    const auto len = static_cast<std::size_t>(n_max);
    const auto coeffs = strategy == DeltaStrategy::pentagonal_convolution
                            ? detail::delta_pentagonal(len)
                            : detail::delta_naive(len);

    CoefficientSeries s;
    s.spec = NewformSpec{12, 1, "Delta", Generator::eta_delta};
    s.values.assign(n_max + 1, 0.0);
    std::vector<int128> tau(n_max + 1, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        tau[n] = coeffs[n - 1];
        s.values[n] = static_cast<double>(tau[n]) / std::pow(static_cast<double>(n), 5.5);
    }
    s.integer_values = std::move(tau);
    return s;
}

using PrimeEigenvalues = std::map<std::uint64_t, double>;

/// Fills lambda(n), n <= n_max, from lambda(p) for primes p <= n_max.
inline CoefficientSeries extend_multiplicatively(const PrimeEigenvalues& prime_lambdas,
                                                 NewformSpec spec, std::uint64_t n_max) {
    spec.validate();
    if (n_max < 1) throw std::invalid_argument("extend_multiplicatively: n_max must be >= 1");
    spec.generator = Generator::hecke_extend;
    const PrimeSieve sieve(std::max<std::uint64_t>(n_max, 2));
    std::vector<double> v(n_max + 1, 0.0);
    v[1] = 1.0;
    for (const std::uint64_t p : sieve.primes()) {
        if (p > n_max) break;
        const auto it = prime_lambdas.find(p);
        if (it == prime_lambdas.end()) throw MissingPrimeError(p);
        const double lp = it->second;
        const double chi = principal_character(p, spec.level);
        double prev = 1.0;
        double cur = lp;
        v[p] = lp;
        for (std::uint64_t pk = p; pk <= n_max / p;) {
            pk *= p;
            const double next = lp * cur - chi * prev;
            v[pk] = next;
            prev = cur;
            cur = next;
        }
    }
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        const auto [pk, rest] = sieve.split_smallest(n);
        if (rest != 1) v[n] = v[pk] * v[rest];
    }
    return CoefficientSeries{std::move(spec), std::move(v), std::nullopt};
}

/// Prime eigenvalues lambda(p) of an existing series, for p <= n_max.
inline PrimeEigenvalues prime_eigenvalues(const CoefficientSeries& series) {
    PrimeEigenvalues out;
    const PrimeSieve sieve(std::max<std::uint64_t>(series.n_max(), 2));
    for (const std::uint64_t p : sieve.primes())
        if (p <= series.n_max()) out.emplace(p, series[p]);
    return out;
}

struct HeckePair {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    double residual = 0.0;
};

struct HeckeReport {
    std::size_t pairs = 0;
    std::size_t non_coprime_pairs = 0;
    double max_residual = 0.0;
    HeckePair worst;
    std::vector<HeckePair> failures;
    bool pass() const { return failures.empty(); }
};

/// |lambda(m) lambda(n) - sum_{d | (m,n)} chi(d) lambda(mn/d^2)|.
inline double hecke_residual(const CoefficientSeries& s, std::uint64_t m, std::uint64_t n) {
    if (m * n > s.n_max()) throw CapacityError("m n exceeds the series length");
    const std::uint64_t g = std::gcd(m, n);
    double rhs = 0.0;
    for (std::uint64_t d = 1; d <= g; ++d)
        if (g % d == 0 && principal_character(d, s.spec.level))
            rhs += s[m * n / (d * d)];
    return std::abs(s[m] * s[n] - rhs);
}

/// Samples `trials` pairs with mn <= n_max; every other pair shares a factor so
/// the full divisor-sum form is exercised.
inline HeckeReport verify_hecke_relations(const CoefficientSeries& s, std::size_t trials,
                                          std::uint64_t seed, double tol = kHeckeTol) {
    const std::uint64_t n_max = s.n_max();
    if (n_max < 4) throw std::invalid_argument("series too short for Hecke sampling");
    std::mt19937_64 rng(seed);
    constexpr std::array<std::uint64_t, 4> shared = {2, 3, 5, 7};
    HeckeReport report;
    for (std::size_t t = 0; t < trials; ++t) {
        std::uint64_t m = 0;
        std::uint64_t n = 0;
        if (t % 2 == 1) {
            const std::uint64_t g =
                shared[std::uniform_int_distribution<std::size_t>(0, shared.size() - 1)(rng)];
            const std::uint64_t cap = n_max / (g * g);
            if (cap < 1) continue;
            const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(
                1, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::sqrt(cap))))(rng);
            const std::uint64_t b =
                std::uniform_int_distribution<std::uint64_t>(1, cap / a)(rng);
            m = g * a;
            n = g * b;
            ++report.non_coprime_pairs;
        } else {
            const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max)));
            m = std::uniform_int_distribution<std::uint64_t>(1, root)(rng);
            n = std::uniform_int_distribution<std::uint64_t>(1, n_max / m)(rng);
        }
        const double r = hecke_residual(s, m, n);
        ++report.pairs;
        if (report.pairs == 1 || r > report.max_residual) {
            report.max_residual = r;
            report.worst = {m, n, r};
        }
        if (r > tol) report.failures.push_back({m, n, r});
    }
    return report;
}

struct DeligneReport {
    double max_abs = 0.0;
    std::uint64_t argmax = 0;
    bool pass = true;
};

/// max |lambda(p)| over primes p <= n_max not dividing the level; passes iff <= 2 + tol.
inline DeligneReport verify_deligne(const CoefficientSeries& s, double tol = kHeckeTol) {
    DeligneReport r;
    const PrimeSieve sieve(std::max<std::uint64_t>(s.n_max(), 2));
    for (const std::uint64_t p : sieve.primes()) {
        if (p > s.n_max()) break;
        if (s.spec.level % p == 0) continue;
        const double a = std::abs(s[p]);
        if (a > r.max_abs) {
            r.max_abs = a;
            r.argmax = p;
        }
    }
    r.pass = r.max_abs <= 2.0 + tol;
    return r;
}

}  // namespace lfun
