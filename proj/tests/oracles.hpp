#pragma once

// Test-only reference computations. Each one takes a different route from the
// library code it checks: brute-force series products in extended precision,
// trial division instead of sieves, dense Riemann sums instead of exact
// breakpoint integration.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using quad = boost::multiprecision::cpp_bin_float_quad;
using cquad = boost::multiprecision::cpp_complex_quad;

inline cquad to_quad(std::complex<double> z) { return cquad(quad(z.real()), quad(z.imag())); }

inline std::complex<double> to_double(const cquad& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// Coefficients of prod_j (1 - params_j X)^-1 up to X^K: each geometric series is
/// materialized as powers and the truncated product is formed by full convolution,
/// all in 113-bit precision.
inline std::vector<std::complex<double>> series_product(
    const std::vector<std::complex<double>>& params, int K) {
    std::vector<cquad> acc(K + 1, cquad(0));
    acc[0] = cquad(1);
    std::vector<cquad> geo(K + 1);
    std::vector<cquad> next(K + 1);
    for (const auto& p : params) {
        const cquad a = to_quad(p);
        geo[0] = cquad(1);
        for (int u = 1; u <= K; ++u) geo[u] = geo[u - 1] * a;
        for (int n = 0; n <= K; ++n) {
            cquad s(0);
            for (int u = 0; u <= n; ++u) s += geo[u] * acc[n - u];
            next[n] = s;
        }
        acc.swap(next);
    }
    std::vector<std::complex<double>> out;
    for (const auto& z : acc) out.push_back(to_double(z));
    return out;
}

/// sum_j params_j^k for k = 1..K by direct powering in 113-bit precision.
inline std::vector<std::complex<double>> power_sums(const std::vector<std::complex<double>>& params,
                                                    int K) {
    std::vector<std::complex<double>> out;
    for (int k = 1; k <= K; ++k) {
        cquad s(0);
        for (const auto& p : params) {
            cquad z(1);
            const cquad a = to_quad(p);
            for (int i = 0; i < k; ++i) z *= a;
            s += z;
        }
        out.push_back(to_double(s));
    }
    return out;
}

/// Rankin-Selberg local coefficients by the product over all m^2 betas.
inline std::vector<std::complex<double>> rankin_selberg(
    const std::vector<std::complex<double>>& alphas, int K) {
    std::vector<std::complex<double>> betas;
    for (const auto& a : alphas)
        for (const auto& b : alphas) betas.push_back(a * std::conj(b));
    return series_product(betas, K);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Lambda(n) by trial division.
inline double von_mangoldt(std::uint64_t n) {
    if (n < 2) return 0.0;
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

/// psi(x) = sum over prime powers p^k <= x of log p * a(p^k), looping p and k directly.
/// `a(p, k)` supplies the prime-power coefficient.
inline double psi_prime_powers(double x, const std::function<double(std::uint64_t, int)>& a) {
    double total = 0.0;
    for (std::uint64_t p = 2; static_cast<double>(p) <= x; ++p) {
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        std::uint64_t pk = p;
        for (int k = 1; static_cast<double>(pk) <= x; ++k, pk *= p)
            total += std::log(static_cast<double>(p)) * a(p, k);
    }
    return total;
}

/// Midpoint Riemann sum with `steps` cells.
inline double riemann(const std::function<double(double)>& f, double a, double b,
                      std::size_t steps) {
    const double h = (b - a) / static_cast<double>(steps);
    double s = 0.0;
    for (std::size_t i = 0; i < steps; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
    return s * h;
}

/// tau(n) for n = 1..n_max from the divisor-sum identity
///     756 tau(n) = 65 sigma_11(n) + 691 sigma_5(n) - 691 * 252 sum_{k<n} sigma_5(k) sigma_5(n-k),
/// which shares nothing with a power-series expansion. Exact for n_max <= 400.
inline std::vector<__int128> tau_divisor_sums(int n_max) {
    const auto sigma = [](int n, int e) {
        __int128 s = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) {
                __int128 p = 1;
                for (int i = 0; i < e; ++i) p *= d;
                s += p;
            }
        return s;
    };
    std::vector<__int128> s5(n_max + 1), tau(n_max + 1, 0);
    for (int n = 1; n <= n_max; ++n) s5[n] = sigma(n, 5);
    for (int n = 1; n <= n_max; ++n) {
        __int128 conv = 0;
        for (int k = 1; k < n; ++k) conv += s5[k] * s5[n - k];
        tau[n] = (65 * sigma(n, 11) + 691 * s5[n] - 691 * 252 * conv) / 756;
    }
    return tau;
}

}  // namespace oracle
