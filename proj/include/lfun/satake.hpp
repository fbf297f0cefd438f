#pragma once

// Local algebra on Satake parameters at a single prime.
//
// For parameters alpha_1..alpha_m the local factor is prod_j (1 - alpha_j X)^-1
// with X = p^-s. Its coefficients are the complete homogeneous sums
// lambda(p^n); the logarithmic derivative has the power sums
// a(p^n) = sum_j alpha_j^n. The two are linked by the Newton recursion
//
//     n lambda(p^n) = sum_{u=1}^{n} a(p^u) lambda(p^{n-u}),   lambda(1) = 1.
//
// The Rankin-Selberg square pi x pi~ has the m^2 parameters
// beta = alpha_j * conj(alpha_j'), whose power sums are |a(p^n)|^2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lfun/errors.hpp"

namespace lfun {

using complex = std::complex<double>;

/// Default absolute tolerance for algebraic identities.
inline constexpr double kIdentityTol = 1e-10;
/// Default tolerance for round trips (e.g. Hecke eigenvalue -> roots -> trace).
inline constexpr double kRoundTripTol = 1e-12;

/// The m local parameters of a representation at one prime.
struct SatakeLocalData {
    std::uint64_t p = 2;
    std::vector<complex> alphas;
    bool unramified = true;
    /// When set, every nonzero parameter must lie on the unit circle.
    bool unimodular = false;

    std::size_t degree() const { return alphas.size(); }

    complex determinant() const {
        complex d{1.0, 0.0};
        for (const auto& a : alphas) d *= a;
        return d;
    }

    /// Throws InvariantError if the trivial bound or the unimodular marker fails.
    void validate(double tol = kIdentityTol) const {
        if (alphas.empty()) throw InvariantError("Satake data needs at least one parameter");
        if (unramified) {
            const double bound = std::sqrt(static_cast<double>(p)) + tol;
            for (const auto& a : alphas)
                if (std::abs(a) > bound)
                    throw InvariantError("|alpha| exceeds p^(1/2) at an unramified prime");
        }
        if (unimodular) {
            for (const auto& a : alphas) {
                if (a == complex{}) continue;  // ramified zero entries are exempt
                if (std::abs(std::abs(a) - 1.0) > tol)
                    throw InvariantError("unimodular marker set but |alpha| != 1");
            }
        }
    }
};

/// a(p^k) = sum_j alpha_j^k for k = 1..K; element i holds k = i + 1.
inline std::vector<complex> power_sums(const SatakeLocalData& params, int K) {
    if (K < 1) throw std::invalid_argument("power_sums: K must be >= 1");
    std::vector<complex> out(static_cast<std::size_t>(K), complex{});
    for (const auto& alpha : params.alphas) {
        complex z = alpha;
        for (int k = 0; k < K; ++k) {
            out[k] += z;
            z *= alpha;
        }
    }
    return out;
}

namespace detail {

// Newton recursion from power sums a[0..K-1] (a[i] is the (i+1)-th power sum).
template <typename T>
std::vector<T> newton_from_power_sums(const std::vector<T>& a, int K) {
    std::vector<T> ell(static_cast<std::size_t>(K) + 1, T{});
    ell[0] = T{1};
    for (int n = 1; n <= K; ++n) {
        T acc{};
        for (int u = 1; u <= n; ++u) acc += a[u - 1] * ell[n - u];
        ell[n] = acc / static_cast<double>(n);
    }
    return ell;
}

inline double scale_of(double v) { return std::max(1.0, std::abs(v)); }

}  // namespace detail

/// lambda(p^k) for k = 0..K via the Newton recursion.
inline std::vector<complex> homogeneous_sums(const SatakeLocalData& params, int K) {
    if (K < 0) throw std::invalid_argument("homogeneous_sums: K must be >= 0");
    if (K == 0) return {complex{1.0, 0.0}};
    return detail::newton_from_power_sums(power_sums(params, K), K);
}

/// lambda(p^k), k = 0..K, by multiplying out the truncated geometric series
/// sum_u alpha_j^u X^u one factor at a time. Independent of the Newton route.
inline std::vector<complex> homogeneous_sums_by_product(const SatakeLocalData& params, int K) {
    if (K < 0) throw std::invalid_argument("homogeneous_sums_by_product: K must be >= 0");
    std::vector<complex> acc(static_cast<std::size_t>(K) + 1, complex{});
    acc[0] = 1.0;
    for (const auto& alpha : params.alphas) {
        // multiplying by 1/(1 - alpha X) is the running recurrence c_n += alpha c_{n-1}
        for (int n = 1; n <= K; ++n) acc[n] += alpha * acc[n - 1];
    }
    return acc;
}

struct LocalCoefficientTable {
    SatakeLocalData source;
    int depth = 0;
    std::vector<complex> lambda;  ///< n = 0..depth
    std::vector<complex> powsum;  ///< n = 1..depth, stored at n - 1
};

inline LocalCoefficientTable local_coefficient_table(const SatakeLocalData& params, int K) {
    if (K < 1) throw std::invalid_argument("local_coefficient_table: K must be >= 1");
    LocalCoefficientTable t{params, K, {}, power_sums(params, K)};
    t.lambda = detail::newton_from_power_sums(t.powsum, K);
    return t;
}

/// max_n |n lambda(p^n) - sum_u a(p^u) lambda(p^{n-u})|, scaled by max(1, |n lambda(p^n)|).
inline double newton_residual(const LocalCoefficientTable& t) {
    double worst = 0.0;
    for (int n = 1; n <= t.depth; ++n) {
        complex rhs{};
        for (int u = 1; u <= n; ++u) rhs += t.powsum[u - 1] * t.lambda[n - u];
        const complex lhs = static_cast<double>(n) * t.lambda[n];
        worst = std::max(worst, std::abs(lhs - rhs) / detail::scale_of(std::abs(lhs)));
    }
    return worst;
}

struct RankinSelbergLocalTable {
    SatakeLocalData source;
    std::vector<complex> betas;     ///< alpha_j * conj(alpha_j'), row-major in (j, j')
    int depth = 0;
    std::vector<double> lambda_rs;  ///< n = 0..depth
    std::vector<double> powsum_rs;  ///< |a(p^n)|^2 for n = 1..depth, stored at n - 1
    /// Largest scaled disagreement seen between the two computation paths.
    double path_discrepancy = 0.0;
};

/// Rankin-Selberg local coefficients of pi x pi~, computed two ways.
///
/// Path one runs the Newton recursion over the m^2 betas in complex arithmetic.
/// Path two uses the real recursion with weights |a(p^n)|^2, which only sums
/// nonnegative terms. The second path is reported; the first must match it,
/// and be real, to `tol` (relative once values exceed 1), else ConsistencyError.
inline RankinSelbergLocalTable rankin_selberg_table(const SatakeLocalData& params, int K,
                                                    double tol = kIdentityTol) {
    if (K < 1) throw std::invalid_argument("rankin_selberg_table: K must be >= 1");
    RankinSelbergLocalTable t;
    t.source = params;
    t.depth = K;
    for (const auto& a : params.alphas)
        for (const auto& b : params.alphas) t.betas.push_back(a * std::conj(b));

    SatakeLocalData beta_data{params.p, t.betas, params.unramified, false};
    const auto via_betas = homogeneous_sums(beta_data, K);

    const auto a = power_sums(params, K);
    t.powsum_rs.resize(a.size());
    std::transform(a.begin(), a.end(), t.powsum_rs.begin(),
                   [](const complex& z) { return std::norm(z); });
    t.lambda_rs = detail::newton_from_power_sums(t.powsum_rs, K);

    for (int n = 0; n <= K; ++n) {
        const double scale = detail::scale_of(t.lambda_rs[n]);
        const double imag = std::abs(via_betas[n].imag()) / scale;
        const double diff = std::abs(via_betas[n].real() - t.lambda_rs[n]) / scale;
        t.path_discrepancy = std::max({t.path_discrepancy, imag, diff});
        if (imag > tol || diff > tol)
            throw ConsistencyError("Rankin-Selberg paths disagree at n = " + std::to_string(n) +
                                   ": beta path " + std::to_string(via_betas[n].real()) + "+" +
                                   std::to_string(via_betas[n].imag()) + "i, |a|^2 path " +
                                   std::to_string(t.lambda_rs[n]));
    }
    return t;
}

namespace detail {

inline void require_determinant_one(const SatakeLocalData& params, double tol) {
    if (!params.unramified)
        throw PreconditionError("requires unramified Satake data");
    const complex det = params.determinant();
    if (std::abs(det - complex{1.0, 0.0}) > tol)
        throw PreconditionError("requires alpha_1 * ... * alpha_m = 1, got " +
                                std::to_string(det.real()) + "+" + std::to_string(det.imag()) +
                                "i");
}

}  // namespace detail

struct BoundCheck {
    double value = 0.0;
    bool pass = false;
};

/// Brumley's bound: lambda_{pi x pi~}(p^m) >= 1 when the parameters have product one.
inline BoundCheck brumley_check(const SatakeLocalData& params, double tol = kIdentityTol) {
    detail::require_determinant_one(params, tol);
    const int m = static_cast<int>(params.degree());
    const auto t = rankin_selberg_table(params, m, tol);
    const double v = t.lambda_rs[m];
    return {v, v >= 1.0 - tol};
}

/// sum_{j=1}^{m} |lambda(p^j)|, which must be at least 1/m for product-one data.
inline BoundCheck homogeneous_sum_lower_bound(const SatakeLocalData& params,
                                              double tol = kIdentityTol) {
    detail::require_determinant_one(params, tol);
    const int m = static_cast<int>(params.degree());
    const auto lambda = homogeneous_sums(params, m);
    double sum = 0.0;
    for (int j = 1; j <= m; ++j) sum += std::abs(lambda[j]);
    return {sum, sum >= 1.0 / m - tol};
}

/// Smallest j in 1..m with |a(p^j)| >= 1. Product-one unramified data always has
/// one; an empty result there is a counterexample. Other inputs are evaluated
/// as given, without the guarantee.
inline std::optional<int> large_power_sum_index(const SatakeLocalData& params,
                                                double tol = kIdentityTol) {
    const int m = static_cast<int>(params.degree());
    const auto a = power_sums(params, m);
    for (int j = 1; j <= m; ++j)
        if (std::norm(a[j - 1]) >= 1.0 - tol) return j;
    return std::nullopt;
}

/// Roots alpha, beta of X^2 - lambda_p X + chi_p, the degree-two Satake data of a
/// Hecke eigenvalue. chi_p = 0 (p divides the level) gives alpha = lambda_p, beta = 0.
inline SatakeLocalData satake_from_hecke(double lambda_p, int chi_p, std::uint64_t p) {
    if (chi_p != 0 && chi_p != 1)
        throw std::invalid_argument("satake_from_hecke: chi_p must be 0 or 1");
    SatakeLocalData d;
    d.p = p;
    if (chi_p == 0) {
        d.alphas = {complex{lambda_p, 0.0}, complex{}};
        d.unramified = false;
        return d;
    }
    const complex root = std::sqrt(complex{lambda_p * lambda_p - 4.0, 0.0});
    d.alphas = {(lambda_p + root) / 2.0, (lambda_p - root) / 2.0};
    d.unimodular = std::abs(lambda_p) <= 2.0;
    return d;
}

/// Seed for trial `trial` of a sweep seeded with `seed` (splitmix64 finalizer),
/// so trials are independent of execution order.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// alpha_j = e^{i theta_j}, theta_j uniform on [0, 2 pi) for j < m, last angle
/// chosen so the product is one.
inline SatakeLocalData random_unimodular_determinant_one(std::size_t m, std::uint64_t seed,
                                                         std::uint64_t p = 2) {
    if (m < 1) throw std::invalid_argument("degree must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    SatakeLocalData d;
    d.p = p;
    d.unimodular = true;
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double th = angle(rng);
        total += th;
        d.alphas.push_back(std::polar(1.0, th));
    }
    d.alphas.push_back(std::polar(1.0, -std::fmod(total, 2.0 * std::numbers::pi)));
    return d;
}

/// Parameters with modulus up to `max_modulus` and uniform argument; no normalization.
inline SatakeLocalData random_bounded(std::size_t m, double max_modulus, std::uint64_t seed,
                                      std::uint64_t p = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, max_modulus);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    SatakeLocalData d;
    d.p = p;
    for (std::size_t j = 0; j < m; ++j) {
        const double r = radius(rng);
        d.alphas.push_back(std::polar(r, angle(rng)));
    }
    return d;
}

}  // namespace lfun
