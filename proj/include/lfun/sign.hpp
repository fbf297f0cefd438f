#pragma once

// Sign changes, sign densities and weighted partial sums of real coefficient
// sequences.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "lfun/errors.hpp"
#include "lfun/newform.hpp"

namespace lfun {

/// Dead band for sign decisions on floating series; exact series use 0.
inline constexpr double kSignTol = 1e-12;

inline double sign_tolerance(const CoefficientSeries& s) { return s.exact() ? 0.0 : kSignTol; }

/// Ascending grid x_min, x_min r, x_min r^2, ... capped at x_max (always included).
inline std::vector<double> geometric_grid(double x_min, double x_max,
                                          double ratio = std::pow(2.0, 0.25)) {
    if (!(x_min > 0.0) || !(x_max >= x_min) || !(ratio > 1.0))
        throw std::invalid_argument("geometric_grid: need 0 < x_min <= x_max and ratio > 1");
    std::vector<double> g;
    for (double x = x_min; x < x_max * (1.0 - 1e-12); x *= ratio) g.push_back(x);
    g.push_back(x_max);
    return g;
}

/// Smallest n <= n_max with (n, N) = 1 and lambda(n) < 0.
inline std::optional<std::uint64_t> first_sign_change(const CoefficientSeries& s,
                                                      std::uint64_t level) {
    const double tol = sign_tolerance(s);
    for (std::uint64_t n = 1; n <= s.n_max(); ++n)
        if (std::gcd(n, level) == 1 && s.sign(n, tol) < 0) return n;
    return std::nullopt;
}

/// (k^2 N)^exponent with implied constant one.
inline double linnik_bound(int weight, std::uint64_t level, double exponent = 29.0 / 60.0) {
    const double k = weight;
    return std::pow(k * k * static_cast<double>(level), exponent);
}

struct LinnikCheck {
    std::uint64_t n_first = 0;
    double bound = 0.0;
    /// n_first <= bound. A failure is inconclusive against the hidden implied constant.
    bool pass = false;
};

inline LinnikCheck linnik_bound_check(const CoefficientSeries& s, int weight,
                                      std::uint64_t level) {
    const auto n = first_sign_change(s, level);
    if (!n)
        throw NoSignChangeError("no negative coefficient coprime to the level up to n = " +
                                std::to_string(s.n_max()));
    const double bound = linnik_bound(weight, level);
    return {*n, bound, static_cast<double>(*n) <= bound};
}

struct SignCounts {
    double x = 0.0;
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t zero = 0;
};

struct SignScanReport {
    std::uint64_t level = 1;
    double x_max = 0.0;
    std::optional<std::uint64_t> first_negative;
    std::optional<std::uint64_t> first_positive;
    std::vector<SignCounts> counts;  ///< one entry per grid point
};

/// Exact N+(x), N-(x), N0(x) over n <= x, (n, N) = 1, by one linear scan.
inline SignScanReport sign_density(const CoefficientSeries& s, std::uint64_t level,
                                   std::span<const double> x_grid) {
    SignScanReport r;
    r.level = level;
    r.x_max = x_grid.empty() ? 0.0 : x_grid.back();
    const double tol = sign_tolerance(s);
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (x_grid[i] < x_grid[i - 1]) throw std::invalid_argument("x grid must be ascending");
    if (r.x_max > static_cast<double>(s.n_max()) + 1.0 - 1e-9)
        throw CapacityError("x grid exceeds the series length");

    SignCounts running;
    std::uint64_t n = 1;
    for (const double x : x_grid) {
        for (; n <= s.n_max() && static_cast<double>(n) <= x; ++n) {
            if (std::gcd(n, level) != 1) continue;
            switch (s.sign(n, tol)) {
                case 1:
                    ++running.positive;
                    if (!r.first_positive) r.first_positive = n;
                    break;
                case -1:
                    ++running.negative;
                    if (!r.first_negative) r.first_negative = n;
                    break;
                default:
                    ++running.zero;
            }
        }
        running.x = x;
        r.counts.push_back(running);
    }
    return r;
}

/// S(x) = sum_{n <= x, (n,N)=1} lambda(n) log^ell(x/n), summed directly.
inline double weighted_sum(const CoefficientSeries& s, double x, int ell, std::uint64_t level) {
    if (x < 1.0) throw std::invalid_argument("weighted_sum: x must be >= 1");
    if (ell < 0) throw std::invalid_argument("weighted_sum: ell must be >= 0");
    const auto top = static_cast<std::uint64_t>(std::floor(x));
    if (top > s.n_max()) throw CapacityError("weighted_sum: x exceeds the series length");
    double total = 0.0;
    for (std::uint64_t n = 1; n <= top; ++n) {
        if (std::gcd(n, level) != 1) continue;
        total += s[n] * std::pow(std::log(x / static_cast<double>(n)), ell);
    }
    return total;
}

struct GrowthFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

/// Least-squares slope of log max(|S(x)|, 1) against log x over the grid.
inline GrowthFit growth_exponent(const CoefficientSeries& s, int ell, std::uint64_t level,
                                 std::span<const double> x_grid) {
    if (x_grid.size() < 3) throw DegenerateGridError("growth fit needs at least 3 grid points");
    if (x_grid.back() < 100.0 * x_grid.front())
        throw DegenerateGridError("growth fit grid must span at least two decades");
    std::vector<double> lx, ly;
    for (const double x : x_grid) {
        lx.push_back(std::log(x));
        ly.push_back(std::log(std::max(std::abs(weighted_sum(s, x, ell, level)), 1.0)));
    }
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    GrowthFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < lx.size(); ++i)
        fit.residuals.push_back(ly[i] - (fit.intercept + fit.slope * lx[i]));
    return fit;
}

/// First n whose nonzero sign differs from the first nonzero sign of the
/// sequence (index n holds a(n) Lambda(n); index 0 ignored).
inline std::optional<std::uint64_t> prime_side_sign_scan(std::span<const double> weighted,
                                                         double tol = kSignTol) {
    int first = 0;
    for (std::uint64_t n = 1; n < weighted.size(); ++n) {
        const double v = weighted[n];
        const int sg = v > tol ? 1 : (v < -tol ? -1 : 0);
        if (sg == 0) continue;
        if (first == 0)
            first = sg;
        else if (sg != first)
            return n;
    }
    return std::nullopt;
}

}  // namespace lfun
