#pragma once

// psi(x, pi) = sum_{n <= x} Lambda(n) a(n) as an exact step function, and the
// statistics built from it: GRH-scaled suprema, logarithmic mean squares,
// Omega-type records and windowed variances.
//
// Every integral here is evaluated exactly between breakpoints of the step
// function; nothing is sampled.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lfun/arith.hpp"
#include "lfun/errors.hpp"
#include "lfun/newform.hpp"
#include "lfun/profile.hpp"

namespace lfun {

/// a(p^k) = alpha^k + beta^k for a degree-two series, nonzero only at prime powers.
///
/// a(p) = lambda(p) and a(p^k) = lambda(p) a(p^{k-1}) - chi(p) a(p^{k-2}) with
/// a(p^0) = 1 + chi(p).
inline std::vector<double> gl2_prime_power_coeffs(const CoefficientSeries& series,
                                                  std::uint64_t n_max) {
    if (n_max > series.n_max()) throw CapacityError("n_max exceeds the series length");
    std::vector<double> a(n_max + 1, 0.0);
    if (n_max < 2) return a;
    const PrimeSieve sieve(n_max);
    for (const std::uint64_t p : sieve.primes()) {
        const double lp = series[p];
        const double chi = principal_character(p, series.spec.level);
        double prev = 1.0 + chi;
        double cur = lp;
        a[p] = lp;
        for (std::uint64_t pk = p; pk <= n_max / p;) {
            pk *= p;
            const double next = lp * cur - chi * prev;
            a[pk] = next;
            prev = cur;
            cur = next;
        }
    }
    return a;
}

enum class PsiKind { classical, gl2 };

struct PsiSource {
    PsiKind kind = PsiKind::classical;
    std::optional<NewformSpec> spec;

    std::string describe() const {
        if (kind == PsiKind::classical) return "classical (m=1, a(n)=1)";
        return "GL2 from series '" + (spec ? spec->label : std::string{}) + "'";
    }
};

/// psi(x) tabulated at its breakpoints, the prime powers up to capacity.
class PsiTable {
public:
    static PsiTable classical(std::uint64_t capacity) {
        PsiTable t;
        t.capacity_ = capacity;
        if (capacity >= 2) {
            const PrimeSieve sieve(capacity);
            for (std::uint64_t n = 2; n <= capacity; ++n) {
                const auto pp = sieve.prime_power(n);
                if (pp.k != 0) t.push(n, std::log(static_cast<double>(pp.p)));
            }
        }
        return t;
    }

    static PsiTable from_series(const CoefficientSeries& series) {
        return from_series(series, series.n_max());
    }

    static PsiTable from_series(const CoefficientSeries& series, std::uint64_t capacity) {
        PsiTable t;
        t.capacity_ = capacity;
        t.source_ = {PsiKind::gl2, series.spec};
        if (capacity >= 2) {
            const auto a = gl2_prime_power_coeffs(series, capacity);
            const PrimeSieve sieve(capacity);
            for (std::uint64_t n = 2; n <= capacity; ++n) {
                const auto pp = sieve.prime_power(n);
                if (pp.k != 0) t.push(n, std::log(static_cast<double>(pp.p)) * a[n]);
            }
        }
        return t;
    }

    /// Identically zero psi with the given capacity.
    static PsiTable zero(std::uint64_t capacity) {
        PsiTable t;
        t.capacity_ = capacity;
        t.source_.kind = PsiKind::gl2;
        return t;
    }

    std::uint64_t capacity() const { return capacity_; }
    const PsiSource& source() const { return source_; }
    std::span<const std::uint64_t> breakpoints() const { return points_; }
    /// Lambda(n) a(n) at each breakpoint.
    std::span<const double> jumps() const { return jumps_; }

    /// psi(x); CapacityError beyond the table.
    double operator()(double x) const {
        if (x >= static_cast<double>(capacity_) + 1.0)
            throw CapacityError("psi(" + std::to_string(x) + ") beyond capacity " +
                                std::to_string(capacity_));
        const auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                         [](double v, std::uint64_t n) {
                                             return v < static_cast<double>(n);
                                         });
        if (it == points_.begin()) return 0.0;
        return cumulative_[static_cast<std::size_t>(it - points_.begin()) - 1];
    }

    /// Value on [breakpoints()[i], breakpoints()[i+1]).
    double value_after(std::size_t i) const { return cumulative_[i]; }

private:
    void push(std::uint64_t n, double jump) {
        points_.push_back(n);
        jumps_.push_back(jump);
        cumulative_.push_back((cumulative_.empty() ? 0.0 : cumulative_.back()) + jump);
    }

    std::uint64_t capacity_ = 0;
    PsiSource source_;
    std::vector<std::uint64_t> points_;
    std::vector<double> jumps_;
    std::vector<double> cumulative_;
};

inline double psi(double x, const PsiTable& table) { return table(x); }

/// psi sampled on an ascending grid.
struct PsiSeries {
    std::vector<double> x_grid;
    std::vector<double> values;
    PsiSource source;
};

/// Samples psi(x) (minus x when `subtract_main_term`) on the given grid.
inline PsiSeries sample_psi(const PsiTable& table, std::span<const double> grid,
                            bool subtract_main_term = false) {
    PsiSeries s;
    s.source = table.source();
    for (const double x : grid) {
        s.x_grid.push_back(x);
        s.values.push_back(table(x) - (subtract_main_term ? x : 0.0));
    }
    return s;
}

/// Grid of every prime power in [2, x_max]; with `left_limits`, also a point just
/// below each one. Suprema of |psi(x) - c x|/w(x) over x <= x_max are attained on it
/// for increasing weights w.
inline std::vector<double> breakpoint_grid(const PsiTable& table, double x_max,
                                           bool left_limits = false) {
    std::vector<double> g;
    for (const std::uint64_t n : table.breakpoints()) {
        const double x = static_cast<double>(n);
        if (x > x_max) break;
        if (left_limits) g.push_back(std::nextafter(x, 0.0));
        g.push_back(x);
    }
    return g;
}

struct SupResult {
    double value = 0.0;
    double argmax = 0.0;
};

/// sup over the grid of |psi(x)| / (x^{1/2} log^2(Q x)).
inline SupResult grh_scaled_sup(const PsiSeries& s, const RepresentationProfile& profile) {
    const double q = conductor(profile);
    SupResult r;
    for (std::size_t i = 0; i < s.x_grid.size(); ++i) {
        const double x = s.x_grid[i];
        const double l = std::log(q * x);
        const double v = std::abs(s.values[i]) / (std::sqrt(x) * l * l);
        if (v > r.value) r = {v, x};
    }
    return r;
}

struct MeanSquare {
    double value = 0.0;      ///< (1/X) int_2^X psi(x)^2 dx / x
    double reference = 0.0;  ///< X log^2 Q, the scale of the mean-square bound
};

inline MeanSquare mean_square(const PsiTable& table, double X,
                              const RepresentationProfile& profile) {
    if (X < 2.0) throw std::invalid_argument("mean_square: X must be >= 2");
    if (X > static_cast<double>(table.capacity()) + 1.0)
        throw CapacityError("mean_square: X beyond capacity");
    const auto pts = table.breakpoints();
    double integral = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double a = static_cast<double>(pts[i]);
        if (a >= X) break;
        const double b =
            i + 1 < pts.size() ? std::min(static_cast<double>(pts[i + 1]), X) : X;
        const double v = table.value_after(i);
        integral += v * v * std::log(b / a);
    }
    const double lq = std::log(conductor(profile));
    return {integral / X, X * lq * lq};
}

struct OmegaResult {
    double statistic = 0.0;
    double argmax = 0.0;
    /// Grid points where |psi(x)|/x^{1/2-eps} sets a new running maximum.
    std::vector<double> records;
};

inline OmegaResult omega_statistic(const PsiSeries& s, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    OmegaResult r;
    for (std::size_t i = 0; i < s.x_grid.size(); ++i) {
        const double x = s.x_grid[i];
        const double v = std::abs(s.values[i]) / std::pow(x, 0.5 - eps);
        if (v > r.statistic) {
            r.statistic = v;
            r.argmax = x;
            r.records.push_back(x);
        }
    }
    return r;
}

/// Window h(x) for the short-interval variance.
struct WindowSpec {
    enum class Kind { constant, log_squared, identity };
    Kind kind = Kind::constant;
    double value = 1.0;      ///< h for constant, c for log_squared
    double conductor = 1.0;  ///< Q in c log^2(Q x)
    /// Replace h(x) by min(h(x), x). Without it, h(x) > x anywhere is a WindowError.
    bool clip_to_x = false;

    static WindowSpec constant_h(double h) { return {Kind::constant, h, 1.0, false}; }
    static WindowSpec log_squared(double c, double q, bool clip = true) {
        return {Kind::log_squared, c, q, clip};
    }
    static WindowSpec identity() { return {Kind::identity, 1.0, 1.0, false}; }

    double raw(double x) const {
        switch (kind) {
            case Kind::constant:
                return value;
            case Kind::log_squared: {
                const double l = std::log(conductor * x);
                return value * l * l;
            }
            case Kind::identity:
                return x;
        }
        return 0.0;
    }

    double operator()(double x) const { return clip_to_x ? std::min(raw(x), x) : raw(x); }
};

struct VarianceResult {
    double v = 0.0;         ///< integral / (h(X)^2 X)
    double integral = 0.0;  ///< int_1^X |psi(x + h(x)) - psi(x)|^2 dx
};

namespace detail {

/// Exact int_1^X (f(x + h(x)) - f(x))^2 dx for a right-continuous step function f
/// with the given jump locations, assuming x + h(x) is increasing.
template <typename StepFn>
double window_square_integral(const StepFn& f, std::span<const std::uint64_t> jumps,
                              const WindowSpec& h, double X) {
    std::vector<double> cuts{1.0, X};
    for (const std::uint64_t n : jumps) {
        const double y = static_cast<double>(n);
        if (y > 1.0 && y < X) cuts.push_back(y);
    }
    // preimages of the jumps under g(x) = x + h(x)
    const auto g = [&](double x) { return x + h(x); };
    const double g_lo = g(1.0);
    const double g_hi = g(X);
    for (const std::uint64_t n : jumps) {
        const double y = static_cast<double>(n);
        if (y <= g_lo || y >= g_hi) continue;
        double lo = 1.0, hi = X;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < y ? lo : hi) = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b <= a) continue;
        const double mid = 0.5 * (a + b);
        const double d = f(g(mid)) - f(mid);
        total += d * d * (b - a);
    }
    return total;
}

inline void check_window(const WindowSpec& h, double X) {
    if (h.clip_to_x) return;
    // h(x) <= x on [1, X]
    switch (h.kind) {
        case WindowSpec::Kind::identity:
            return;
        case WindowSpec::Kind::constant:
            if (h.value > 1.0) throw WindowError("constant window h > 1 violates h(x) <= x at x = 1");
            return;
        case WindowSpec::Kind::log_squared:
            for (double x = 1.0; x <= X; x *= 1.001)
                if (h.raw(x) > x)
                    throw WindowError("window exceeds x at x = " + std::to_string(x));
            return;
    }
}

}  // namespace detail

/// V = int_1^X |psi(x + h(x)) - psi(x)|^2 dx / (h(X)^2 X), integrated exactly.
inline VarianceResult windowed_variance(const PsiTable& table, double X, const WindowSpec& h) {
    if (X <= 1.0) throw std::invalid_argument("windowed_variance: X must exceed 1");
    detail::check_window(h, X);
    const double hX = h(X);
    if (X + hX >= static_cast<double>(table.capacity()) + 1.0)
        throw CapacityError("windowed_variance needs psi up to X + h(X)");
    VarianceResult r;
    r.integral = detail::window_square_integral(table, table.breakpoints(), h, X);
    r.v = r.integral / (hX * hX * X);
    return r;
}

}  // namespace lfun
