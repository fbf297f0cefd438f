#pragma once

// Zero tables and the truncated explicit formula
//
//     psi(x, pi) ~ [x] - sum_{|gamma| <= T} x^rho / rho,   rho = 1/2 + i gamma,
//
// with +gamma/-gamma paired into 2 Re(x^rho / rho).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lfun/errors.hpp"
#include "lfun/profile.hpp"

namespace lfun {

/// Positive ordinates gamma of nontrivial zeros, ascending. Consumers complete
/// the set symmetrically; the negative ordinates are never stored.
struct ZeroSet {
    std::vector<double> ordinates;
    bool grh = true;
    std::string source;
    /// The list claims to contain every zero with 0 < gamma <= completeness_t.
    double completeness_t = 0.0;

    /// N(T) = #{gamma <= T}.
    std::size_t count_up_to(double T) const {
        return static_cast<std::size_t>(
            std::upper_bound(ordinates.begin(), ordinates.end(), T) - ordinates.begin());
    }

    void validate() const {
        for (std::size_t i = 0; i < ordinates.size(); ++i) {
            if (!(ordinates[i] > 0.0)) throw InvariantError("zero ordinates must be positive");
            if (i > 0 && !(ordinates[i] > ordinates[i - 1]))
                throw InvariantError("zero ordinates must be strictly ascending");
        }
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view text, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("line " + std::to_string(line_no) + ": bad number '" +
                          std::string(text) + "'");
    return v;
}

}  // namespace detail

/// Reads the zero-table format: '#' comments, an optional "completeness_T=<v>"
/// header, then one positive ordinate per line in ascending order. Without the
/// header the list is taken as complete up to its last entry.
inline ZeroSet parse_zero_table(std::istream& in, std::string source = "stream") {
    ZeroSet z;
    z.source = std::move(source);
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        constexpr std::string_view key = "completeness_T=";
        if (t.starts_with(key)) {
            if (have_header || !z.ordinates.empty())
                throw FormatError("line " + std::to_string(line_no) +
                                  ": completeness_T header must come first and only once");
            z.completeness_t = detail::parse_double(t.substr(key.size()), line_no);
            have_header = true;
            continue;
        }
        const double g = detail::parse_double(t, line_no);
        if (!(g > 0.0))
            throw FormatError("line " + std::to_string(line_no) + ": ordinate must be positive");
        if (!z.ordinates.empty() && !(g > z.ordinates.back()))
            throw FormatError("line " + std::to_string(line_no) +
                              ": ordinates must be strictly ascending");
        z.ordinates.push_back(g);
    }
    if (!have_header) z.completeness_t = z.ordinates.empty() ? 0.0 : z.ordinates.back();
    return z;
}

inline ZeroSet load_zero_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open zero table '" + path + "'");
    return parse_zero_table(in, path);
}

struct ExplicitFormulaOptions {
    /// Add x: the pole of zeta at s = 1. Only meaningful for m = 1.
    bool include_main_term = false;
    /// Subtract log(2 pi) + (1/2) log(1 - x^-2), the classical zeta-only constant
    /// and trivial-zero terms.
    bool classical_zeta_terms = false;
};

/// Error terms of the truncated formula evaluated with every implied constant
/// set to 1. These are reference scales, not rigorous bounds.
struct ErrorBudget {
    double zero_truncation = 0.0;  ///< min(x/T^{1/4}, x^{1+theta}/T^{1/2}) log(Q x)
    double trivial_zeros = 0.0;    ///< x^theta log x
    double perron_tail = 0.0;      ///< x log^2(Q x) / T^{1/2}
    double small_x = 0.0;          ///< log T / x
    double total() const { return zero_truncation + trivial_zeros + perron_tail + small_x; }
};

struct ExplicitFormulaResult {
    double estimate = 0.0;
    double zero_sum = 0.0;  ///< sum_{0 < gamma <= T} 2 Re(x^rho / rho)
    std::size_t zeros_used = 0;
    ErrorBudget budget;
};

inline ErrorBudget explicit_formula_budget(double x, double T,
                                           const RepresentationProfile& profile) {
    const double theta = profile.theta();
    const double lqx = std::log(conductor(profile) * x);
    ErrorBudget b;
    b.zero_truncation =
        std::min(x / std::pow(T, 0.25), std::pow(x, 1.0 + theta) / std::sqrt(T)) * lqx;
    b.trivial_zeros = std::pow(x, theta) * std::log(x);
    b.perron_tail = x * lqx * lqx / std::sqrt(T);
    b.small_x = std::log(T) / x;
    return b;
}

inline ExplicitFormulaResult truncated_explicit_formula(double x, double T, const ZeroSet& zeros,
                                                        const RepresentationProfile& profile,
                                                        const ExplicitFormulaOptions& opt = {}) {
    if (!zeros.grh) throw PreconditionError("explicit formula evaluation assumes GRH zeros");
    if (!(x >= 2.0) || std::floor(x) == x)
        throw PreconditionError("explicit formula needs a non-integer x >= 2");
    if (T > zeros.completeness_t)
        throw IncompleteZerosError("T = " + std::to_string(T) +
                                   " exceeds the table's completeness bound " +
                                   std::to_string(zeros.completeness_t));
    ExplicitFormulaResult r;
    const double log_x = std::log(x);
    const double sqrt_x = std::sqrt(x);
    for (const double g : zeros.ordinates) {
        if (g > T) break;
        const std::complex<double> rho{0.5, g};
        const std::complex<double> xr = std::polar(sqrt_x, g * log_x);
        r.zero_sum += 2.0 * (xr / rho).real();
        ++r.zeros_used;
    }
    r.estimate = -r.zero_sum;
    if (opt.include_main_term) r.estimate += x;
    if (opt.classical_zeta_terms)
        r.estimate -= std::log(2.0 * std::numbers::pi) + 0.5 * std::log(1.0 - 1.0 / (x * x));
    r.budget = explicit_formula_budget(x, T, profile);
    return r;
}

struct ZeroCountSample {
    double T = 0.0;
    std::size_t count = 0;
    double scale = 0.0;  ///< T log(Q T)
};

struct ZeroCountEnvelope {
    std::vector<ZeroCountSample> samples;
    /// Smallest C with N(T) <= C T log(Q T) on the grid.
    double constant = 0.0;
    /// Smallest C' with N(T+1) - N(T) <= C' log(Q T) at the grid points.
    double unit_constant = 0.0;
};

inline ZeroCountEnvelope zero_count_envelope(const ZeroSet& zeros,
                                             const RepresentationProfile& profile,
                                             std::span<const double> t_grid) {
    const double q = conductor(profile);
    ZeroCountEnvelope env;
    for (const double T : t_grid) {
        if (T < 1.0) throw std::invalid_argument("zero counting grid must start at T >= 1");
        if (T > zeros.completeness_t)
            throw IncompleteZerosError("T beyond the table's completeness bound");
        const double l = std::log(q * T);
        ZeroCountSample s{T, zeros.count_up_to(T), T * l};
        env.constant = std::max(env.constant, static_cast<double>(s.count) / s.scale);
        if (T + 1.0 <= zeros.completeness_t) {
            const double gap = static_cast<double>(zeros.count_up_to(T + 1.0) - s.count);
            env.unit_constant = std::max(env.unit_constant, gap / l);
        }
        env.samples.push_back(s);
    }
    return env;
}

}  // namespace lfun
