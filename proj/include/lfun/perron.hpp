#pragma once

// Numerical Perron inversion along a vertical segment.
//
// For a finite Dirichlet polynomial F(s) = sum a_n n^-s,
//
//     (1/2 pi i) int_{b-iT}^{b+iT} F(s) x^s / s^{ell+1} ds
//         -> sum_{n <= x} a_n log^ell(x/n) / ell!    as T -> infinity,
//
// since the kernel x^s / s^{ell+1} integrates to (log x)^ell / ell! for x > 1
// and to 0 for x < 1. The ell! matters for ell >= 2.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "lfun/errors.hpp"

namespace lfun {

struct PerronResult {
    double integral = 0.0;        ///< the truncated contour integral
    double error_estimate = 0.0;  ///< summed Gauss-Kronrod error estimates
    double weighted_sum = 0.0;    ///< ell! * integral, comparable to sum a_n log^ell(x/n)
};

struct PerronOptions {
    double b = 1.3;
    double T = 1000.0;
    int ell = 1;
    double tol = 1e-8;  ///< absolute bound on the quadrature error estimate
    /// [0, T] is split into panels no wider than this, and narrower when needed to
    /// keep each panel under half an oscillation of the fastest term.
    double panel_width = 1.0;
};

/// `coeffs[n]` holds a_n for n >= 1 (index 0 ignored).
inline PerronResult perron_truncated(std::span<const double> coeffs, double x,
                                     const PerronOptions& opt) {
    if (!(opt.b > 0.0)) throw PreconditionError("Perron line must satisfy b > 0");
    if (opt.ell < 0) throw std::invalid_argument("ell must be >= 0");
    if (!(x > 1.0) || std::floor(x) == x)
        throw PreconditionError("Perron evaluation point must be a non-integer x > 1");
    if (!(opt.T > 0.0)) throw std::invalid_argument("T must be positive");

    // F(b + it) x^{b+it} = sum_n c_n e^{i t w_n}, c_n = a_n (x/n)^b, w_n = log(x/n)
    std::vector<double> c, w;
    double w_max = 0.0;
    for (std::size_t n = 1; n < coeffs.size(); ++n) {
        if (coeffs[n] == 0.0) continue;
        const double r = x / static_cast<double>(n);
        c.push_back(coeffs[n] * std::pow(r, opt.b));
        w.push_back(std::log(r));
        w_max = std::max(w_max, std::abs(w.back()));
    }

    // Fixed 31-point Gauss-Kronrod rule per panel. The nodes sit at the same
    // offsets in every panel, so e^{i t w_n} factors as e^{i m w_n} (panel
    // midpoint m) times a per-node rotation computed once.
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
    using Gauss = boost::math::quadrature::gauss<double, 15>;
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    std::vector<double> nodes{0.0}, k_weight{wk[0]}, g_weight{wg[0]};
    for (std::size_t i = 1; i < xk.size(); ++i)
        for (const double sgn : {1.0, -1.0}) {
            nodes.push_back(sgn * xk[i]);
            k_weight.push_back(wk[i]);
            g_weight.push_back(i % 2 == 0 ? wg[i / 2] : 0.0);
        }

    const double width =
        w_max > 0.0 ? std::min(opt.panel_width, std::numbers::pi / w_max) : opt.panel_width;
    std::vector<std::complex<double>> rot(nodes.size() * c.size());
    double rot_half = -1.0;
    const auto build_rotations = [&](double half) {
        for (std::size_t j = 0; j < nodes.size(); ++j)
            for (std::size_t i = 0; i < c.size(); ++i)
                rot[j * c.size() + i] = std::polar(1.0, half * nodes[j] * w[i]);
        rot_half = half;
    };

    std::vector<std::complex<double>> base(c.size());
    double total = 0.0;
    double err_total = 0.0;
    const auto panels = static_cast<std::size_t>(std::ceil(opt.T / width));
    for (std::size_t k = 0; k < panels; ++k) {
        const double lo = static_cast<double>(k) * width;
        const double hi = std::min(opt.T, lo + width);
        const double half = 0.5 * (hi - lo);
        const double mid = lo + half;
        if (half != rot_half) build_rotations(half);
        for (std::size_t i = 0; i < c.size(); ++i) base[i] = std::polar(c[i], mid * w[i]);
        double kronrod = 0.0;
        double gauss = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            std::complex<double> fx{};
            const auto* rj = &rot[j * c.size()];
            for (std::size_t i = 0; i < c.size(); ++i) fx += base[i] * rj[i];
            const std::complex<double> s{opt.b, mid + half * nodes[j]};
            // a_n real: the integrand on [-T, 0] is the conjugate of that on [0, T]
            const double v = (fx / std::pow(s, opt.ell + 1)).real();
            kronrod += k_weight[j] * v;
            gauss += g_weight[j] * v;
        }
        total += half * kronrod;
        err_total += half * std::abs(kronrod - gauss);
    }
    PerronResult r;
    r.integral = total / std::numbers::pi;
    r.error_estimate = err_total / std::numbers::pi;
    if (r.error_estimate > opt.tol)
        throw QuadratureError("Perron quadrature error estimate " +
                              std::to_string(r.error_estimate) + " exceeds " +
                              std::to_string(opt.tol));
    r.weighted_sum = r.integral * std::tgamma(opt.ell + 1.0);
    return r;
}

}  // namespace lfun
