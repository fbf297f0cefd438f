#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lfun/errors.hpp"

namespace lfun {

/// Degree, arithmetic conductor and archimedean parameters of an L-function.
struct RepresentationProfile {
    int m = 1;
    std::uint64_t conductor_n = 1;
    std::vector<std::complex<double>> mu;

    /// Exponent of the known bound towards Ramanujan: 1/2 - 1/(m^2 + 1).
    double theta() const { return 0.5 - 1.0 / (static_cast<double>(m) * m + 1.0); }

    void validate() const {
        if (m < 1) throw InvariantError("degree must be >= 1");
        if (conductor_n < 1) throw InvariantError("conductor must be positive");
        if (mu.size() != static_cast<std::size_t>(m))
            throw InvariantError("need exactly m archimedean parameters");
    }
};

/// Q(t) = N prod_j (3 + |t + mu_j|).
inline double conductor(const RepresentationProfile& profile, double t = 0.0) {
    double q = static_cast<double>(profile.conductor_n);
    for (const auto& mu : profile.mu) q *= 3.0 + std::abs(t + mu);
    return q;
}

/// Riemann zeta: m = 1, N = 1, mu = 0.
inline RepresentationProfile zeta_profile() { return {1, 1, {0.0}}; }

/// Holomorphic newform of weight k and level N, with gamma factor
/// Gamma((s + (k-1)/2)/2) Gamma((s + (k+1)/2)/2): mu = {(k-1)/2, (k+1)/2}.
inline RepresentationProfile holomorphic_profile(int weight, std::uint64_t level) {
    const double k = weight;
    return {2, level, {(k - 1.0) / 2.0, (k + 1.0) / 2.0}};
}

}  // namespace lfun
