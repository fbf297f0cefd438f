// lfun: command-line front end for the lfun library.
//
//   lfun tau --n-max 1000 --out delta.txt
//   lfun verify --suite brumley --trials 10000 --seed 7
//   lfun signscan --coeffs delta.txt
//   lfun psi --source delta --x-max 1e5
//   lfun explicit --zeros data/zeta_zeros_100.txt --x 100.5
//   lfun perron --x 100.5 --T 2000 --ell 1
//   lfun variance --X 1e5 --c 1,5,25
//
// Exit codes: 0 ok, 1 verification failure, 2 capacity or overflow, 64 usage,
// 65 data format or precondition, 66 missing input.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfun/lfun.hpp"

namespace {

using namespace lfun;
using nlohmann::json;

enum Exit { kOk = 0, kVerify = 1, kCapacity = 2, kUsage = 64, kData = 65, kNoInput = 66 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<std::uint64_t> n_max;
    double x_max = 1e5;
    std::optional<double> T;
    int ell = 1;
    double eps = 0.1;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::string coeffs;
    std::string zeros;
    std::string satake;
    std::string out;
    std::string format = "table";
    std::string suite;
    std::size_t trials = 1000;
    std::vector<int> degrees{2, 3, 4};
    std::optional<int> k;
    std::optional<std::uint64_t> N;
    double x = 100.5;
    double b = 1.3;
    double X = 1e5;
    std::vector<double> c{1.0, 5.0, 25.0};
    std::string source = "delta";
    std::vector<std::size_t> first_zeros;

    double tol_or(double fallback) const { return tol.value_or(fallback); }
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text;
    else
        atomic_write(cfg.out, text);
}

void emit(const RunConfig& cfg, const Report& report) {
    emit(cfg, report.render(cfg.format == "records" ? ReportFormat::records : ReportFormat::table));
}

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

/// The series named by --coeffs, or Delta generated to `n_max`.
CoefficientSeries load_series(const RunConfig& cfg, std::uint64_t n_max) {
    if (!cfg.coeffs.empty()) return load_coefficient_file(cfg.coeffs);
    return generate_delta(n_max);
}

RepresentationProfile profile_of(const CoefficientSeries& s) {
    return holomorphic_profile(s.spec.weight, s.spec.level);
}

int cmd_tau(const RunConfig& cfg) {
    if (!cfg.n_max || *cfg.n_max < 1) throw UsageError("tau needs --n-max >= 1");
    emit(cfg, coefficient_file(generate_delta(*cfg.n_max)));
    return kOk;
}

// verify ------------------------------------------------------------------

std::vector<SatakeLocalData> file_instances(const RunConfig& cfg) {
    std::ifstream in(cfg.satake);
    if (!in) throw std::ios_base::failure("cannot open Satake file '" + cfg.satake + "'");
    return parse_satake_file(in);
}

/// Satake instances from --satake, or `trials` random draws.
template <typename Draw>
std::vector<SatakeLocalData> instances(const RunConfig& cfg, std::uint64_t salt, Draw draw) {
    if (!cfg.satake.empty()) return file_instances(cfg);
    std::vector<SatakeLocalData> out;
    for (std::size_t t = 0; t < cfg.trials; ++t) out.push_back(draw(trial_seed(cfg.seed + salt, t)));
    return out;
}

void report_offender(const SatakeLocalData& d, const std::string& what) {
    std::cerr << "violation (" << what << "): " << describe(d) << '\n';
}

int verify_newton(const RunConfig& cfg, Report& report) {
    const double tol = cfg.tol_or(kIdentityTol);
    const auto data = instances(cfg, 0, [](std::uint64_t s) {
        return random_bounded(1 + s % 6, 1.5, s);
    });
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int K = 1 + static_cast<int>((trial_seed(cfg.seed, i) >> 17) % 20);
        const auto table = local_coefficient_table(data[i], K);
        const auto product = homogeneous_sums_by_product(data[i], K);
        double r = newton_residual(table);
        for (int n = 0; n <= K; ++n)
            r = std::max(r, std::abs(table.lambda[n] - product[n]) /
                                std::max(1.0, std::abs(product[n])));
        worst = std::max(worst, r);
        if (r > tol) {
            ok = false;
            report_offender(data[i], "newton K=" + std::to_string(K));
        }
    }
    report.add("newton.residual", "n lambda(p^n) = sum_{u<=n} a(p^u) lambda(p^{n-u})", worst, tol,
               verdict(ok));
    return ok ? kOk : kVerify;
}

template <typename Check>
int verify_by_degree(const RunConfig& cfg, Report& report, const std::string& name,
                     const std::string& anchor, Check check) {
    bool all_ok = true;
    const auto run = [&](const std::vector<SatakeLocalData>& data, const std::string& label) {
        json worst = nullptr;
        json threshold = nullptr;
        bool ok = true;
        for (const auto& d : data) {
            const auto [value, bound, pass] = check(d);
            if (worst.is_null() || value < worst.get<double>()) worst = value;
            threshold = bound;
            if (!pass) {
                ok = false;
                report_offender(d, name);
            }
        }
        report.add(name + label, anchor, worst, threshold, verdict(ok));
        all_ok = all_ok && ok;
    };
    if (!cfg.satake.empty()) {
        run(file_instances(cfg), ".file");
    } else {
        for (const int m : cfg.degrees) {
            if (m < 1) throw UsageError("degrees must be >= 1");
            run(instances(cfg, static_cast<std::uint64_t>(m) << 32,
                          [m](std::uint64_t s) { return random_unimodular_determinant_one(m, s); }),
                ".m=" + std::to_string(m));
        }
    }
    return all_ok ? kOk : kVerify;
}

struct Outcome {
    double value;
    double bound;
    bool pass;
};

int cmd_verify(const RunConfig& cfg) {
    Report report;
    const double tol = cfg.tol_or(kIdentityTol);
    int rc = kOk;
    const std::string& s = cfg.suite;
    if (s == "newton") {
        rc = verify_newton(cfg, report);
    } else if (s == "rs") {
        rc = verify_by_degree(cfg, report, "rs.min_lambda", "lambda_{pi x pi~}(p^n) >= 0",
                              [&](const SatakeLocalData& d) {
                                  const int K = 2 * static_cast<int>(d.degree()) + 2;
                                  const auto t = rankin_selberg_table(d, K, tol);
                                  const double v =
                                      *std::min_element(t.lambda_rs.begin(), t.lambda_rs.end());
                                  return Outcome{v, 0.0, v >= -tol};
                              });
    } else if (s == "brumley") {
        rc = verify_by_degree(cfg, report, "brumley.min_lambda_rs", "lambda_{pi x pi~}(p^m) >= 1",
                              [&](const SatakeLocalData& d) {
                                  const auto b = brumley_check(d, tol);
                                  return Outcome{b.value, 1.0, b.pass};
                              });
    } else if (s == "l412") {
        rc = verify_by_degree(cfg, report, "l412.min_sum", "sum_{j<=m} |lambda(p^j)| >= 1/m",
                              [&](const SatakeLocalData& d) {
                                  const auto b = homogeneous_sum_lower_bound(d, tol);
                                  return Outcome{b.value, 1.0 / static_cast<double>(d.degree()),
                                                 b.pass};
                              });
    } else if (s == "claimc") {
        rc = verify_by_degree(cfg, report, "claimc.min_max_abs_a", "exists j <= m: |a(p^j)| >= 1",
                              [&](const SatakeLocalData& d) {
                                  detail::require_determinant_one(d, tol);
                                  const int m = static_cast<int>(d.degree());
                                  const auto a = power_sums(d, m);
                                  double best = 0.0;
                                  for (const auto& z : a) best = std::max(best, std::abs(z));
                                  return Outcome{best, 1.0,
                                                 large_power_sum_index(d, tol).has_value()};
                              });
    } else if (s == "hecke" || s == "deligne") {
        const auto series = load_series(cfg, cfg.n_max.value_or(10000));
        if (s == "hecke") {
            const auto h = verify_hecke_relations(series, cfg.trials, cfg.seed, tol);
            for (const auto& f : h.failures)
                std::cerr << "violation (hecke): m=" << f.m << " n=" << f.n
                          << " residual=" << format_double(f.residual) << '\n';
            report.add("hecke.max_residual",
                       "lambda(m) lambda(n) = sum_{d|(m,n)} chi(d) lambda(mn/d^2)", h.max_residual,
                       tol, verdict(h.pass()));
            report.add("hecke.pairs", "sampled (m, n), every other pair non-coprime",
                       h.pairs);
            rc = h.pass() ? kOk : kVerify;
        } else {
            const auto d = verify_deligne(series, tol);
            if (!d.pass)
                std::cerr << "violation (deligne): p=" << d.argmax
                          << " |lambda(p)|=" << format_double(d.max_abs) << '\n';
            report.add("deligne.max_abs_lambda_p", "|lambda(p)| <= 2 for p not dividing N",
                       d.max_abs, 2.0, verdict(d.pass));
            report.add("deligne.argmax", "prime attaining the maximum", d.argmax);
            rc = d.pass ? kOk : kVerify;
        }
    } else {
        throw UsageError("unknown suite '" + s + "'");
    }
    emit(cfg, report);
    return rc;
}

// analytic commands -------------------------------------------------------

int cmd_signscan(const RunConfig& cfg) {
    auto series = load_series(cfg, cfg.n_max.value_or(100000));
    if (cfg.k) series.spec.weight = *cfg.k;
    if (cfg.N) series.spec.level = *cfg.N;
    const int k = series.spec.weight;
    const std::uint64_t level = series.spec.level;
    const double x_max = std::min(cfg.x_max, static_cast<double>(series.n_max()));

    Report report;
    const double bound = linnik_bound(k, level);
    const auto first = first_sign_change(series, level);
    if (first) {
        const bool ok = static_cast<double>(*first) <= bound;
        report.add("first_negative", "first sign change n << (k^2 N)^{29/60}", *first, bound,
                   ok ? Status::pass : Status::inconclusive);
    } else {
        report.add("first_negative", "first sign change n << (k^2 N)^{29/60}", nullptr, bound,
                   Status::inconclusive);
    }
    report.add("linnik_bound_half", "(k^2 N)^{1/2}", linnik_bound(k, level, 0.5));

    const auto grid = geometric_grid(std::min(10.0, x_max), x_max);
    const auto scan = sign_density(series, level, grid);
    const auto& last = scan.counts.back();
    const double plus = static_cast<double>(last.positive) / x_max;
    const double minus = static_cast<double>(last.negative) / x_max;
    report.add("n_plus_fraction", "N+(x) >> x", plus, 0.1, verdict(plus >= 0.1));
    report.add("n_minus_fraction", "N-(x) >> x", minus, 0.1, verdict(minus >= 0.1));
    report.add("n_zero", "lambda(n) = 0, (n, N) = 1, n <= x", last.zero);

    if (x_max >= 1000.0) {
        const auto fit = growth_exponent(series, cfg.ell, level, geometric_grid(10.0, x_max));
        report.add("weighted_sum_slope",
                   "log max(|S(x)|,1) vs log x, S(x) = sum lambda(n) log^l(x/n)", fit.slope);
    }
    emit(cfg, report);
    return report.any_failed() ? kVerify : kOk;
}

struct PsiContext {
    PsiTable table;
    RepresentationProfile profile;
    bool subtract_main = false;
};

/// psi for --source, tabulated far enough for `reach(profile)`.
PsiContext psi_context(const RunConfig& cfg,
                       const std::function<double(const RepresentationProfile&)>& reach) {
    if (cfg.source == "zeta") {
        const auto profile = zeta_profile();
        const auto cap = static_cast<std::uint64_t>(std::ceil(reach(profile)));
        return {PsiTable::classical(cap), profile, true};
    }
    if (cfg.source == "delta") {
        const auto profile = holomorphic_profile(12, 1);
        const auto cap = static_cast<std::uint64_t>(std::ceil(reach(profile)));
        return {PsiTable::from_series(generate_delta(std::max<std::uint64_t>(cap, 2)), cap),
                profile, false};
    }
    if (cfg.coeffs.empty()) throw UsageError("--source file needs --coeffs");
    const auto series = load_coefficient_file(cfg.coeffs);
    const auto profile = profile_of(series);
    const auto cap = static_cast<std::uint64_t>(std::ceil(reach(profile)));
    if (series.n_max() < cap)
        throw CapacityError("coefficient file ends at n = " + std::to_string(series.n_max()) +
                            ", need " + std::to_string(cap));
    return {PsiTable::from_series(series, cap), profile, false};
}

PsiContext psi_context(const RunConfig& cfg, double capacity) {
    return psi_context(cfg, [capacity](const RepresentationProfile&) { return capacity; });
}

int cmd_psi(const RunConfig& cfg) {
    if (!(cfg.x_max >= 4.0)) throw UsageError("psi needs --x-max >= 4");
    const auto ctx = psi_context(cfg, cfg.x_max);
    const double half = cfg.x_max / 2.0;
    const auto sup_at = [&](double x_max) {
        const auto grid = breakpoint_grid(ctx.table, x_max, true);
        return grh_scaled_sup(sample_psi(ctx.table, grid, ctx.subtract_main), ctx.profile);
    };
    const auto sup_half = sup_at(half);
    const auto sup_full = sup_at(cfg.x_max);
    const double sup_ratio = sup_half.value > 0.0 ? sup_full.value / sup_half.value : 1.0;

    Report report;
    const std::string src = ctx.table.source().describe();
    report.add("source", "psi(x) = sum_{n<=x} Lambda(n) a(n)", src);
    report.add("conductor", "Q = N prod (3 + |mu_j|)", conductor(ctx.profile));
    report.add("psi_x_max", "psi(x_max)", ctx.table(cfg.x_max));
    report.add("grh_sup_half", "sup_{x<=x_max/2} |psi| / (x^{1/2} log^2(Q x))", sup_half.value);
    report.add("grh_sup", "sup_{x<=x_max} |psi| / (x^{1/2} log^2(Q x))", sup_full.value);
    report.add("grh_sup_argmax", "argmax of the scaled supremum", sup_full.argmax);
    report.add("grh_sup_ratio", "psi(x) << x^{1/2} log^2(Q x): stable under doubling", sup_ratio,
               2.0, verdict(sup_ratio <= 2.0 && sup_ratio >= 0.5));

    if (!ctx.subtract_main) {
        const auto ms_half = mean_square(ctx.table, half, ctx.profile);
        const auto ms_full = mean_square(ctx.table, cfg.x_max, ctx.profile);
        const double ratio = ms_half.value > 0.0 ? ms_full.value / ms_half.value : 0.0;
        report.add("mean_square", "(1/X) int_2^X psi^2 dx/x", ms_full.value);
        report.add("mean_square_reference", "X log^2 Q", ms_full.reference);
        report.add("mean_square_ratio", "int_2^X psi^2 dx/x << X log^2 Q: X vs X/2", ratio, 2.5,
                   verdict(ratio <= 2.5));
    }

    const auto omega_grid = breakpoint_grid(ctx.table, cfg.x_max);
    const auto omega =
        omega_statistic(sample_psi(ctx.table, omega_grid, ctx.subtract_main), cfg.eps);
    report.add("omega", "psi(x) = Omega(x^{1/2-eps})", omega.statistic);
    report.add("omega_argmax", "last record of |psi| / x^{1/2-eps}", omega.argmax);
    emit(cfg, report);
    return report.any_failed() ? kVerify : kOk;
}

int cmd_explicit(const RunConfig& cfg) {
    if (cfg.zeros.empty()) throw UsageError("explicit needs --zeros");
    const auto zeros = load_zero_table(cfg.zeros);
    const auto ctx = psi_context(cfg, cfg.x + 1.0);
    const bool classical = cfg.source == "zeta";
    const ExplicitFormulaOptions opt{classical, classical};
    const double actual = ctx.table(cfg.x);

    // truncation heights: either T itself, or midway past the K-th ordinate
    std::vector<std::pair<std::string, double>> heights;
    if (cfg.first_zeros.empty()) {
        heights.emplace_back("", cfg.T.value_or(zeros.completeness_t));
    } else {
        for (const std::size_t K : cfg.first_zeros) {
            if (K == 0 || K > zeros.ordinates.size())
                throw UsageError("--first-zeros out of range");
            const double g = zeros.ordinates[K - 1];
            const double next =
                K < zeros.ordinates.size() ? zeros.ordinates[K] : zeros.completeness_t;
            heights.emplace_back(".K=" + std::to_string(K), std::min(0.5 * (g + next), next));
        }
    }

    Report report;
    report.add("psi", "psi(x) by direct summation", actual);
    std::vector<double> residuals;
    for (const auto& [label, T] : heights) {
        const auto r = truncated_explicit_formula(cfg.x, T, zeros, ctx.profile, opt);
        const double residual = std::abs(r.estimate - actual);
        residuals.push_back(residual);
        report.add("estimate" + label, "[x] - sum_{|gamma|<=T} x^rho / rho", r.estimate);
        report.add("zeros_used" + label, "N(T)", r.zeros_used);
        if (classical)
            report.add("residual" + label, "|estimate - psi(x)|, m = 1 with classical terms",
                       residual, 0.5, verdict(residual <= 0.5));
        else
            report.add("residual" + label, "|estimate - psi(x)| against the O-term budget",
                       residual, r.budget.total(), Status::info);
        report.add("budget_zero_truncation" + label,
                   "min(x/T^{1/4}, x^{1+theta}/T^{1/2}) log(Q x), constant 1",
                   r.budget.zero_truncation);
        report.add("budget_trivial_zeros" + label, "x^theta log x, constant 1",
                   r.budget.trivial_zeros);
    }
    if (residuals.size() > 1) {
        bool monotone = true;
        for (std::size_t i = 1; i < residuals.size(); ++i)
            monotone = monotone && residuals[i] <= 1.1 * residuals[i - 1];
        report.add("residual_monotone", "residual nonincreasing in T within 10%", monotone, true,
                   verdict(monotone));
    }
    emit(cfg, report);
    return report.any_failed() ? kVerify : kOk;
}

int cmd_perron(const RunConfig& cfg) {
    const auto n_max = cfg.n_max.value_or(1000);
    const auto series = load_series(cfg, n_max);
    if (cfg.x >= static_cast<double>(series.n_max()) + 1.0)
        throw CapacityError("x exceeds the series length");
    PerronOptions opt;
    opt.b = cfg.b;
    opt.T = cfg.T.value_or(2000.0);
    opt.ell = cfg.ell;
    opt.tol = cfg.tol_or(1e-8);

    std::vector<double> coeffs(series.n_max() + 1, 0.0);
    for (std::uint64_t n = 1; n <= series.n_max(); ++n)
        if (std::gcd(n, series.spec.level) == 1) coeffs[n] = series[n];
    const auto q = perron_truncated(coeffs, cfg.x, opt);
    const double direct = weighted_sum(series, cfg.x, cfg.ell, series.spec.level);
    const double rel = std::abs(q.weighted_sum - direct) / std::max(std::abs(direct), 1e-300);

    const std::vector<double> unit{0.0, 1.0};
    const auto kernel = perron_truncated(unit, cfg.x, opt);
    const double lx = std::log(cfg.x);
    const double kernel_expected = std::pow(lx, cfg.ell) / std::tgamma(cfg.ell + 1.0);
    const double kernel_err = std::abs(kernel.integral - kernel_expected);

    Report report;
    report.add("perron_quadrature", "l! (1/2 pi i) int F(s) x^s / s^{l+1} ds", q.weighted_sum);
    report.add("direct_weighted_sum", "sum_{n<=x} a_n log^l(x/n)", direct);
    report.add("relative_difference", "quadrature vs direct sum", rel, 1e-3,
               verdict(rel <= 1e-3));
    report.add("quadrature_error_estimate", "Gauss-Kronrod estimate", q.error_estimate,
               opt.tol, Status::info);
    // below l = 2 the kernel tail decays like 1/T and dominates 1e-6 at T = 2000
    report.add("kernel", "(1/2 pi i) int x^s / s^{l+1} ds = (log x)^l / l!", kernel.integral,
               kernel_expected, cfg.ell >= 2 ? verdict(kernel_err <= 1e-6) : Status::info);
    emit(cfg, report);
    return report.any_failed() ? kVerify : kOk;
}

int cmd_variance(const RunConfig& cfg) {
    if (cfg.c.empty()) throw UsageError("variance needs at least one --c");
    if (!(cfg.X > 1.0)) throw UsageError("variance needs --X > 1");
    const double c_max = *std::max_element(cfg.c.begin(), cfg.c.end());
    // psi is needed up to X + h(X) for the widest window
    const auto ctx = psi_context(cfg, [&](const RepresentationProfile& p) {
        const double l = std::log(conductor(p) * cfg.X);
        return cfg.X + std::min(c_max * l * l, cfg.X) + 1.0;
    });
    const double q = conductor(ctx.profile);

    Report report;
    std::vector<double> vs;
    for (const double c : cfg.c) {
        if (!(c > 0.0)) throw UsageError("window constants must be positive");
        const auto v = windowed_variance(ctx.table, cfg.X, WindowSpec::log_squared(c, q));
        vs.push_back(v.v);
        report.add("V.c=" + format_double(c),
                   "int_1^X |psi(x+h) - psi(x)|^2 dx / (h(X)^2 X), h = c log^2(Q x)", v.v);
    }
    if (vs.size() > 1) {
        bool decreasing = true;
        for (std::size_t i = 1; i < vs.size(); ++i)
            decreasing = decreasing && (cfg.c[i] > cfg.c[i - 1]) && vs[i] < vs[i - 1];
        report.add("V_decreasing", "V = o(1) as h / log^2 grows: strictly decreasing in c",
                   decreasing, true, verdict(decreasing));
    }
    emit(cfg, report);
    return report.any_failed() ? kVerify : kOk;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.command == "tau") return cmd_tau(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "signscan") return cmd_signscan(cfg);
    if (cfg.command == "psi") return cmd_psi(cfg);
    if (cfg.command == "explicit") return cmd_explicit(cfg);
    if (cfg.command == "perron") return cmd_perron(cfg);
    if (cfg.command == "variance") return cmd_variance(cfg);
    throw UsageError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Coefficients, local identities and prime-side statistics of L-functions"};
    app.set_config("--config", "", "key=value file mirroring the flags; flags take precedence");
    app.require_subcommand(1);

    app.add_option("--n-max", cfg.n_max, "coefficient range")->check(CLI::NonNegativeNumber);
    app.add_option("--x-max", cfg.x_max, "largest x for psi and sign scans")
        ->check(CLI::PositiveNumber);
    app.add_option("--T", cfg.T, "truncation height")->check(CLI::PositiveNumber);
    app.add_option("--ell", cfg.ell, "power of the logarithmic weight")
        ->check(CLI::Range(0, 16));
    app.add_option("--eps", cfg.eps, "exponent offset for the Omega statistic")
        ->check(CLI::Range(0.0, 0.5));
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--coeffs", cfg.coeffs, "coefficient file");
    app.add_option("--zeros", cfg.zeros, "zero-ordinate file");
    app.add_option("--satake", cfg.satake, "Satake instance file for verify");
    app.add_option("--out", cfg.out, "write output here (atomically) instead of stdout");
    app.add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"table", "records"}));
    app.add_option("--suite", cfg.suite, "verify suite")
        ->check(CLI::IsMember({"newton", "rs", "brumley", "l412", "claimc", "hecke", "deligne"}));
    app.add_option("--trials", cfg.trials, "random trials")->check(CLI::PositiveNumber);
    app.add_option("--m", cfg.degrees, "degrees for random Satake sweeps")->delimiter(',');
    app.add_option("--k", cfg.k, "weight override")->check(CLI::PositiveNumber);
    app.add_option("--N", cfg.N, "level override")->check(CLI::PositiveNumber);
    app.add_option("--x", cfg.x, "evaluation point (non-integer)")->check(CLI::PositiveNumber);
    app.add_option("--b", cfg.b, "abscissa of the Perron line")->check(CLI::PositiveNumber);
    app.add_option("--X", cfg.X, "range of the variance integral")->check(CLI::PositiveNumber);
    app.add_option("--c", cfg.c, "window constants")->delimiter(',');
    app.add_option("--source", cfg.source, "psi source")
        ->check(CLI::IsMember({"zeta", "delta", "file"}));
    app.add_option("--first-zeros", cfg.first_zeros, "zero counts for the explicit formula")
        ->delimiter(',');

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"tau", "write tau(n), n <= n_max, as a coefficient file"},
        {"verify", "run a verification suite"},
        {"signscan", "first sign change and sign densities"},
        {"psi", "GRH-scaled statistics of psi(x)"},
        {"explicit", "truncated explicit formula against psi(x)"},
        {"perron", "Perron quadrature against the direct weighted sum"},
        {"variance", "short-interval variance of psi"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->fallthrough()->callback([&cfg, n = name] { cfg.command = n; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        std::cerr << e.what() << '\n';
        return kNoInput;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        return dispatch(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const WindowError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateGridError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const OverflowError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kCapacity;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << '\n';
        return kCapacity;
    } catch (const FormatError& e) {
        std::cerr << "format: " << e.what() << '\n';
        return kData;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kData;
    } catch (const IncompleteZerosError& e) {
        std::cerr << "zeros: " << e.what() << '\n';
        return kData;
    } catch (const InvariantError& e) {
        std::cerr << "invariant: " << e.what() << '\n';
        return kData;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kNoInput;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "output: " << e.what() << '\n';
        return kNoInput;
    } catch (const Error& e) {
        std::cerr << "verification: " << e.what() << '\n';
        return kVerify;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    }
}
