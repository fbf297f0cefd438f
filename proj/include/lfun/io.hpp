#pragma once

// Text formats.
//
// Coefficient file:
//
//     # coeffs k=<k> N=<N> kind=<integer|normalized>
//     1,<value>
//     2,<value>
//     ...
//
// Rows are dense and ascending from n = 1. kind=integer rows hold the exact
// a_f(n) n^{(k-1)/2}; kind=normalized rows hold lambda(n) as shortest
// round-trip decimals. Further '#' lines are comments.
//
// Satake instance file: one instance per line, whitespace-separated complex
// numbers "re,im" (a bare "re" means im = 0), optionally led by "p=<prime>".

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lfun/errors.hpp"
#include "lfun/int128.hpp"
#include "lfun/newform.hpp"
#include "lfun/satake.hpp"
#include "lfun/zeros.hpp"

namespace lfun {

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

/// Writes `content` to `path` through a sibling temporary and a rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::ios_base::failure("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::ios_base::failure("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

inline std::string coefficient_file(const CoefficientSeries& s) {
    std::ostringstream out;
    const bool exact = s.exact();
    out << "# coeffs k=" << s.spec.weight << " N=" << s.spec.level
        << " kind=" << (exact ? "integer" : "normalized") << '\n';
    for (std::uint64_t n = 1; n <= s.n_max(); ++n) {
        out << n << ',';
        if (exact)
            out << to_string((*s.integer_values)[n]);
        else
            out << format_double(s[n]);
        out << '\n';
    }
    return out.str();
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view t, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw FormatError("line " + std::to_string(line_no) + ": bad integer '" +
                          std::string(t) + "'");
    return v;
}

inline std::string_view header_field(std::string_view header, std::string_view key,
                                     std::size_t line_no) {
    const std::string needle = " " + std::string(key) + "=";
    const auto pos = header.find(needle);
    if (pos == std::string_view::npos)
        throw FormatError("line " + std::to_string(line_no) + ": header lacks " +
                          std::string(key));
    auto rest = header.substr(pos + needle.size());
    return rest.substr(0, rest.find(' '));
}

}  // namespace detail

inline CoefficientSeries parse_coefficient_file(std::istream& in, std::string label = "file") {
    std::string line;
    std::size_t line_no = 0;
    CoefficientSeries s;
    bool have_header = false;
    bool integer_kind = false;
    std::vector<int128> ints{0};
    s.values.push_back(0.0);
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        if (!have_header) {
            if (!t.starts_with("# coeffs "))
                throw FormatError("line " + std::to_string(line_no) +
                                  ": expected '# coeffs k=<k> N=<N> kind=<...>' header");
            s.spec.weight =
                static_cast<int>(detail::parse_u64(detail::header_field(t, "k", line_no), line_no));
            s.spec.level = detail::parse_u64(detail::header_field(t, "N", line_no), line_no);
            const auto kind = detail::header_field(t, "kind", line_no);
            if (kind != "integer" && kind != "normalized")
                throw FormatError("line " + std::to_string(line_no) + ": unknown kind '" +
                                  std::string(kind) + "'");
            integer_kind = kind == "integer";
            have_header = true;
            continue;
        }
        if (t.front() == '#') continue;
        const auto comma = t.find(',');
        if (comma == std::string_view::npos)
            throw FormatError("line " + std::to_string(line_no) + ": expected 'n,value'");
        const auto n = detail::parse_u64(detail::trim(t.substr(0, comma)), line_no);
        if (n != s.values.size())
            throw FormatError("line " + std::to_string(line_no) + ": expected n = " +
                              std::to_string(s.values.size()) + ", rows must be dense from 1");
        const auto value = detail::trim(t.substr(comma + 1));
        if (integer_kind) {
            const int128 v = parse_int128(value);
            ints.push_back(v);
            const double scale = std::pow(static_cast<double>(n), (s.spec.weight - 1) / 2.0);
            s.values.push_back(static_cast<double>(v) / scale);
        } else {
            s.values.push_back(detail::parse_double(value, line_no));
        }
    }
    if (!have_header) throw FormatError("empty coefficient file");
    if (s.values.size() < 2) throw FormatError("coefficient file has no rows");
    if (integer_kind) s.integer_values = std::move(ints);
    s.spec.label = std::move(label);
    s.spec.generator = Generator::file;
    try {
        s.validate(1e-9);
    } catch (const InvariantError& e) {
        throw FormatError(std::string("coefficient file: ") + e.what());
    }
    return s;
}

inline CoefficientSeries load_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open coefficient file '" + path + "'");
    return parse_coefficient_file(in, path);
}

/// One Satake instance per non-comment line.
inline std::vector<SatakeLocalData> parse_satake_file(std::istream& in) {
    std::vector<SatakeLocalData> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        SatakeLocalData d;
        std::istringstream tokens{std::string(t)};
        std::string tok;
        while (tokens >> tok) {
            std::string_view v = tok;
            if (v.starts_with("p=")) {
                d.p = detail::parse_u64(v.substr(2), line_no);
                continue;
            }
            const auto comma = v.find(',');
            const double re = detail::parse_double(v.substr(0, comma), line_no);
            const double im = comma == std::string_view::npos
                                  ? 0.0
                                  : detail::parse_double(v.substr(comma + 1), line_no);
            d.alphas.emplace_back(re, im);
        }
        if (d.alphas.empty())
            throw FormatError("line " + std::to_string(line_no) + ": no Satake parameters");
        out.push_back(std::move(d));
    }
    return out;
}

inline std::string describe(const SatakeLocalData& d) {
    std::string s = "p=" + std::to_string(d.p);
    for (const auto& a : d.alphas) s += " " + format_double(a.real()) + "," + format_double(a.imag());
    return s;
}

}  // namespace lfun
