#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "lfun/io.hpp"
#include "lfun/report.hpp"

using namespace lfun;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / ("lfun_io_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CoefficientSeries parse(const std::string& text) {
    std::istringstream in(text);
    return parse_coefficient_file(in);
}

}  // namespace

TEST(Int128, RoundTrip) {
    for (const int128 v : {int128{0}, int128{-24}, int128{1} << 100, -(int128{1} << 126)}) {
        EXPECT_EQ(parse_int128(to_string(v)), v);
    }
    EXPECT_EQ(to_string(int128{-370944}), "-370944");
    EXPECT_THROW(parse_int128("12a"), FormatError);
    EXPECT_THROW(parse_int128(""), FormatError);
    EXPECT_THROW(parse_int128("-"), FormatError);
    EXPECT_THROW(parse_int128("999999999999999999999999999999999999999999"), FormatError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    for (const double v : {0.1, -1.5e-300, 3.0, 1.0 / 3.0, std::numeric_limits<double>::max()}) {
        const auto s = format_double(v);
        EXPECT_EQ(std::stod(s), v) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-24.0), "-24");
}

TEST(CoefficientFile, TauTenRows) {
    const auto text = coefficient_file(generate_delta(10));
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 11u);
    EXPECT_EQ(lines[0], "# coeffs k=12 N=1 kind=integer");
    EXPECT_EQ(lines[1], "1,1");
    EXPECT_EQ(lines[2], "2,-24");
    EXPECT_EQ(lines[10], "10,-115920");
}

TEST(CoefficientFile, SingleRow) {
    EXPECT_EQ(coefficient_file(generate_delta(1)), "# coeffs k=12 N=1 kind=integer\n1,1\n");
}

TEST(CoefficientFile, IntegerRoundTrip) {
    const auto original = generate_delta(3000);
    const auto back = parse(coefficient_file(original));
    ASSERT_TRUE(back.exact());
    EXPECT_EQ(back.n_max(), 3000u);
    EXPECT_EQ(*back.integer_values, *original.integer_values);
    for (std::uint64_t n = 1; n <= 3000; ++n) ASSERT_EQ(back[n], original[n]);
    EXPECT_EQ(back.spec.generator, Generator::file);
}

TEST(CoefficientFile, NormalizedRoundTripIsBitExact) {
    auto original = generate_delta(500);
    original.integer_values.reset();
    const auto back = parse(coefficient_file(original));
    EXPECT_FALSE(back.exact());
    for (std::uint64_t n = 1; n <= 500; ++n) ASSERT_EQ(back[n], original[n]);
}

TEST(CoefficientFile, HeaderCarriesLevel) {
    const auto s = parse("# coeffs k=2 N=11 kind=normalized\n# comment\n1,1\n2,-1.4142\n");
    EXPECT_EQ(s.spec.weight, 2);
    EXPECT_EQ(s.spec.level, 11u);
    EXPECT_EQ(s[2], -1.4142);
}

TEST(CoefficientFile, FormatViolations) {
    for (const char* text : {
             "",
             "1,1\n",
             "# coeffs k=12 N=1\n1,1\n",
             "# coeffs k=12 N=1 kind=fraction\n1,1\n",
             "# coeffs k=12 N=1 kind=integer\n",
             "# coeffs k=12 N=1 kind=integer\n1,1\n3,5\n",
             "# coeffs k=12 N=1 kind=integer\n2,1\n",
             "# coeffs k=12 N=1 kind=integer\n1,2\n",
             "# coeffs k=12 N=1 kind=integer\n1,1\n2,x\n",
             "# coeffs k=12 N=1 kind=normalized\n1,1\n2\n",
             "# coeffs k=11 N=1 kind=integer\n1,1\n",
             "# coeffs k=12 N=0 kind=integer\n1,1\n",
         }) {
        EXPECT_THROW(parse(text), FormatError) << '"' << text << '"';
    }
}

TEST(CoefficientFile, MissingFile) {
    EXPECT_THROW(load_coefficient_file("/nonexistent/coeffs.txt"), std::ios_base::failure);
}

TEST(AtomicWrite, ReplacesWholeFile) {
    const auto dir = scratch_dir();
    const auto path = dir / "out.txt";
    atomic_write(path, "first version, longer\n");
    atomic_write(path, "second\n");
    EXPECT_EQ(slurp(path), "second\n");
    EXPECT_FALSE(fs::exists(dir / "out.txt.tmp"));
    EXPECT_THROW(atomic_write(dir / "missing" / "x.txt", "y"), std::ios_base::failure);
    fs::remove_all(dir);
}

TEST(SatakeFile, ParsesInstances) {
    std::istringstream in("# comment\np=3 1,0 -1,0\n0,1 0,-1\n\n0.5\n");
    const auto v = parse_satake_file(in);
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0].p, 3u);
    EXPECT_EQ(v[0].alphas[1], complex(-1.0, 0.0));
    EXPECT_EQ(v[1].alphas[0], complex(0.0, 1.0));
    EXPECT_EQ(v[2].alphas.size(), 1u);
    EXPECT_EQ(describe(v[0]), "p=3 1,0 -1,0");
}

TEST(SatakeFile, RejectsGarbage) {
    for (const char* text : {"p=3\n", "1,x\n", "p=abc 1,0\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(parse_satake_file(in), FormatError) << text;
    }
}

TEST(Report, RecordsAreJsonLines) {
    Report r;
    r.add("first_negative", "n << (k^2 N)^{29/60}", 2, 11.05, Status::pass);
    r.add("note", "info only", "text");
    const auto out = r.render(ReportFormat::records);
    EXPECT_EQ(out,
              "{\"check\":\"first_negative\",\"paper_anchor\":\"n << (k^2 N)^{29/60}\","
              "\"value\":2,\"threshold\":11.05,\"status\":\"PASS\"}\n"
              "{\"check\":\"note\",\"paper_anchor\":\"info only\",\"value\":\"text\","
              "\"threshold\":null,\"status\":\"INFO\"}\n");
    EXPECT_FALSE(r.any_failed());
    r.add("bad", "x", 1.0, 0.5, Status::fail);
    EXPECT_TRUE(r.any_failed());
}

TEST(Report, TableIsAligned) {
    Report r;
    r.add("a", "stmt one", 1.5, 2.0, Status::pass);
    r.add("longer_name", "stmt two", 0.25, nullptr, Status::inconclusive);
    const auto out = r.render(ReportFormat::table);
    std::istringstream in(out);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_EQ(header.find("value"), row1.find("1.5"));
    EXPECT_EQ(row1.find("1.5"), row2.find("0.25"));
    EXPECT_NE(row2.find("INCONCLUSIVE"), std::string::npos);
    EXPECT_NE(row2.find(" - "), std::string::npos);
}
