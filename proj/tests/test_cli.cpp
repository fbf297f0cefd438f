#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run lfun(const std::string& args) {
    const std::string cmd = std::string(LFUN_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("lfun_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    static std::string read(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<nlohmann::json> records(const std::string& out) {
        std::vector<nlohmann::json> v;
        std::istringstream in(out);
        std::string line;
        while (std::getline(in, line)) v.push_back(nlohmann::json::parse(line));
        return v;
    }

    static nlohmann::json find(const std::vector<nlohmann::json>& recs, const std::string& check) {
        for (const auto& r : recs)
            if (r["check"] == check) return r;
        return nullptr;
    }

    std::string delta_file(int n_max) const {
        const auto p = path("delta_" + std::to_string(n_max) + ".txt");
        if (!fs::exists(p)) lfun("tau --n-max " + std::to_string(n_max) + " --out " + p);
        return p;
    }

    fs::path dir_;
};

std::string zeta_zeros() { return std::string(LFUN_DATA_DIR) + "/zeta_zeros_100.txt"; }

}  // namespace

TEST_F(Cli, TauTenRows) {
    const auto out = path("tau.txt");
    const auto r = lfun("tau --n-max 10 --out " + out);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    const auto text = read(out);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
    EXPECT_NE(text.find("\n2,-24\n"), std::string::npos);
    EXPECT_FALSE(fs::exists(out + ".tmp"));
}

TEST_F(Cli, TauSingleRowToStdout) {
    const auto r = lfun("tau --n-max 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "# coeffs k=12 N=1 kind=integer\n1,1\n");
}

TEST_F(Cli, TauUsageAndCapacity) {
    EXPECT_EQ(lfun("tau --n-max 0").code, 64);
    EXPECT_EQ(lfun("tau").code, 64);
    EXPECT_EQ(lfun("tau --n-max 600000").code, 2);
    EXPECT_EQ(lfun("").code, 64);
    EXPECT_EQ(lfun("frobnicate").code, 64);
    EXPECT_EQ(lfun("tau --n-max ten").code, 64);
}

TEST_F(Cli, VerifyNewtonPasses) {
    const auto r = lfun("verify --suite newton --trials 1000 --seed 7 --format records");
    EXPECT_EQ(r.code, 0);
    const auto rec = find(records(r.out), "newton.residual");
    ASSERT_FALSE(rec.is_null());
    EXPECT_EQ(rec["status"], "PASS");
    EXPECT_LE(rec["value"].get<double>(), 1e-10);
}

TEST_F(Cli, VerifySatakeSuitesPass) {
    for (const std::string suite : {"rs", "brumley", "l412", "claimc"}) {
        const auto r = lfun("verify --suite " + suite + " --trials 300 --seed 3 --format records");
        EXPECT_EQ(r.code, 0) << suite;
        const auto recs = records(r.out);
        EXPECT_EQ(recs.size(), 3u) << suite;
        for (const auto& rec : recs) EXPECT_EQ(rec["status"], "PASS") << rec.dump();
    }
}

TEST_F(Cli, VerifyBrumleyRejectsNonUnitDeterminant) {
    const auto file = write("bad.txt", "p=2 1,0 -1,0\n");
    EXPECT_EQ(lfun("verify --suite brumley --satake " + file).code, 65);
    const auto good = write("good.txt", "p=2 0,1 0,-1\np=3 1,0 1,0\n");
    EXPECT_EQ(lfun("verify --suite brumley --satake " + good).code, 0);
}

TEST_F(Cli, VerifyHeckeAndDeligneOnDeltaFile) {
    const auto file = delta_file(5000);
    auto r = lfun("verify --suite hecke --trials 1000 --coeffs " + file + " --format records");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(find(records(r.out), "hecke.max_residual")["status"], "PASS");
    r = lfun("verify --suite deligne --coeffs " + file + " --format records");
    EXPECT_EQ(r.code, 0);
    EXPECT_LT(find(records(r.out), "deligne.max_abs_lambda_p")["value"].get<double>(), 2.0);
}

TEST_F(Cli, VerifyDeligneFlagsViolation) {
    const auto file = write("bad.txt", "# coeffs k=12 N=1 kind=normalized\n1,1\n2,3\n3,0.5\n4,8\n");
    EXPECT_EQ(lfun("verify --suite deligne --coeffs " + file).code, 1);
}

TEST_F(Cli, VerifyUnknownSuite) {
    EXPECT_EQ(lfun("verify --suite nonsense").code, 64);
    EXPECT_EQ(lfun("verify").code, 64);
}

TEST_F(Cli, SignscanOnDelta) {
    const auto r = lfun("signscan --coeffs " + delta_file(20000) + " --format records");
    EXPECT_EQ(r.code, 0);
    const auto recs = records(r.out);
    const auto first = find(recs, "first_negative");
    EXPECT_EQ(first["value"], 2);
    EXPECT_NEAR(first["threshold"].get<double>(), 11.05, 0.01);
    EXPECT_EQ(first["status"], "PASS");
    EXPECT_EQ(find(recs, "n_plus_fraction")["status"], "PASS");
    EXPECT_EQ(find(recs, "n_minus_fraction")["status"], "PASS");
}

TEST_F(Cli, SignscanOverridesLevel) {
    const auto r = lfun("signscan --coeffs " + delta_file(2000) + " --N 2 --format records");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(find(records(r.out), "first_negative")["value"], 7);
}

TEST_F(Cli, InputErrors) {
    EXPECT_EQ(lfun("signscan --coeffs " + path("missing.txt")).code, 66);
    const auto bad = write("bad.txt", "# coeffs k=12 N=1 kind=integer\n1,1\n3,5\n");
    EXPECT_EQ(lfun("signscan --coeffs " + bad).code, 65);
    EXPECT_EQ(lfun("explicit --source zeta --zeros " + path("missing.txt")).code, 66);
    const auto zeros = write("zeros.txt", "14.1\n13.0\n");
    EXPECT_EQ(lfun("explicit --source zeta --zeros " + zeros).code, 65);
    EXPECT_EQ(lfun("explicit --source zeta").code, 64);
}

TEST_F(Cli, PsiDelta) {
    const auto r = lfun("psi --source delta --x-max 20000 --format records");
    EXPECT_EQ(r.code, 0);
    const auto recs = records(r.out);
    EXPECT_EQ(find(recs, "grh_sup_ratio")["status"], "PASS");
    EXPECT_EQ(find(recs, "mean_square_ratio")["status"], "PASS");
    EXPECT_EQ(find(recs, "conductor")["value"], 80.75);
}

TEST_F(Cli, PsiZetaSubtractsMainTerm) {
    const auto r = lfun("psi --source zeta --x-max 20000 --format records");
    EXPECT_EQ(r.code, 0);
    const auto recs = records(r.out);
    EXPECT_EQ(find(recs, "grh_sup_ratio")["status"], "PASS");
    EXPECT_TRUE(find(recs, "mean_square_ratio").is_null());
}

TEST_F(Cli, ExplicitZetaReportsResidual) {
    const auto r = lfun("explicit --source zeta --x 100.5 --first-zeros 10,30,99 --zeros " +
                        zeta_zeros() + " --format records");
    const auto recs = records(r.out);
    const auto res = find(recs, "residual.K=99");
    ASSERT_FALSE(res.is_null());
    EXPECT_EQ(res["threshold"], 0.5);
    EXPECT_EQ(find(recs, "residual_monotone")["status"], "PASS");
    // exit code follows the record statuses
    bool any_fail = false;
    for (const auto& rec : recs) any_fail = any_fail || rec["status"] == "FAIL";
    EXPECT_EQ(r.code, any_fail ? 1 : 0);
}

TEST_F(Cli, ExplicitBeyondCompleteness) {
    EXPECT_EQ(lfun("explicit --source zeta --T 1000 --zeros " + zeta_zeros()).code, 65);
    EXPECT_EQ(lfun("explicit --source zeta --x 100 --zeros " + zeta_zeros()).code, 65);
}

TEST_F(Cli, Perron) {
    const auto r = lfun("perron --x 100.5 --T 2000 --ell 1 --format records");
    EXPECT_EQ(r.code, 0);
    const auto recs = records(r.out);
    EXPECT_EQ(find(recs, "relative_difference")["status"], "PASS");
    EXPECT_EQ(find(recs, "kernel")["status"], "INFO");
    EXPECT_EQ(lfun("perron --x 100").code, 65);
}

TEST_F(Cli, PerronSecondOrderKernel) {
    const auto r = lfun("perron --x 100.5 --T 2000 --ell 2 --format records");
    EXPECT_EQ(r.code, 0);
    const auto k = find(records(r.out), "kernel");
    EXPECT_EQ(k["status"], "PASS");
    EXPECT_NEAR(k["value"].get<double>(), std::pow(std::log(100.5), 2) / 2.0, 1e-6);
}

TEST_F(Cli, VarianceDecreasing) {
    const auto r = lfun("variance --X 100000 --c 1,5,25 --format records");
    EXPECT_EQ(r.code, 0);
    const auto recs = records(r.out);
    const double v1 = find(recs, "V.c=1")["value"];
    const double v5 = find(recs, "V.c=5")["value"];
    const double v25 = find(recs, "V.c=25")["value"];
    EXPECT_GT(v1, v5);
    EXPECT_GT(v5, v25);
    EXPECT_EQ(find(recs, "V_decreasing")["status"], "PASS");
}

TEST_F(Cli, ConfigFileAndPrecedence) {
    const auto cfg = write("run.cfg", "n-max=5\n");
    auto r = lfun("tau --config " + cfg);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
    r = lfun("tau --config " + cfg + " --n-max 3");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
    EXPECT_EQ(lfun("tau --config " + path("nope.cfg")).code, 66);
}

TEST_F(Cli, TableAndRecordsCarryTheSameChecks) {
    const auto table = lfun("verify --suite claimc --trials 50 --seed 1");
    const auto recs = lfun("verify --suite claimc --trials 50 --seed 1 --format records");
    EXPECT_EQ(table.code, 0);
    for (const auto& rec : records(recs.out))
        EXPECT_NE(table.out.find(rec["check"].get<std::string>()), std::string::npos);
    EXPECT_EQ(table.out.rfind("check", 0), 0u);
}

TEST_F(Cli, Deterministic) {
    for (const std::string cmd : {"verify --suite brumley --trials 200 --seed 11 --format records",
                                  "verify --suite newton --trials 200 --seed 11",
                                  "psi --source delta --x-max 5000 --format records"}) {
        const auto a = lfun(cmd);
        const auto b = lfun(cmd);
        EXPECT_EQ(a.code, b.code) << cmd;
        EXPECT_EQ(a.out, b.out) << cmd;
        EXPECT_FALSE(a.out.empty()) << cmd;
    }
    const auto c = lfun("verify --suite brumley --trials 200 --seed 12 --format records");
    EXPECT_NE(c.out, lfun("verify --suite brumley --trials 200 --seed 11 --format records").out);
}
