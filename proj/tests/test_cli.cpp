#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dehnbounds/cusp_slopes.hpp"
#include "dehnbounds/io.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stderr is discarded unless merge is set.
Run run(const std::string& args, bool merge = false) {
    const std::string cmd = std::string("\"") + DEHNBOUNDS_CLI + "\" " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string demo(const std::string& name) { return std::string(DEHNBOUNDS_DEMO_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

dehn::io::CsvTable csv(const std::string& text) {
    std::stringstream ss(text);
    return dehn::io::parse_csv(ss);
}

}  // namespace

TEST(Cli, HelpExitsZero) {
    const auto r = run("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("envelope"), std::string::npos);
}

TEST(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run("").code, 2); }

TEST(Cli, ConstantsCsv) {
    const auto r = run("constants");
    ASSERT_EQ(r.code, 0);
    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "name,computed,reference,abs_diff,tolerance,ok");
    int rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
        EXPECT_EQ(line.back(), '1') << line;
    }
    EXPECT_EQ(rows, 15);
}

TEST(Cli, ConstantsJson) {
    const auto r = run("--format json constants");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["h_max"]["computed"].get<double>(), 1.019675, 1e-5);
    EXPECT_TRUE(j["h_max"]["ok"].get<bool>());
}

TEST(Cli, PerturbedConstantsAreDetected) {
    EXPECT_EQ(run("--perturb-c 1.01 constants").code, 2);
    EXPECT_EQ(run("--perturb-c 1.01 check").code, 1);
}

TEST(Cli, EnvelopeHeaderAndEndpoint) {
    const auto r = run("envelope --lhat 7.515 -n 40");
    ASSERT_EQ(r.code, 0);
    ASSERT_EQ(r.out.substr(0, r.out.find('\n')), "alpha,t,z_lo,z_hi,rho_lo,ell_lo,ell_hi,V_drop_lo,V_drop_hi");
    const auto t = csv(r.out);
    ASSERT_EQ(t.rows.size(), 40u);
    EXPECT_TRUE(t.comments.empty());
    EXPECT_NEAR(t.rows.back()[0], 2 * M_PI, 1e-12);
    EXPECT_GE(t.rows.back()[4], 0.531);
}

TEST(Cli, EnvelopeTruncationWarns) {
    const auto r = run("envelope --lhat 3", true);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# warning:"), std::string::npos);
    const auto quiet = run("envelope --lhat 3");
    EXPECT_LT(csv(quiet.out).rows.back()[0], 2 * M_PI);
}

TEST(Cli, EnvelopeDeterministic) {
    const auto a = run("envelope --lhat 8.2 -n 25 --multi");
    const auto b = run("envelope --lhat 8.2 -n 25 --multi");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, EnvelopeRejectsBadLength) {
    EXPECT_EQ(run("envelope --lhat -1").code, 2);
    EXPECT_EQ(run("envelope").code, 2);
}

TEST(Cli, VolumeSweep) {
    const auto r = run("volume --sweep 0.001 0.1622 50");
    ASSERT_EQ(r.code, 0);
    const auto t = csv(r.out);
    ASSERT_EQ(t.rows.size(), 50u);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        EXPECT_GT(t.rows[i][1], t.rows[i - 1][1]);
        EXPECT_GT(t.rows[i][2], t.rows[i - 1][2]);
    }
    for (const auto& row : t.rows) EXPECT_NEAR(row[3], M_PI * row[0] / 2, 1e-15);
    EXPECT_NEAR(t.rows.back()[2], 0.3287, 1e-3);
}

TEST(Cli, VolumeSingleAndRange) {
    const auto r = run("--format json volume --ell 0.1");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["samples"][0]["dv_lo"].get<double>(), 0.140204702354789283, 1e-9);
    EXPECT_EQ(run("volume --ell 0.2").code, 2);
    EXPECT_EQ(run("volume --ell 0.1 --sweep 0 0.1 3").code, 2);
    EXPECT_EQ(run("volume").code, 2);
}

TEST(Cli, SlopesSquareDefaultBound) {
    const auto r = run("slopes --shape " + demo("square.json"));
    ASSERT_EQ(r.code, 0);
    const auto t = csv(r.out);
    EXPECT_EQ(t.header, (std::vector<std::string>{"p", "q", "length"}));
    EXPECT_LE(t.rows.size(), 60u);
    EXPECT_GT(t.rows.size(), 0u);
}

TEST(Cli, SlopesEmptyBelowShortest) {
    const auto r = run("slopes --shape " + demo("square.json") + " --bound 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(csv(r.out).rows.empty());
}

TEST(Cli, SlopesMatchLibraryOnHexagonal) {
    const auto r = run("--format json slopes --shape " + demo("hexagonal.json") + " --bound 7.515");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    const dehn::CuspShape hex({1, 0}, {0.5, std::sqrt(3.0) / 2});
    const auto want = dehn::enumerate_short_slopes(hex, 7.515);
    ASSERT_EQ(j["slopes"].size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(j["slopes"][i]["p"].get<std::int64_t>(), want[i].p());
        EXPECT_EQ(j["slopes"][i]["q"].get<std::int64_t>(), want[i].q());
    }
    EXPECT_TRUE(j["length_intersection_holds"].get<bool>());
    EXPECT_EQ(j["exceptional_bound"].get<int>(), 60);
}

TEST(Cli, SlopesMalformedShapeNamesField) {
    const auto path = temp_file("bad_shape.json", R"({"v1": [1, "x"], "v2": [0, 1]})");
    const auto r = run("slopes --shape " + path, true);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("'v1'"), std::string::npos) << r.out;
    EXPECT_EQ(run("slopes --shape /nonexistent/shape.json").code, 2);
}

TEST(Cli, CheckPassesQuickly) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = run("check");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_LT(secs, 60.0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ConfigFileAndPrecedence) {
    const auto from_config = run("--config " + demo("config.json") + " constants");
    ASSERT_EQ(from_config.code, 0);
    EXPECT_TRUE(json::accept(from_config.out));
    const auto flag_wins = run("--config " + demo("config.json") + " --format csv constants");
    ASSERT_EQ(flag_wins.code, 0);
    EXPECT_EQ(flag_wins.out.rfind("name,", 0), 0u);
}

TEST(Cli, BadConfigAndFormat) {
    EXPECT_EQ(run("--format xml constants").code, 2);
    EXPECT_EQ(run("--config /nonexistent.json constants").code, 2);
    const auto path = temp_file("bad_config.json", R"({"seed": "seven"})");
    EXPECT_EQ(run("--config " + path + " check").code, 2);
}

TEST(Cli, OutFile) {
    const std::string path = testing::TempDir() + "cli_out.csv";
    std::remove(path.c_str());
    const auto r = run("--out " + path + " volume --ell 0.05");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(csv(ss.str()).rows.size(), 1u);
}
