#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "singlink/catalog.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int rc = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("singlink_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_temp(const std::string& name, const std::string& text) {
    auto p = scratch_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

// args are passed to the shell verbatim; env is prefixed as VAR=value
Run run(const std::string& args, const std::string& env = "") {
    const auto err_path = scratch_dir() / "stderr.txt";
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" SINGLINK_CLI "' " + args + " 2>'" + err_path.string() + "'";
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

const std::string kFixture = SINGLINK_DATA_DIR "/rhs_table.csv";

}  // namespace

TEST(CliAnalyze, QuadricJson) {
    auto r = run("analyze --weights 1,1,1,1,1 --degree 2");
    ASSERT_EQ(r.rc, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["index"], 3);
    EXPECT_EQ(j["b3"], 0);
    EXPECT_EQ(j["h3_order"], "2");
    EXPECT_EQ(j["milnor_number"], "1");
}

TEST(CliAnalyze, DefaultDegreeIsIndexOne) {
    auto r = run("analyze --weights 17,34,75,125,175");
    ASSERT_EQ(r.rc, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["degree"], 425);
    EXPECT_EQ(j["h3_order"], "582622237229761");
    EXPECT_EQ(j["shortcut"]["kind"], "lemma312");
}

TEST(CliAnalyze, UnsortedWeightsWarn) {
    auto r = run("analyze --weights 34,17,75,125,175 --format csv");
    ASSERT_EQ(r.rc, 0);
    EXPECT_NE(r.err.find("warning: weights sorted to (17,34,75,125,175)"), std::string::npos) << r.err;
    EXPECT_NE(r.out.find("17,34,75,125,175,425,1,true,true,true,true,4416,0,582622237229761,17^12,true,lemma312"),
              std::string::npos);
}

TEST(CliAnalyze, BadInputExitsTwo) {
    EXPECT_EQ(run("analyze --weights 2,2,2,2,2").rc, 2);
    EXPECT_EQ(run("analyze --weights 1,1,1,1").rc, 2);
    EXPECT_EQ(run("analyze --weights 1,1,x,1,1").rc, 2);
    EXPECT_EQ(run("analyze --weights 1,1,1,1,1 --format xml").rc, 2);
    EXPECT_EQ(run("analyze").rc, 2);
    EXPECT_EQ(run("frobnicate").rc, 2);
    EXPECT_EQ(run("--help").rc, 0);
}

TEST(CliAnalyze, ExpansionCap) {
    auto skipped = run("analyze --weights 17,34,75,125,175", "SINGLINK_EXPANSION_CAP=100");
    EXPECT_EQ(skipped.rc, 0);
    EXPECT_NE(skipped.err.find("expansion skipped"), std::string::npos) << skipped.err;
    auto full = run("analyze --weights 17,34,75,125,175", "SINGLINK_EXPANSION_CAP=5000");
    EXPECT_EQ(full.rc, 0);
    EXPECT_EQ(full.err.find("skipped"), std::string::npos) << full.err;
    EXPECT_EQ(skipped.out, full.out);
    EXPECT_EQ(run("analyze --weights 1,1,1,1,1", "SINGLINK_EXPANSION_CAP=abc").rc, 2);
}

TEST(CliSearch, QuarticExcludedFromRhs) {
    auto r = run("search --max-degree 4 --rhs-only");
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::array());
    auto all = run("search --max-degree 4 --format csv");
    ASSERT_EQ(all.rc, 0);
    EXPECT_NE(all.out.find("\n1,1,1,1,1,4,1,"), std::string::npos) << all.out;
}

TEST(CliSearch, JobsDoNotChangeOutput) {
    auto one = run("search --max-degree 160 --jobs 1 --format csv");
    auto many = run("search --max-degree 160 --jobs 8 --format csv");
    ASSERT_EQ(one.rc, 0);
    ASSERT_EQ(many.rc, 0);
    EXPECT_GT(one.out.size(), 1000u);
    EXPECT_EQ(one.out, many.out);
}

TEST(CliSearch, OutFile) {
    const auto path = scratch_dir() / "search.json";
    auto r = run("search --max-degree 30 --index 2 --out '" + path.string() + "'");
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(nlohmann::json::parse(slurp(path)).is_array());
    EXPECT_EQ(run("search --max-degree 0").rc, 2);
    EXPECT_EQ(run("search --max-degree 10 --index 0").rc, 2);
}

TEST(CliVerify, ShippedFixtureReportsMisprints) {
    auto r = run("verify-table --fixture '" + kFixture + "'");
    EXPECT_EQ(r.rc, 1);
    EXPECT_NE(r.err.find("170/184 pass"), std::string::npos) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["summary"]["passed"], 170);
    EXPECT_EQ(j["summary"]["total"], 184);
}

TEST(CliVerify, CleanAndCorruptedFixtures) {
    const std::string header = "w0,w1,w2,w3,w4,d,mu,h3_order\n";
    const std::string good = "17,34,75,125,175,425,4416,582622237229761\n50,65,73,73,105,365,1152,28398241\n";
    auto ok = run("verify-table --format csv --fixture '" + write_temp("good.csv", header + good).string() + "'");
    EXPECT_EQ(ok.rc, 0) << ok.err;
    EXPECT_NE(ok.err.find("2/2 pass"), std::string::npos);

    const std::string bad = "17,34,75,125,175,425,4417,582622237229761\n";
    auto ko = run("verify-table --format csv --fixture '" + write_temp("bad.csv", header + bad).string() + "'");
    EXPECT_EQ(ko.rc, 1);
    EXPECT_NE(ko.out.find("mu:4417->4416"), std::string::npos) << ko.out;

    auto empty = run("verify-table --fixture '" + write_temp("empty.csv", header).string() + "'");
    EXPECT_EQ(empty.rc, 0);
    EXPECT_NE(empty.err.find("warning"), std::string::npos) << empty.err;
    EXPECT_NE(empty.err.find("0/0 pass"), std::string::npos) << empty.err;

    auto malformed = run("verify-table --fixture '" + write_temp("malformed.csv", header + "1,2,3\n").string() + "'");
    EXPECT_EQ(malformed.rc, 2);
    EXPECT_NE(malformed.err.find("2"), std::string::npos);
    EXPECT_EQ(run("verify-table --fixture /nonexistent/table.csv").rc, 2);
}

TEST(CliTwins, ShippedFixture) {
    auto r = run("twins --fixture '" + kFixture + "'");
    ASSERT_EQ(r.rc, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    bool septuplet = false;
    for (const auto& g : j) septuplet = septuplet || (g["degree"] == 5761 && g["size"] == 7);
    EXPECT_TRUE(septuplet);
    auto csv = run("twins --format csv --fixture '" + kFixture + "'");
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "group,d,mu,h3_order,w0,w1,w2,w3,w4");
}
