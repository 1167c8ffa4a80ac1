#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto err_path = dir / ("qc_cli_err_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    const std::string cmd = std::string(QC_CLI_PATH) + " " + args + " 2>" + err_path.string();
    CliRun r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::filesystem::remove(err_path);
    return r;
}

nlohmann::json first_record(const CliRun& r) {
    return nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
}

}  // namespace

TEST(CliVerify, PassingTheoremCase) {
    CliRun r = run("verify thm1 --d 5 --r 1 --n 4 --trunc upper");
    EXPECT_EQ(r.code, 0);
    auto j = first_record(r);
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_EQ(j["command"], "verify thm1");
    EXPECT_EQ(j["case"]["d"], 5);
    EXPECT_EQ(j["case"]["trunc"], "upper");
    EXPECT_FALSE(j.contains("elapsed_ms"));
}

TEST(CliVerify, FailingTheoremCaseExitsOne) {
    // Phi_3 is missing from this sum, see the congruence tests
    CliRun r = run("verify thm1 --d 5 --r 1 --n 9 --trunc upper");
    EXPECT_EQ(r.code, 1);
    auto j = first_record(r);
    EXPECT_EQ(j["status"], "FAIL");
    EXPECT_EQ(j["achieved"]["3"], 0);
    EXPECT_EQ(j["modulus"]["9"], 3);
}

TEST(CliVerify, HypothesisViolationExitsTwo) {
    CliRun r = run("verify thm1 --d 5 --r 3 --n 9");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("r <= d-4"), std::string::npos) << r.err;
    auto j = first_record(r);
    EXPECT_EQ(j["status"], "ERROR");
}

TEST(CliVerify, OtherChecks) {
    EXPECT_EQ(run("verify vanhamme --p 5").code, 0);
    EXPECT_EQ(run("verify vanhamme --p 3").code, 2);
    EXPECT_EQ(run("verify thm2 --d 5 --r 1 --n 7").code, 0);
    EXPECT_EQ(run("verify conj3 --d 5 --r 1 --n 7 --trunc upper").code, 0);
    EXPECT_EQ(run("verify conj1 --d 5 --n 2 --trunc full").code, 0);
    EXPECT_EQ(run("verify conj2 --d 5 --n 6").code, 0);
    EXPECT_EQ(run("verify lemma4 --d 5 --r 1 --n 7").code, 0);
    EXPECT_EQ(run("verify lemma4 --d 5 --r 1 --n 8").code, 2);
    EXPECT_EQ(run("verify lemma3 --d 5 --r 1 --n 7").code, 0);
    EXPECT_EQ(run("verify lemma3 --d 5 --r 1 --n 5").code, 2);
    EXPECT_EQ(run("verify modsquare --alpha 1 --r 1 --n 7 --d 5 --k-max 3").code, 0);
}

TEST(CliVerify, OracleFlagAgrees) {
    CliRun r = run("verify thm1 --d 7 --r -1 --n 8 --oracle");
    EXPECT_EQ(r.code, 0);
    auto j = first_record(r);
    EXPECT_EQ(j["oracle"], "PASS");
    EXPECT_EQ(j["oracle_agrees"], true);
}

TEST(CliVerify, OutputFile) {
    const auto path = std::filesystem::temp_directory_path() / ("qc_cli_out_" + std::to_string(::getpid()));
    CliRun r = run("verify thm2 --d 5 --r 1 --n 2 --seed 9 --output " + path.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    auto j = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(j["seed"], 9);
    std::filesystem::remove(path);
}

TEST(CliUsage, BadArgumentsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("verify").code, 2);
    EXPECT_EQ(run("verify thm7 --d 5 --r 1 --n 4").code, 2);
    EXPECT_EQ(run("verify thm1 --d five --r 1 --n 4").code, 2);
    EXPECT_EQ(run("verify thm1 --d 5 --r 1 --n 4 --trunc sideways").code, 2);
    EXPECT_EQ(run("identity nonsense").code, 2);
    EXPECT_EQ(run("sweep --theorem thm1 --conjecture conj1").code, 2);
    EXPECT_EQ(run("sweep --theorem thm1 --d-max 99").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(CliIdentity, Examples) {
    CliRun a = run("identity andrews --m 2 --N 3 --trials 20 --seed 42");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 20);
    EXPECT_EQ(run("identity gasper-km --m 2 --N 3 --trials 20 --seed 7").code, 0);
    EXPECT_EQ(run("identity multi-km --m 3 --trials 10 --seed 1").code, 0);
    EXPECT_EQ(run("identity watson --trials 10 --seed 3").code, 0);
    EXPECT_EQ(a.out, run("identity andrews --m 2 --N 3 --trials 20 --seed 42").out);
}

TEST(CliSweep, EmptyRangeExitsZero) {
    CliRun r = run("sweep --theorem thm1 --d-max 4 --n-max 30");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("0 cases"), std::string::npos) << r.err;
}

TEST(CliSweep, ConjectureModeIsInformational) {
    CliRun r = run("sweep --conjecture conj3 --d-max 5 --n-max 12");
    EXPECT_EQ(r.code, 0);
    EXPECT_GT(r.out.size(), 0u);
}

TEST(CliSweep, TheoremSweepReportsFailures) {
    // the grid up to n = 10 contains (5,-1,6), which is short at Phi_2
    CliRun r = run("sweep --theorem thm1 --d-max 5 --n-max 10");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"FAIL\""), std::string::npos);
}

TEST(CliSweep, ByteIdenticalAcrossJobs) {
    const std::string args = "sweep --theorem thm2 --d-max 7 --n-max 16 --seed 5 --oracle";
    CliRun one = run(args + " --jobs 1");
    CliRun four = run(args + " --jobs 4");
    EXPECT_EQ(one.code, four.code);
    EXPECT_FALSE(one.out.empty());
    EXPECT_EQ(one.out, four.out);
}
