#include "jobs.hpp"

#include "epsum/parse.hpp"
#include "epsum/worked_examples.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace epsum;
using namespace epsum::cli;

namespace {

const std::string kData = EPSUM_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run_cli(const std::string& args)
{
    CliRun r;
    std::string cmd = std::string(EPSUM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

}  // namespace

TEST(Jobs, ExpandSumPoleCoefficient)
{
    JobReport r = run_job({"expand-sum", {{"term", data("summand.term")}}, {{"orders", "3"}}});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    EpsSeries s = parse_series(r.json["series"].get<std::string>(), Var::k);
    EXPECT_EQ(s.start(), -3);
    EXPECT_TRUE((s.coefficient(-1) + fixtures::pole_bracket()).is_zero()) << r.text;
}

TEST(Jobs, SolveRecMatchesClosedForm)
{
    SumExpression closed = fixtures::pole_closed_form();
    std::string ivs = "1 = " + closed.evaluate(1).to_string() + "; 2 = " + closed.evaluate(2).to_string();
    JobReport r = run_job({"solve-rec", {{"op", data("pole.rec")}, {"rhs", data("pole.rhs")}, {"iv", ivs}}, {}});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    EXPECT_EQ(parse_sum_expression(r.json["solution"].get<std::string>()), closed);
}

TEST(Jobs, VerifyClosedFormAgainstRecurrence)
{
    JobReport r = run_job({"verify", {{"rec", data("pole.rec")}, {"rhs", data("pole.rhs")}, {"solution", data("pole.closed")}}, {}});
    EXPECT_EQ(r.exit_code, 0) << r.text;
    EXPECT_TRUE(r.json["pass"].get<bool>());
}

TEST(Jobs, VerifyDetectsMismatch)
{
    JobReport ok = run_job({"verify", {{"lhs", "S[1](N)^2"}, {"rhs", "2*S[1,1](N) - S[2](N)"}}, {}});
    EXPECT_EQ(ok.exit_code, 0);
    JobReport bad = run_job({"verify", {{"lhs", "S[1](N)"}, {"rhs", "S[2](N)"}}, {}});
    EXPECT_EQ(bad.exit_code, 1);
}

TEST(Jobs, UsageAndParseErrors)
{
    EXPECT_EQ(run_job({"frobnicate", {}, {}}).exit_code, 2);
    EXPECT_EQ(run_job({"zeilberger", {}, {}}).exit_code, 2);
    JobReport r = run_job({"solve-rec", {{"op", "F(N+1) - * F(N)"}}, {}});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_TRUE(r.json.contains("column"));
    EXPECT_THROW(parse_job(""), std::exception);
}

TEST(Jobs, OdeToRecFirstLine)
{
    JobReport r = run_job({"ode-to-rec", {{"sys", data("ladder-ode.json")}}, {}});
    ASSERT_EQ(r.exit_code, 0) << r.text;
    EXPECT_NE(r.text.find("N*I1(N-1) - (ep + N + 1)*I1(N) + 2*I2(N)"), std::string::npos) << r.text;
}

TEST(Cli, EmptyJobFileIsUsageError)
{
    auto path = std::filesystem::temp_directory_path() / "epsum-empty-job.json";
    std::ofstream(path).close();
    CliRun r = run_cli("run " + path.string());
    EXPECT_EQ(r.status, 2);
    std::filesystem::remove(path);
}

TEST(Cli, DeterministicJsonOutput)
{
    std::string args = "--json zeilberger --term " + data("summand.term");
    CliRun a = run_cli(args), b = run_cli(args);
    ASSERT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("\"verified\": true"), std::string::npos) << a.out;
}

TEST(Cli, ReproduceSummationTopic)
{
    CliRun r = run_cli("reproduce --only summation");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("pole-term"), std::string::npos);
    EXPECT_EQ(r.out.find("companion"), std::string::npos);
}

TEST(Cli, OutDirectoryReceivesArtifacts)
{
    auto dir = std::filesystem::temp_directory_path() / "epsum-cli-out";
    std::filesystem::remove_all(dir);
    CliRun r = run_cli("solve-system --sys " + data("ladder-rec.json") + " --iv " + data("ladder-iv.json") +
                    " --orders 2 --out " + dir.string());
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "I1.series"));
    EXPECT_TRUE(std::filesystem::exists(dir / "residuals.json"));
    std::filesystem::remove_all(dir);
}
