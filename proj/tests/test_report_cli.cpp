#include <gtest/gtest.h>

#include <sstream>

#include "twoclass/cli.hpp"
#include "twoclass/report.hpp"

using namespace twoclass;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Report, DocumentRoundTrip)
{
    auto r = classify::predict(arith::factor_squarefree(1365));
    r.verified = classify::verify_against_oracle(r);
    report::ReportDocument doc;
    doc.command = "classify";
    doc.inputs = {{"d", 1365}};
    doc.results = report::prediction_json(r);
    doc.mismatches.push_back({{"d", 1}, {"claim", "x"}, {"predicted", "1"}, {"observed", "2"}});
    json j = doc;
    auto back = json::parse(j.dump()).get<report::ReportDocument>();
    EXPECT_EQ(back, doc);
    EXPECT_EQ(json(back).dump(), j.dump());
    EXPECT_EQ(back.schema_version, report::schema_version);
}

TEST(Report, GroupAndCsv)
{
    auto g = report::group_json(Abelian2Group({2, 4}));
    EXPECT_EQ(g["text"], "Z/2 + Z/4");
    EXPECT_EQ(g["order"], 8);
    auto r = classify::predict(arith::factor_squarefree(1365));
    auto header = report::csv_header();
    auto row = report::csv_row(r, nullptr);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), 18);
    EXPECT_EQ(row.rfind("1365,ppqq/1,2,3,2,", 0), 0u) << row;
}

TEST(Cli, ClassifyReportsStructures)
{
    auto r = run({"classify", "1365"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_EQ(j["command"], "classify");
    EXPECT_EQ(j["results"]["structure_K"]["group"]["factors"], json({2, 2}));
    EXPECT_EQ(j["results"]["structure_Kprime"]["group"]["factors"], json({2, 2, 2}));
    EXPECT_EQ(j["results"]["structure_K1"]["group"]["factors"], json({2, 4}));
}

TEST(Cli, ClassgroupNarrow40)
{
    auto r = run({"classgroup", "40", "--narrow"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["results"]["order"], 2);
    EXPECT_EQ(j["results"]["invariant_factors"], json({2}));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, cli::usage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::usage);
    EXPECT_EQ(run({"classify"}).code, cli::usage);
    EXPECT_EQ(run({"classify", "abc"}).code, cli::usage);
    EXPECT_EQ(run({"classify", "30"}).code, cli::usage);
    EXPECT_EQ(run({"classify", "45"}).code, cli::usage);
    EXPECT_EQ(run({"classgroup", "40", "--narrow", "--ordinary"}).code, cli::usage);
    EXPECT_EQ(run({"classgroup", "43"}).code, cli::usage);
    EXPECT_EQ(run({"s1s2", "1364"}).code, cli::usage);
    EXPECT_EQ(run({"unit", "12"}).code, cli::usage);
    EXPECT_EQ(run({"find-primes", "--mod8", "5,x"}).code, cli::usage);
    EXPECT_EQ(run({"find-primes", "--mod8", "5,5", "--symbols", "1,1=1"}).code, cli::usage);
    EXPECT_EQ(run({"enumerate", "--max", "100", "--shape", "zz/1"}).code, cli::usage);
    EXPECT_EQ(run({"unit", "5", "--csv"}).code, cli::usage);
    EXPECT_EQ(run({"--oracle-limit", "1000", "classify", "1365", "--oracle"}).code, cli::exhausted);
    EXPECT_EQ(run({"find-primes", "--mod8", "1,1,1", "--symbols", "2,1=1;3,1=1;3,2=1", "--bound", "1"}).code,
              cli::exhausted);
    EXPECT_EQ(run({"--help"}).code, cli::ok);
    EXPECT_EQ(run({"verify", "--max", "300"}).code, cli::ok);
}

TEST(Cli, FindPrimesUsesOneBasedLabelsAndReciprocity)
{
    auto r = run({"find-primes", "--mod8", "7,3", "--symbols", "1,2=1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    auto ps = j["results"]["primes"].get<std::vector<std::int64_t>>();
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_TRUE(j["results"]["verified"].get<bool>());
    // (p1/p2) = 1 with both primes 3 mod 4 means (p2/p1) = -1
    EXPECT_EQ(j["results"]["normalized_symbols"][0]["value"], -1);
    EXPECT_EQ(arith::kronecker(ps[0], ps[1]), 1);
}

TEST(Cli, EnumerateDeterministicAcrossThreads)
{
    auto a = run({"--threads", "1", "enumerate", "--min", "1000", "--max", "2500", "--oracle"});
    auto b = run({"--threads", "4", "enumerate", "--min", "1000", "--max", "2500", "--oracle"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = run({"--threads", "3", "--csv", "enumerate", "--max", "2000", "--shape", "ppp/1"});
    ASSERT_EQ(c.code, 0);
    std::istringstream lines(c.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, report::csv_header());
    EXPECT_EQ(first.rfind("1105,ppp/1,", 0), 0u) << first;
}

TEST(Cli, GlobalFlagsAfterSubcommand)
{
    auto a = run({"--csv", "enumerate", "--max", "1200", "--threads", "2"});
    auto b = run({"enumerate", "--max", "1200", "--csv"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out.rfind(report::csv_header(), 0), 0u);
}

TEST(Cli, S1S2MatchesOracle)
{
    auto r = run({"s1s2", "10920"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["results"]["S1_count"], 16);
    EXPECT_EQ(j["results"]["oracle"]["mod_2"], 16);
    EXPECT_EQ(j["results"]["S2_count"], j["results"]["oracle"]["two_mod_4"]);
}
