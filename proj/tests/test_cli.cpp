#include <charvar/cli.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace charvar;
using namespace charvar::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const CampaignConfig& c) {
  std::ostringstream out, err;
  const int code = dispatch(c, out, err);
  return {code, out.str(), err.str()};
}

CampaignConfig config(const std::string& command) {
  CampaignConfig c;
  c.command = command;
  return c;
}

std::vector<io::json> lines(const std::string& text) {
  std::vector<io::json> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(io::json::parse(line));
  return out;
}

}  // namespace

TEST(Cli, ParseRange) {
  EXPECT_EQ(parse_range("3"), (std::pair{3, 3}));
  EXPECT_EQ(parse_range("2..8"), (std::pair{2, 8}));
  EXPECT_FALSE(parse_range("8..2"));
  EXPECT_FALSE(parse_range("x"));
  EXPECT_FALSE(parse_range("3x"));
}

TEST(Cli, SampleFourPuncturesIsNeverGeneric) {
  CampaignConfig c = config("sample");
  c.k = 4;
  c.count = 100;
  c.seed = 7;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  const auto records = lines(r.out);
  ASSERT_EQ(records.size(), 100u);
  for (const auto& j : records) EXPECT_NE(j["locus"], "generic");
}

TEST(Cli, SampleThreePuncturesGivesOneClass) {
  CampaignConfig c = config("sample");
  c.k = 3;
  c.count = 10;
  c.seed = 1;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  const auto records = lines(r.out);
  for (const auto& j : records) EXPECT_EQ(j["fingerprint_digest"], records.front()["fingerprint_digest"]);
  EXPECT_NE(r.err.find("distinct_classes=1"), std::string::npos);
}

TEST(Cli, SampleRejectsBadConfig) {
  CampaignConfig c = config("sample");
  c.k = 2;
  EXPECT_EQ(run(c).code, 2);
  c.k = 17;
  EXPECT_EQ(run(c).code, 2);
  c.k = 4;
  c.count = 0;
  EXPECT_EQ(run(c).code, 2);
  EXPECT_EQ(run(config("bogus")).code, 2);
}

TEST(Cli, ParallelOutputMatchesSerial) {
  CampaignConfig c = config("sample");
  c.k = 6;
  c.count = 64;
  c.seed = 5;
  const CliRun serial = run(c);
  c.threads = 4;
  const CliRun parallel = run(c);
  EXPECT_EQ(serial.out, parallel.out);
}

TEST(Cli, CoverRoundTrip) {
  CampaignConfig c = config("cover");
  c.subaction = "roundtrip";
  c.count = 200;
  c.seed = 3;
  EXPECT_EQ(run(c).code, 0);
  c.tol.roundtrip = 0.0;
  c.tol.rel = 1e-10;
  // A zero round-trip tolerance cannot hold in floating point for every sample.
  EXPECT_EQ(run(c).code, 1);
}

TEST(Cli, CoverFiberBranchFractionIsZero) {
  CampaignConfig c = config("cover");
  c.subaction = "fiber";
  c.count = 100;
  c.seed = 9;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("branch_fraction=0 "), std::string::npos);
  for (const auto& j : lines(r.out)) EXPECT_EQ(j["class_count"], 2);
}

TEST(Cli, CoverFiberOnAbelianPoints) {
  CampaignConfig c = config("cover");
  c.subaction = "fiber";
  c.abelian_points = true;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  const auto records = lines(r.out);
  ASSERT_EQ(records.size(), 16u);
  for (const auto& j : records) {
    EXPECT_EQ(j["on_branch"], true);
    EXPECT_EQ(j["class_count"], 1);
  }
}

TEST(Cli, CoverUsageErrors) {
  CampaignConfig c = config("cover");
  c.subaction = "sideways";
  EXPECT_EQ(run(c).code, 2);
  c.subaction = "push";
  c.k = 4;
  EXPECT_EQ(run(c).code, 2);
  c.k.reset();
  c.abelian_points = true;
  EXPECT_EQ(run(c).code, 2);
}

TEST(Cli, MorseReports) {
  CampaignConfig c = config("morse");
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  const auto j = io::json::parse(r.out);
  EXPECT_EQ(j["det_A"], "1");
  EXPECT_EQ(j["eig_positive"], 4);
  EXPECT_EQ(j["eig_negative"], 4);

  c.n_lo = 2;
  c.n_hi = 8;
  const CliRun all = run(c);
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(lines(all.out).size(), 7u);

  c.n_lo = c.n_hi = 1;
  EXPECT_EQ(run(c).code, 2);
  c.n_lo = c.n_hi = 13;
  EXPECT_EQ(run(c).code, 2);
}

TEST(Cli, MorseDetectsInjectedFault) {
  CampaignConfig c = config("morse");
  c.inject_fault = "matrix-a";
  EXPECT_EQ(run(c).code, 1);
}

TEST(Cli, Lemma52CoversFamilies) {
  CampaignConfig c = config("lemma52");
  c.count = 500;
  c.format = Format::csv;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(",[b,c],"), std::string::npos);
  EXPECT_NE(r.out.find(",commuting,"), std::string::npos);
}

TEST(Cli, LinkSampleCsv) {
  CampaignConfig c = config("link-sample");
  c.n_lo = c.n_hi = 3;
  c.count = 20;
  c.format = Format::csv;
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, io::link_csv_header(3));
  int rows = 0;
  for (std::string line; std::getline(is, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
  }
  EXPECT_EQ(rows, 20);
  c.n_hi = 4;
  EXPECT_EQ(run(c).code, 2);
}

TEST(Cli, SelftestPassesAndIsDeterministic) {
  CampaignConfig c = config("selftest");
  const CliRun a = run(c), b = run(c);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 11);
}

TEST(Cli, SelftestNamesTheHessianSuitesUnderFault) {
  CampaignConfig c = config("selftest");
  c.inject_fault = "matrix-a";
  const CliRun r = run(c);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL Hessian exact suite"), std::string::npos);
  EXPECT_NE(r.out.find("FAIL Hessian numeric suite"), std::string::npos);
  c.inject_fault = "nonsense";
  EXPECT_EQ(run(c).code, 2);
}
