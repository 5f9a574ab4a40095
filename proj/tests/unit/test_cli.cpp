#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hsets/json_io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hsets::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HSETS_TEST_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(CliHset, TailFamilyFiveRows) {
  const auto r = run({"hset", data("tail.json"), "--hmax", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_EQ(ls[1].rfind("1\tCertifiedIn", 0), 0u);
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(ls[i].rfind(std::to_string(i) + "\tCertifiedOut\t0\t", 0), 0u) << ls[i];
}

TEST(CliHset, CongruenceChainAllIn) {
  const auto r = run({"hset", data("congruence_chain.json"), "--hmax", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["verdicts"].size(), 4u);
  for (const auto& v : j["verdicts"]) EXPECT_EQ(v["status"], "CertifiedIn");
}

TEST(CliHset, ExactOrderFour) {
  const auto r = run({"hset", data("order4.json"), "--hmax", "5", "--window=-40:40", "--Q", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_NE(ls[3].find("CertifiedOut"), std::string::npos);
  EXPECT_NE(ls[4].find("CertifiedIn"), std::string::npos);
}

TEST(CliHset, InputErrors) {
  EXPECT_EQ(run({"hset", data("malformed.json")}).code, 2);
  const auto bad = run({"hset", data("bad_chain.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("m_1 > 2m* violated"), std::string::npos);
  EXPECT_EQ(run({"hset", data("missing.json")}).code, 2);
  EXPECT_EQ(run({"hset", data("tail.json"), "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"hset", data("tail.json"), "--window", "5"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliHset, ResourceCap) {
  const auto r = run({"hset", data("tail.json"), "--hmax", "3", "--max-window", "10"});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(CliHset, JsonReportRoundTrips) {
  const auto r = run({"hset", data("order4.json"), "--hmax", "4", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(hsets::to_json(hsets::report_from_json(j)), j);
}

TEST(CliHset, OutFile) {
  const std::string path = ::testing::TempDir() + "hsets_cli_out.tsv";
  const auto r = run({"hset", data("tail.json"), "--hmax", "2", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "h\tstatus\twitness\tevidence\tQ\twindow");
  std::remove(path.c_str());
}

TEST(CliVerify, ReferenceExamples) {
  EXPECT_EQ(run({"verify", "integers-tail"}).code, 0);
  const auto vm = run({"verify", "vector-min", "--samples", "10000"});
  EXPECT_EQ(vm.code, 0);
  EXPECT_NE(vm.out.find("PASS"), std::string::npos);
  const auto rq = run({"verify", "rational", "--Q", "3", "--h", "2"});
  EXPECT_EQ(rq.code, 2);
  EXPECT_NE(rq.err.find("2h < Q"), std::string::npos) << rq.err;
  EXPECT_EQ(run({"verify", "no-such-id"}).code, 2);
}

TEST(CliVerify, JsonOutputAndSeed) {
  const auto a = run({"verify", "vector-min", "--samples", "300", "--seed", "9", "--format", "json"});
  const auto b = run({"verify", "vector-min", "--samples", "300", "--seed", "9", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  EXPECT_EQ(ja["checks"], jb["checks"]);
  EXPECT_TRUE(ja["passed"].get<bool>());
}

TEST(CliSumset, ReferenceExamples) {
  const auto r = run({"sumset", "--set", "finite:0,1,3", "--h", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "0 1 2 3 4 6, complete");
  const auto p = run({"sumset", "--set", "finite:-2,3", "--h", "2", "--mode", "mult", "--window=-10:10"});
  EXPECT_EQ(lines(p.out).front(), "-6 4 9, complete");
  const auto w = run({"sumset", "--set", "powers2", "--h", "2", "--window=-5:5", "--gen-radius", "40"});
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(w.out.find("incomplete"), std::string::npos);
}

TEST(CliRepfn, ReferenceExamples) {
  EXPECT_EQ(run({"repfn", "--mode", "mult", "--set", "nonzero", "--h", "2", "--x", "6"}).out, "8\n");
  EXPECT_EQ(run({"repfn", "--mode", "add", "--set", "all", "--h", "2", "--x", "0"}).out, "infinite\n");
  EXPECT_EQ(run({"repfn", "--mode", "mult", "--set", "nonzero", "--h", "2", "--x", "0"}).code, 2);
  EXPECT_EQ(run({"repfn", "--set", "halftail:0", "--h", "3", "--x", "10"}).out, "66\n");
}

TEST(CliHelp, ExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}
