// Acceptance runner: one PASS/FAIL line per criterion, with the parameters,
// tolerances and time limits fixed below. Exit status is nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "hsets/verify.hpp"

namespace {

using hsets::Int;
using hsets::VerifyConfig;
using hsets::Window;

struct Criterion {
  int number;
  std::string label;
  double time_limit_seconds;
  std::vector<std::pair<std::string, VerifyConfig>> suites;
};

VerifyConfig config(std::function<void(VerifyConfig&)> set = {}) {
  VerifyConfig c;
  c.seed = 20240601;
  if (set) set(c);
  return c;
}

std::vector<Criterion> criteria() {
  return {
      {1, "integers-tail h=2..5 q=1..20 window [-50,50]", 5.0,
       {{"integers-tail", config([](VerifyConfig& c) {
           c.h_max = 5;
           c.Q = Int(20);
           c.window = Window(-50, 50);
         })}}},
      {2, "congruence-chain A={0,1,3} m_q=7*2^(q-1) h<=4 Q=6 window [-100,100]", 2.0,
       {{"congruence-chain", config([](VerifyConfig& c) {
           c.h_max = 4;
           c.Q = Int(6);
           c.window = Window(-100, 100);
         })}}},
      {3, "rational b_n=4n h in {2,3} Q=10 window [0,40], zero tolerance", 30.0,
       {{"rational", config([](VerifyConfig& c) {
           c.Q = Int(10);
           c.window = Window(0, 40);
         })}}},
      {4, "open-intervals q<=10 on (0,20), radius <= 2/10", 2.0,
       {{"open-intervals", config([](VerifyConfig& c) { c.Q = Int(10); })}}},
      {5, "surjection m<=12 |B|<=3 h<=4", 10.0,
       {{"surjection", config([](VerifyConfig& c) {
           c.Q = Int(12);
           c.h_max = 4;
         })}}},
      {6, "product-closure tail x congruence h<=4", 10.0,
       {{"product-closure", config([](VerifyConfig& c) { c.h_max = 4; })}}},
      {7, "affine 50 random families, unit +-1, |t|<=10", 10.0,
       {{"affine", config([](VerifyConfig& c) { c.samples = 50; })}}},
      {8, "vector-min 10^4 tuples k<=8 d<=5, zero failures", 2.0,
       {{"vector-min", config([](VerifyConfig& c) { c.samples = 10000; })}}},
      {9, "lattice d=2 A={(0,0),(1,1)} h<=3 box 5 Q=5", 5.0,
       {{"lattice", config([](VerifyConfig& c) {
           c.h_max = 3;
           c.Q = Int(5);
         })}}},
      {10, "finiteness (20 families, h<=4) + countable enumeration h=2..4", 20.0,
       {{"finiteness", config()},
        {"finiteness-H", config([](VerifyConfig& c) { c.h_max = 4; })},
        {"countable", config([](VerifyConfig& c) { c.h_max = 4; })}}},
      {11, "oracle 200 random finite sets |A|<=8 in [-12,12] h<=4", 10.0,
       {{"oracle", config([](VerifyConfig& c) { c.samples = 200; })}}},
      {12, "exact-order 4Z u {1} and 3Z u {1} via tail family", 2.0, {{"exact-order", config()}}},
  };
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& crit : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& [id, cfg] : crit.suites) {
      try {
        const auto report = hsets::run_suite(id, cfg);
        if (!report.passed()) {
          ok = false;
          for (const auto& c : report.checks)
            if (!c.passed) detail += " [" + id + ": " + c.name + (c.detail.empty() ? "" : " " + c.detail) + "]";
        } else {
          detail += " [" + id + ": " + std::to_string(report.checks.size()) + " checks]";
        }
      } catch (const std::exception& e) {
        ok = false;
        detail += " [" + id + " threw: " + e.what() + "]";
      }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < crit.time_limit_seconds;
    if (!in_time) detail += " [time limit exceeded]";
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %s (%.2fs / %.0fs)%s\n", pass ? "PASS" : "FAIL", crit.number, crit.label.c_str(), seconds,
                crit.time_limit_seconds, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
