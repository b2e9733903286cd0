// Acceptance runner: executes every verification suite on the pinned
// desk-scale grid at the pinned tolerances and prints one line per
// criterion.  Exit code is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "csembed/suites.hpp"

using namespace csembed;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string label;
  std::vector<std::string> suites;
  double budget_seconds;
};

int g_failures = 0;

void report_line(const std::string& label, bool pass, double seconds, double budget,
                 const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("[%s] %-38s %7.2fs (budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", label.c_str(),
              seconds, budget, detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"01 bruhat-reconstruction", {"bruhat"}, 5.0},
      {"02 iwasawa-reconstruction", {"iwasawa"}, 5.0},
      {"03 reciprocal-jacobian", {"jacobian"}, 10.0},
      {"04 gamma-functional-equation", {"functional-eq"}, 60.0},
      {"05 unramified-norm-identity", {"unramified-norm"}, 300.0},
      {"06 form-gram-positivity", {"form-positivity"}, 300.0},
      {"07 transverse-kernel-closed-form", {"m-operator"}, 300.0},
      {"08 embedding-isometry", {"isometry"}, 600.0},
      {"09 adjointness-and-identity", {"adjoint", "adjoint-identity"}, 600.0},
      {"10 parabolic-equivariance", {"equivariance"}, 30.0},
      {"11 descent-chains", {"chain"}, 1.0},
  };

  suites::SuiteConfig cfg;  // pinned defaults: grid, tolerances, seed

  // Reports accumulated in suite order reproduce a full `all` run.
  std::ostringstream first_pass;
  for (const auto& crit : criteria) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& name : crit.suites) {
      suites::SuiteConfig c = cfg;
      c.suite = name;
      std::ostringstream summary;
      const int code = suites::run_suite(c, first_pass, summary);
      if (code != 0) {
        ok = false;
        // surface the first failing line
        std::istringstream lines(summary.str());
        std::string line;
        while (std::getline(lines, line))
          if (line.rfind("[FAIL]", 0) == 0 || line.rfind("[ABORT]", 0) == 0) {
            detail = line;
            break;
          }
      }
    }
    const double secs =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() / 1e3;
    report_line(crit.label, ok && secs <= crit.budget_seconds, secs, crit.budget_seconds, detail);
  }

  // 12: a repeated full run produces byte-identical reports
  {
    const auto t0 = Clock::now();
    suites::SuiteConfig c = cfg;
    c.suite = "all";
    std::ostringstream second_pass, summary;
    suites::run_suite(c, second_pass, summary);
    const bool identical = first_pass.str() == second_pass.str() && !first_pass.str().empty();
    const double secs =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() / 1e3;
    report_line("12 report-determinism", identical, secs, 900.0,
                identical ? "" : "report streams differ between runs");
  }

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
