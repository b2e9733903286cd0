// Suite runner: every verification is a named command emitting
// machine-readable JSON-lines reports (or the chain CSV table).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "csembed/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical verification suites for the rank-one embedding identities"};
  app.name("verify");

  csembed::suites::SuiteConfig cfg;
  std::string suite = "all";
  app.add_option("suite", suite, "one of: bruhat iwasawa jacobian functional-eq unramified-norm "
                                 "form-positivity m-operator isometry adjoint adjoint-identity "
                                 "equivariance chain all")
      ->required();

  int n = 0, i = -1;
  double u = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double tol = std::numeric_limits<double>::quiet_NaN();
  app.add_option("--n", n, "restrict to one rank parameter n");
  app.add_option("--i", i, "restrict to one degree i");
  app.add_option("--u", u, "restrict to one parameter u");
  app.add_option("--s", s, "use one value of s (functional-eq)");
  app.add_option("--tol", tol, "override the suite tolerance");
  app.add_option("--seed", cfg.seed, "random seed recorded in the reports");
  app.add_option("--grid", cfg.grid, "grid preset: default | quick");
  app.add_option("--quad-nodes", cfg.quad_nodes, "base radial node count override");
  app.add_option("--report", cfg.report_path, "write reports to this path instead of stdout");
  app.add_option("--format", cfg.format, "report format: json | csv (csv: chain only)");
  app.add_flag("--timings", cfg.timings, "include wall_time_ms in report files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // config/usage errors exit with 2
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.suite = suite;
  if (n > 0) cfg.n = n;
  if (i >= 0) cfg.i = i;
  if (!std::isnan(u)) cfg.u = u;
  if (!std::isnan(s)) cfg.s = s;
  if (!std::isnan(tol)) cfg.tol = tol;

  try {
    if (!cfg.report_path.empty()) {
      std::ofstream file(cfg.report_path);
      if (!file) {
        std::cerr << "cannot open report path: " << cfg.report_path << "\n";
        return 2;
      }
      return csembed::suites::run_suite(cfg, file, std::cout);
    }
    return csembed::suites::run_suite(cfg, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
