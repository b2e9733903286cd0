#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csembed/embedding.hpp"
#include "csembed/params.hpp"
#include "csembed/report.hpp"

// Named verification suites over the desk-scale grids, shared by the CLI
// and the acceptance tests.  Every suite is deterministic for a fixed
// configuration and seed.

namespace csembed::suites {

using report::CheckReport;
using schwartz::SchwartzFn;
using schwartz::SchwartzVec;

struct SuiteConfig {
  std::string suite = "all";
  std::optional<int> n;
  std::optional<int> i;
  std::optional<double> u;
  std::optional<double> s;
  std::optional<double> tol;
  std::uint64_t seed = 0x5eed;
  std::string grid = "default";  // default | quick
  int quad_nodes = 0;            // base radial node override (0 = per-dimension default)
  std::string report_path;       // empty: reports go to the primary stream
  std::string format = "json";   // json | csv (csv is chain-only)
  bool timings = false;
};

// ---- deterministic test-function families ----

SchwartzFn standard_atom(int d, int k);
std::vector<SchwartzFn> scalar_family(int d, int count);
// Lambda^i(R^d)-valued functions of a var_dim-dimensional variable.
std::vector<SchwartzVec> vector_family(int d_basis, int i, int var_dim, int count);
SchwartzFn random_atom(csembed::Rng& rng, int d);
SchwartzVec as_vector(const SchwartzFn& f, int i = 0);  // scalar -> Lambda^0 wrapper

quadrature::QuadratureSpec default_spec(int d, int quad_nodes = 0);

// ---- individual suites ----

std::vector<CheckReport> suite_bruhat(const SuiteConfig& cfg);
std::vector<CheckReport> suite_iwasawa(const SuiteConfig& cfg);
std::vector<CheckReport> suite_jacobian(const SuiteConfig& cfg);
std::vector<CheckReport> suite_functional_eq(const SuiteConfig& cfg);
std::vector<CheckReport> suite_unramified_norm(const SuiteConfig& cfg);
std::vector<CheckReport> suite_form_positivity(const SuiteConfig& cfg);
std::vector<CheckReport> suite_m_operator(const SuiteConfig& cfg);
std::vector<CheckReport> suite_isometry(const SuiteConfig& cfg);
std::vector<CheckReport> suite_adjoint(const SuiteConfig& cfg);
std::vector<CheckReport> suite_adjoint_identity(const SuiteConfig& cfg);
std::vector<CheckReport> suite_equivariance(const SuiteConfig& cfg);
std::vector<CheckReport> suite_chain(const SuiteConfig& cfg, std::string* csv_table = nullptr);

bool known_suite(const std::string& name);
std::vector<std::string> suite_names();

// Runs one suite (or "all"), writes JSON-lines (or the chain CSV) to the
// report sink.  Exit code: 0 all pass, 1 any failure, 2 config error.
int run_suite(const SuiteConfig& cfg, std::ostream& reports, std::ostream& summary);

}  // namespace csembed::suites
