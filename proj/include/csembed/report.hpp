#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "csembed/linalg.hpp"

namespace csembed::report {

using csembed::Complex;

// One verification outcome.  pass is always recomputed from the errors:
// rel_err <= tol, falling back to abs_err <= tol when |rhs| < 1e-12.
struct CheckReport {
  std::string check_name;
  std::string identity;  // mathematical identity the check instantiates
  nlohmann::json params = nlohmann::json::object();
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  long long wall_time_ms = 0;
};

// Fill abs/rel errors and the pass flag from lhs, rhs, tol.
CheckReport make_check(const std::string& name, const std::string& identity,
                       nlohmann::json params, Complex lhs, Complex rhs, double tol);

// One-sided threshold check: passes when measured >= threshold; the error
// fields carry the violation amount.
CheckReport make_threshold_check(const std::string& name, const std::string& identity,
                                 nlohmann::json params, double measured, double threshold,
                                 double tol = 1e-12);

nlohmann::json to_json(const CheckReport& r);
CheckReport check_from_json(const nlohmann::json& j);

// JSON-lines serialization; wall_time_ms is written only when with_timings
// is set so that repeated runs stay byte-identical.
std::string to_json_line(const CheckReport& r, bool with_timings);

}  // namespace csembed::report
