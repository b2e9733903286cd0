#include "csembed/report.hpp"

#include <cmath>

namespace csembed::report {

namespace {

void fill_errors(CheckReport& r) {
  r.abs_err = std::abs(r.lhs - r.rhs);
  if (std::abs(r.rhs) < 1e-12) {
    r.rel_err = r.abs_err;
    r.pass = r.abs_err <= r.tol;
  } else {
    r.rel_err = r.abs_err / std::abs(r.rhs);
    r.pass = r.rel_err <= r.tol;
  }
}

}  // namespace

CheckReport make_check(const std::string& name, const std::string& identity,
                       nlohmann::json params, Complex lhs, Complex rhs, double tol) {
  CheckReport r;
  r.check_name = name;
  r.identity = identity;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tol = tol;
  fill_errors(r);
  return r;
}

CheckReport make_threshold_check(const std::string& name, const std::string& identity,
                                 nlohmann::json params, double measured, double threshold,
                                 double tol) {
  CheckReport r;
  r.check_name = name;
  r.identity = identity;
  r.params = std::move(params);
  r.params["measured"] = measured;
  r.params["threshold"] = threshold;
  r.lhs = Complex(std::max(0.0, threshold - measured), 0.0);
  r.rhs = Complex(0.0, 0.0);
  r.tol = tol;
  fill_errors(r);
  return r;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check"] = r.check_name;
  j["identity"] = r.identity;
  j["params"] = r.params;
  j["lhs"] = {{"re", r.lhs.real()}, {"im", r.lhs.imag()}};
  j["rhs"] = {{"re", r.rhs.real()}, {"im", r.rhs.imag()}};
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

CheckReport check_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check_name = j.at("check").get<std::string>();
  r.identity = j.at("identity").get<std::string>();
  r.params = j.at("params");
  r.lhs = Complex(j.at("lhs").at("re").get<double>(), j.at("lhs").at("im").get<double>());
  r.rhs = Complex(j.at("rhs").at("re").get<double>(), j.at("rhs").at("im").get<double>());
  r.abs_err = j.at("abs_err").get<double>();
  r.rel_err = j.at("rel_err").get<double>();
  r.tol = j.at("tol").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.wall_time_ms = j.value("wall_time_ms", 0LL);
  return r;
}

std::string to_json_line(const CheckReport& r, bool with_timings) {
  CheckReport copy = r;
  if (!with_timings) copy.wall_time_ms = 0;
  return to_json(copy).dump();
}

}  // namespace csembed::report
