#include "csembed/params.hpp"

#include <cmath>

namespace csembed::params {

Validity validate(int n, int i, double u) {
  if (n < 3) return {false, "need n >= 3"};
  if (i < 0) return {false, "need i >= 0"};
  if (i > n / 2 - 1) return {false, "degree above [n/2] - 1"};
  const double lo = 1.0 / (n - 1);
  const double hi = 1.0 - 2.0 * i / (n - 1);
  if (u <= lo) {
    if (u >= hi) return {false, "window empty or u outside on both sides"};
    return {false, "u at or below 1/(n-1)"};
  }
  if (u >= hi) return {false, "u at or above 1 - 2i/(n-1), the cohomological boundary"};
  return {true, ""};
}

double descend_map(int m, double u) {
  if (m < 3) throw ChainBottom("descend_map: need m >= 3");
  return ((m - 1) * u - 1.0) / (m - 2);
}

DescentStep descend(const DescentStep& step) {
  if (step.tempered) throw ChainBottom("descend: already tempered");
  const int m2 = step.m - 1;
  if (m2 < 2) throw ChainBottom("descend: rank bottom");
  DescentStep next;
  next.m = m2;
  next.i = step.i;
  next.u = descend_map(step.m, step.u);
  if (step.i > m2 / 2) throw ChainBottom("descend: degree exceeds [m/2] after the step");
  if (step.i == m2 / 2) {
    next.tempered = true;
    next.status = StepStatus::kTempered;
    return next;
  }
  const double lo = 1.0 / (m2 - 1);
  const double hi = 1.0 - 2.0 * step.i / (m2 - 1);
  next.status = (next.u > lo && next.u < hi) ? StepStatus::kValid : StepStatus::kWindowExit;
  return next;
}

std::vector<DescentStep> chain(int n, int i, double u) {
  std::vector<DescentStep> steps;
  DescentStep cur;
  cur.m = n;
  cur.i = i;
  cur.u = u;
  if (i > n / 2) {
    cur.status = StepStatus::kDegreeBottom;
  } else if (i == n / 2) {
    cur.tempered = true;
    cur.status = StepStatus::kTempered;
  } else if (!(u > 0.0 && u < 1.0 - 2.0 * i / (n - 1))) {
    cur.status = StepStatus::kWindowExit;
  }
  steps.push_back(cur);
  while (steps.back().status == StepStatus::kValid && steps.back().m >= 3)
    steps.push_back(descend(steps.back()));
  return steps;
}

double cohomological_limit(int n, int i) {
  if (i < 0 || i > n / 2 - 1) throw DegreeOutOfRange("cohomological_limit: i above [n/2]-1");
  return 1.0 - 2.0 * i / (n - 1);
}

}  // namespace csembed::params
