#pragma once

#include <string>
#include <vector>

#include "csembed/errors.hpp"

// Parameter bookkeeping for the descent u -> ((m-1)u - 1)/(m-2), validity
// windows, and the cohomological / tempered endpoints.

namespace csembed::params {

struct Validity {
  bool ok = false;
  std::string reason;
};

// i <= [n/2] - 1 and 1/(n-1) < u < 1 - 2i/(n-1).
Validity validate(int n, int i, double u);

enum class StepStatus { kValid, kTempered, kDegreeBottom, kWindowExit };

struct DescentStep {
  int m = 0;
  int i = 0;
  double u = 0.0;
  bool tempered = false;  // i == [m/2]
  StepStatus status = StepStatus::kValid;
};

// The raw parameter map u' = ((m-1)u - 1)/(m-2); no validity checks.
double descend_map(int m, double u);

// One descent step m -> m-1.  Throws ChainBottom when the degree constraint
// fails strictly (i > [(m-1)/2]); the i == [(m-1)/2] case returns a step
// flagged tempered instead.
DescentStep descend(const DescentStep& step);

// Iterate descend from (n, i, u) until tempered, degree bottom, or the
// window no longer admits a further step.
std::vector<DescentStep> chain(int n, int i, double u);

// 1 - 2i/(n-1), the endpoint the complementary series degenerates to.
double cohomological_limit(int n, int i);

}  // namespace csembed::params
