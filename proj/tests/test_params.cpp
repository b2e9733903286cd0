#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csembed/linalg.hpp"
#include "csembed/params.hpp"

using namespace csembed;
namespace pr = csembed::params;

TEST_CASE("window validation") {
  CHECK(pr::validate(5, 1, 0.4).ok);         // window (0.25, 0.5)
  CHECK_FALSE(pr::validate(5, 1, 0.5).ok);   // cohomological boundary
  CHECK_FALSE(pr::validate(5, 1, 0.25).ok);  // lower endpoint excluded
  CHECK_FALSE(pr::validate(4, 2, 0.3).ok);   // degree above [n/2]-1
  CHECK_FALSE(pr::validate(2, 0, 0.5).ok);
  CHECK(pr::validate(3, 0, 0.75).ok);
  CHECK_FALSE(pr::validate(6, 2, 0.19).ok);  // empty window for (6,2)
}

TEST_CASE("descent map and single steps") {
  CHECK(pr::descend_map(4, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  pr::DescentStep s;
  s.m = 4;
  s.i = 0;
  s.u = 0.5;
  auto next = pr::descend(s);
  CHECK(next.m == 3);
  CHECK(next.u == doctest::Approx(0.25));
  CHECK_FALSE(next.tempered);

  // boundary compatibility, exact
  for (int m = 4; m <= 9; ++m)
    for (int i = 0; i <= m / 2 - 1; ++i) {
      const double ustar = 1.0 - 2.0 * i / (m - 1.0);
      CHECK(std::abs(pr::descend_map(m, ustar) - (1.0 - 2.0 * i / (m - 2.0))) < 1e-14);
    }

  // fixed relation (m-1)(1-u) = (m-2)(1-u')
  Rng rng(41);
  for (int k = 0; k < 300; ++k) {
    const int m = 4 + (k % 5);
    const double u = rng.uniform(0.01, 0.99);
    const double up = pr::descend_map(m, u);
    CHECK(std::abs((m - 1) * (1.0 - u) - (m - 2) * (1.0 - up)) < 1e-14);
    CHECK(up < u);  // monotone for u < 1
  }

  pr::DescentStep tempered;
  tempered.m = 5;
  tempered.i = 2;
  tempered.u = 0.1;
  tempered.tempered = true;
  CHECK_THROWS_AS(pr::descend(tempered), ChainBottom);
}

TEST_CASE("chains terminate at the tempered degree") {
  // (6, 2, just below 0.2): one step down, tempered at m = 5 where i = [m/2]
  auto steps = pr::chain(6, 2, 0.19);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].m == 6);
  CHECK(steps[1].m == 5);
  CHECK(steps[1].tempered);
  CHECK(steps[1].status == pr::StepStatus::kTempered);

  // (4, 1): tempered immediately after one step
  auto s41 = pr::chain(4, 1, 0.2);
  REQUIRE(s41.size() == 2);
  CHECK(s41[1].m == 3);
  CHECK(s41[1].tempered);

  // i = 0 chains never turn tempered; they stop at the window guard
  auto s0 = pr::chain(6, 0, 0.9);
  for (const auto& st : s0) CHECK_FALSE(st.tempered);
  CHECK(s0.back().status != pr::StepStatus::kValid);

  // every intermediate step revalidates
  for (std::size_t k = 0; k + 1 < s0.size(); ++k)
    if (s0[k].status == pr::StepStatus::kValid && s0[k].m >= 4 && k > 0)
      CHECK(pr::validate(s0[k].m, s0[k].i, s0[k].u).ok);
}

TEST_CASE("two descent steps match the double application") {
  // u'' from two single steps equals the composite map
  const double u = 0.8;
  const int n = 6;
  const double u1 = pr::descend_map(n, u);
  const double u2 = pr::descend_map(n - 1, u1);
  pr::DescentStep s;
  s.m = n;
  s.i = 0;
  s.u = u;
  auto a = pr::descend(s);
  auto b = pr::descend(a);
  CHECK(b.u == doctest::Approx(u2).epsilon(1e-15));
  CHECK(b.m == n - 2);
}

TEST_CASE("cohomological limits") {
  CHECK(pr::cohomological_limit(5, 1) == doctest::Approx(0.5));
  CHECK(pr::cohomological_limit(7, 0) == doctest::Approx(1.0));
  for (int i = 1; i <= 3; ++i) {
    const int n = 2 * i + 2;
    CHECK(pr::cohomological_limit(n, i) ==
          doctest::Approx(1.0 - 2.0 * i / (2.0 * i + 1.0)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(pr::cohomological_limit(4, 2), DegreeOutOfRange);

  // limits decrease toward zero along the chain bookkeeping
  const int i = 2;
  double prev = 1.0;
  for (int m = 9; m >= 2 * i + 2; --m) {
    const double lim = pr::cohomological_limit(m, i);
    CHECK(lim < prev);
    prev = lim;
  }
}
