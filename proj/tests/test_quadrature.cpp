#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csembed/quadrature.hpp"
#include "csembed/suites.hpp"

using namespace csembed;
using namespace csembed::quadrature;
using schwartz::SchwartzFn;

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;

// Int_{R^d} e^{-a|x|^2} |x|^{-alpha} dx = area(S^{d-1}) a^{(alpha-d)/2} Gamma((d-alpha)/2) / 2
double gaussian_weighted_closed(int d, double a, double alpha) {
  return sphere_area(d) * std::pow(a, 0.5 * (alpha - d)) *
         0.5 * std::exp(std::lgamma(0.5 * (d - alpha)));
}
}  // namespace

TEST_CASE("rule sanity: masses and low moments") {
  const auto& gl = gauss_legendre(16);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t k = 0; k < gl.x.size(); ++k) {
    sum += gl.w[k];
    sum2 += gl.w[k] * gl.x[k] * gl.x[k];
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sum2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  const auto& lag = gauss_laguerre(24, 0.5);
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t k = 0; k < lag.x.size(); ++k) {
    m0 += lag.w[k];
    m1 += lag.w[k] * lag.x[k];
  }
  CHECK(m0 == doctest::Approx(std::exp(std::lgamma(1.5))).epsilon(1e-12));
  CHECK(m1 == doctest::Approx(std::exp(std::lgamma(2.5))).epsilon(1e-12));

  const auto& herm = gauss_hermite(20);
  double h0 = 0.0;
  for (std::size_t k = 0; k < herm.x.size(); ++k) h0 += herm.w[k];
  CHECK(h0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));

  const auto& jac = gauss_jacobi(18, 0.5, 0.5);
  double j0 = 0.0;
  for (std::size_t k = 0; k < jac.x.size(); ++k) j0 += jac.w[k];
  CHECK(j0 == doctest::Approx(0.5 * kPi).epsilon(1e-12));  // Int (1-x^2)^{1/2}
}

TEST_CASE("sphere schemes integrate constants and quadratics") {
  for (int d = 1; d <= 5; ++d) {
    const auto& s = sphere_scheme(d, 12);
    double mass = 0.0;
    Vec second = Vec::Zero(d);
    for (std::size_t j = 0; j < s.nodes.size(); ++j) {
      mass += s.weights[j];
      second += s.weights[j] * s.nodes[j].cwiseProduct(s.nodes[j]);
    }
    CHECK(mass == doctest::Approx(sphere_area(d)).epsilon(1e-12));
    for (int c = 0; c < d; ++c)
      CHECK(second(c) == doctest::Approx(sphere_area(d) / d).epsilon(1e-11));
  }
}

TEST_CASE("weighted integral of gaussians against the gamma closed form") {
  QuadratureSpec spec;
  for (int d = 1; d <= 4; ++d) {
    spec = suites::default_spec(d);
    for (double a : {0.7, 1.0, 1.9})
      for (double alpha : {0.0, 0.6, 1.2}) {
        if (alpha >= d) continue;
        const Complex got = integrate_weighted(SchwartzFn::gaussian(d, a), alpha, spec);
        const double expect = gaussian_weighted_closed(d, a, alpha);
        CHECK(std::abs(got - expect) / expect < 1e-9);
      }
  }
  // d = 2, alpha = 2s: 2 pi Gamma(1-s)/2 at s = 1/2
  spec = suites::default_spec(2);
  const Complex v = integrate_weighted(SchwartzFn::gaussian(2, 1.0), 1.0, spec);
  CHECK(std::abs(v - kPi * std::exp(std::lgamma(0.5))) < 1e-9 * std::abs(v));
  // alpha = 0 is the plain gaussian integral
  const Complex g0 = integrate_weighted(SchwartzFn::gaussian(2, 1.0), 0.0, spec);
  CHECK(std::abs(g0 - kPi) < 1e-10 * kPi);
}

TEST_CASE("weighted integral of shifted and modulated atoms: cross-checked refinement") {
  Rng rng(29);
  for (int d = 1; d <= 3; ++d) {
    QuadratureSpec spec = suites::default_spec(d);
    QuadratureSpec fine = spec;
    fine.radial_nodes += 16;
    fine.angular_order += 8;
    for (int k = 0; k < 6; ++k) {
      SchwartzFn f = suites::random_atom(rng, d);
      const double alpha = rng.uniform(0.0, d - 0.4);
      const Complex a = integrate_weighted(f, alpha, spec);
      const Complex b = integrate_weighted(f, alpha, fine);
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("weighted norm: closed form, limits, scaling") {
  QuadratureSpec spec = suites::default_spec(2);
  // n = 3 (d = 2), phi = e^{-|x|^2}: pi 2^{u-1} Gamma(1-u)
  for (double u : {0.3, 0.5, 0.7}) {
    const double got = weighted_norm(SchwartzFn::gaussian(2, 1.0), u, 3, spec);
    const double expect = kPi * std::pow(2.0, u - 1.0) * std::exp(std::lgamma(1.0 - u));
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
  }
  // at u = 1/2 the value is pi Gamma(1/2)/sqrt(2)
  const double mid = weighted_norm(SchwartzFn::gaussian(2, 1.0), 0.5, 3, spec);
  CHECK(mid == doctest::Approx(kPi * std::sqrt(kPi) / std::sqrt(2.0)).epsilon(1e-10));

  // u -> 0 recovers the plain L2 norm
  const double tiny = weighted_norm(SchwartzFn::gaussian(2, 1.0), 1e-9, 3, spec);
  CHECK(tiny == doctest::Approx(0.5 * kPi).epsilon(1e-6));

  // scaling: phi(lambda x) multiplies the norm by lambda^{(n-1)u - (n-1)}
  Rng rng(31);
  SchwartzFn f = suites::random_atom(rng, 2);
  const double u = 0.6;
  const double base = weighted_norm(f, u, 3, spec);
  for (double lambda : {1.5, 2.0}) {
    const double scaled = weighted_norm(dilate(f, 1.0 / lambda), u, 3, spec);
    CHECK(scaled / base ==
          doctest::Approx(std::pow(lambda, 2.0 * u - 2.0)).epsilon(1e-8));
  }

  // positivity on the family
  for (int k = 0; k < 6; ++k)
    CHECK(weighted_norm(suites::standard_atom(2, k), 0.4, 3, spec) > 0.0);

  CHECK_THROWS_AS(weighted_norm(SchwartzFn::gaussian(2, 1.0), 1.2, 3, spec),
                  WeightNotIntegrable);
}

TEST_CASE("radial annulus integral matches the one-dimensional oracle") {
  auto bump = [](double r) {
    if (r <= 1.0 || r >= 2.0) return 0.0;
    return std::exp(-1.0 / ((r - 1.0) * (2.0 - r)));
  };
  for (int d = 2; d <= 3; ++d) {
    for (double alpha : {0.0, 1.3}) {
      QuadratureSpec spec = suites::default_spec(d);
      spec.radial_nodes = 48;
      auto h = [&](const Vec& x) -> Complex { return bump(x.norm()); };
      const Complex got = integrate_annulus_callable(h, d, alpha, 1.0, 2.0, spec);
      // 1D oracle
      const auto& gl = gauss_legendre(48);
      double oracle = 0.0;
      const int panels = 8;
      for (int p = 0; p < panels; ++p) {
        const double lo = 1.0 + p / double(panels);
        const double hi = 1.0 + (p + 1) / double(panels);
        for (std::size_t k = 0; k < gl.x.size(); ++k) {
          const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.x[k];
          oracle += 0.5 * (hi - lo) * gl.w[k] * bump(r) * std::pow(r, d - 1 - alpha);
        }
      }
      oracle *= sphere_area(d);
      CHECK(std::abs(got - oracle) / oracle < 1e-8);
    }
  }
}

TEST_CASE("refinement guard flags an impossible tolerance") {
  QuadratureSpec spec = suites::default_spec(2);
  spec.radial_nodes = 4;
  spec.angular_order = 3;
  spec.check_refinement = true;
  spec.target_rel_err = 1e-14;
  Rng rng(37);
  SchwartzFn f = suites::random_atom(rng, 2);
  SchwartzFn shifted = translate(f, (Vec(2) << 1.4, -0.9).finished());
  CHECK_THROWS_AS(integrate_weighted(shifted, 0.9, spec), QuadratureBudgetExceeded);
}

TEST_CASE("evaluation budget") {
  set_eval_budget(100);
  reset_eval_count();
  QuadratureSpec spec = suites::default_spec(2);
  CHECK_THROWS_AS(integrate_weighted(SchwartzFn::gaussian(2, 1.0), 0.5, spec),
                  QuadratureBudgetExceeded);
  set_eval_budget(0);
  reset_eval_count();
  CHECK_NOTHROW(integrate_weighted(SchwartzFn::gaussian(2, 1.0), 0.5, spec));
}

TEST_CASE("complex gamma") {
  CHECK(std::abs(cgamma(Complex(0.5, 0.0)) - std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(cgamma(Complex(4.0, 0.0)) - 6.0) < 1e-11);
  // recurrence Gamma(z+1) = z Gamma(z) off the real axis
  const Complex z(0.7, 0.4);
  CHECK(std::abs(cgamma(z + Complex(1.0, 0.0)) - z * cgamma(z)) < 1e-12);
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  const Complex w(0.3, -0.2);
  const Complex lhs = cgamma(w) * cgamma(Complex(1.0, 0.0) - w);
  const Complex rhs = kPi / std::sin(kPi * w);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}
