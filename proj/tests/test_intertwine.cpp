#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "csembed/intertwine.hpp"
#include "csembed/embedding.hpp"
#include "csembed/suites.hpp"

using namespace csembed;
using namespace csembed::intertwine;
using schwartz::SchwartzFn;
using schwartz::SchwartzVec;

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
}

TEST_CASE("parameter windows") {
  CHECK(in_window(5, 1, 0.4, Window::kEmbedding));
  CHECK_FALSE(in_window(5, 1, 0.2, Window::kEmbedding));
  CHECK(in_window(5, 1, 0.2, Window::kFormPositivity));
  CHECK_FALSE(in_window(5, 1, 0.5, Window::kFormPositivity));
  CHECK_FALSE(in_window(4, 1, 0.3, Window::kEmbedding));  // empty window
  CHECK(in_window(2, 0, 0.5, Window::kFormPositivity));
  CHECK_THROWS_AS(CSParams(5, 2, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(CSParams(3, 0, 0.4, Window::kEmbedding), std::invalid_argument);
}

TEST_CASE("kernel operator at the origin reduces to the weighted integral") {
  // radial gaussian, i = 0, y = 0: the gamma closed form is the oracle
  for (int n : {3, 4}) {
    const int d = n - 1;
    for (double u : {0.4, 0.7}) {
      CSParams p(n, 0, u);
      auto spec = suites::default_spec(d);
      SchwartzVec f = suites::as_vector(SchwartzFn::gaussian(d, 1.0));
      CVec got = intertwine_apply(f, p, Vec::Zero(d), spec);
      const double alpha = p.lambda();
      const double expect = quadrature::sphere_area(d) * 0.5 *
                            std::exp(std::lgamma(0.5 * (d - alpha)));
      CHECK(std::abs(got(0) - expect) < 1e-8 * expect);
    }
  }
}

TEST_CASE("kernel operator is linear") {
  CSParams p(3, 0, 0.6);
  auto spec = suites::default_spec(2);
  Rng rng(43);
  SchwartzVec f = suites::as_vector(suites::random_atom(rng, 2));
  SchwartzVec g = suites::as_vector(suites::random_atom(rng, 2));
  SchwartzVec sum = f + g;
  for (int k = 0; k < 5; ++k) {
    Vec y = rng.uniform_vec(2, -1.0, 1.0);
    CVec a = intertwine_apply(f, p, y, spec);
    CVec b = intertwine_apply(g, p, y, spec);
    CVec c = intertwine_apply(sum, p, y, spec);
    CHECK((c - a - b).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, c.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("pairing: zero, hermitian symmetry, nested cross-check") {
  CSParams p(3, 0, 0.5);
  auto spec = suites::default_spec(2);
  SchwartzVec zero = SchwartzVec::zero(2, 0, 2);
  SchwartzVec f = suites::as_vector(suites::standard_atom(2, 2));
  CHECK(std::abs(pairing_bruhat(zero, f, p, spec)) == 0.0);

  Rng rng(47);
  for (int k = 0; k < 4; ++k) {
    SchwartzVec a = suites::as_vector(suites::random_atom(rng, 2));
    SchwartzVec b = suites::as_vector(suites::random_atom(rng, 2));
    const Complex ab = pairing_bruhat(a, b, p, spec);
    const Complex ba = pairing_bruhat(b, a, p, spec);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-6 * std::max(1.0, std::abs(ab)));
  }

  // the collapsed correlation route agrees with the nested double quadrature
  SchwartzVec a = suites::as_vector(suites::standard_atom(2, 0));
  quadrature::QuadratureSpec outer = spec;
  outer.radial_nodes = 28;
  outer.angular_order = 16;
  const Complex collapsed = pairing_bruhat(a, a, p, spec);
  const Complex nested = pairing_bruhat(a, a, p, outer, PairingRoute::kNested);
  CHECK(std::abs(collapsed - nested) < 1e-4 * std::abs(collapsed));
}

TEST_CASE("unramified norm identity at one pinned point") {
  // n = 3, u = 1/2: c(u) = pi exactly under this normalization
  CSParams p(3, 0, 0.5);
  auto spec = suites::default_spec(2);
  const double c_num = derive_c_numeric(0.5, 3, spec);
  CHECK(c_num == doctest::Approx(kPi).epsilon(1e-8));
  CHECK(c_gamma_reference(0.5, 3) == doctest::Approx(kPi).epsilon(1e-14));

  SchwartzFn phi = suites::standard_atom(2, 1);
  SchwartzVec pv = suites::as_vector(phi);
  const double pairing = pairing_bruhat(pv, pv, p, spec).real();
  const double norm = quadrature::weighted_norm(fourier(phi), 0.5, 3, spec);
  CHECK(pairing / norm == doctest::Approx(kPi).epsilon(1e-4));
}

TEST_CASE("fourier-side form matches the pairing route") {
  CSParams p(3, 0, 0.5);
  auto spec = suites::default_spec(2);
  SchwartzFn phi = suites::standard_atom(2, 3);
  SchwartzVec pv = suites::as_vector(phi);
  const Complex direct = pairing_bruhat(pv, pv, p, spec);
  SchwartzVec ph = fourier(pv);
  const Complex through_form = form_Wu(ph, ph, p, spec);
  CHECK(std::abs(direct - through_form) < 1e-4 * std::abs(direct));
}

TEST_CASE("form is sesquilinear and positive on the standard family") {
  CSParams p(4, 1, 0.2);
  auto spec = suites::default_spec(3);
  auto fam = suites::vector_family(3, 1, 3, 3);
  const Complex v01 = form_Wu(fam[0], fam[1], p, spec);
  const Complex v10 = form_Wu(fam[1], fam[0], p, spec);
  CHECK(std::abs(v01 - std::conj(v10)) < 1e-6 * std::max(1.0, std::abs(v01)));
  SchwartzVec scaled = scale(fam[1], Complex(0.0, 2.0));
  const Complex vs = form_Wu(fam[0], scaled, p, spec);
  CHECK(std::abs(vs - Complex(0.0, 2.0) * v01) < 1e-8 * std::max(1.0, std::abs(vs)));
  for (const auto& f : fam) {
    const Complex q = form_Wu(f, f, p, spec);
    CHECK(q.real() > 0.0);
    CHECK(std::abs(q.imag()) < 1e-8 * q.real());
  }
}

TEST_CASE("functional equation: pinned values and the symmetric point") {
  auto spec = suites::default_spec(2);
  // self-dual gaussian at n = 3: both sides pi Gamma(s) Gamma(1-s); pi^2 at s = 1/2
  auto [lhs, rhs] = functional_equation(SchwartzFn::gaussian(2, 1.0), Complex(0.5, 0.0), 3, spec);
  CHECK(std::abs(lhs - 9.869604401089358) < 1e-8 * 9.87);
  CHECK(std::abs(rhs - 9.869604401089358) < 1e-8 * 9.87);

  for (double s : {0.3, 0.8}) {
    auto [l2, r2] = functional_equation(SchwartzFn::gaussian(2, 1.0), Complex(s, 0.0), 3, spec);
    const double expect = kPi * std::exp(std::lgamma(s) + std::lgamma(1.0 - s));
    CHECK(std::abs(l2 - expect) < 1e-8 * expect);
    CHECK(std::abs(r2 - expect) < 1e-8 * expect);
  }

  // symmetric point s = (n-1)/4 with a self-dual radial function
  for (int n : {3, 5}) {
    auto specn = suites::default_spec(n - 1);
    auto [l, r] =
        functional_equation(SchwartzFn::gaussian(n - 1, 1.0), Complex(0.25 * (n - 1), 0.0), n,
                            specn);
    CHECK(std::abs(l - r) < 1e-9 * std::abs(r));
  }

  // complex s stays inside the verified strip
  auto [lc, rc] = functional_equation(SchwartzFn::gaussian(2, 1.3), Complex(0.6, 0.2), 3, spec);
  CHECK(std::abs(lc - rc) < 1e-6 * std::abs(rc));

  CHECK_THROWS_AS(functional_equation(SchwartzFn::gaussian(2, 1.0), Complex(1.2, 0.0), 3, spec),
                  std::invalid_argument);
}

TEST_CASE("a_g_map: rotation invariance and the alpha -> 0 limit") {
  auto spec = suites::default_spec(2);
  // radial input gives a radial output
  CSParams p(3, 0, 0.6);
  SchwartzFn phi_hat = SchwartzFn::gaussian(2, 1.2);
  Vec y1(2), y2(2);
  y1 << 0.9, 0.2;
  y2 << -0.2, std::sqrt(0.81 + 0.04 - 0.04);
  y2 *= y1.norm() / y2.norm();
  const Complex v1 = a_g_map_kernel(phi_hat, p, y1, spec);
  const Complex v2 = a_g_map_kernel(phi_hat, p, y2, spec);
  CHECK(std::abs(v1 - v2) < 1e-8 * std::abs(v1));

  // u -> 0 diagnostic: the kernel integral approaches pi^{d/2} F[phi_hat](y)
  CSParams tiny(3, 0, 1e-7);
  Vec y(2);
  y << 0.4, -0.3;
  const Complex got = a_g_map_kernel(phi_hat, tiny, y, spec);
  const Complex expect = std::pow(kPi, 1.0) * fourier(phi_hat).eval(y);
  CHECK(std::abs(got - expect) < 1e-4 * std::abs(expect));
}

TEST_CASE("kernel and composite realizations differ by the derived gamma ratio") {
  // both routes read the same model vector; they differ by the Gamma ratio
  CSParams p(3, 0, 0.6);
  auto spec = suites::default_spec(2);
  SchwartzFn phi = suites::standard_atom(2, 1);
  const double ratio = quadrature::gamma_ratio(0.5 * 2.0 * 0.6, 0.5 * 2.0 * 0.4);
  Rng rng(53);
  for (int k = 0; k < 4; ++k) {
    Vec y = rng.uniform_vec(2, -0.8, 0.8);
    const Complex kernel = a_g_map_kernel(phi, p, y, spec);
    const CVec comp = a_g_map_composite(suites::as_vector(phi), p, y, spec);
    CHECK(std::abs(comp(0) - ratio * kernel) < 1e-6 * std::max(1.0, std::abs(comp(0))));
  }
}

TEST_CASE("the form equals the L2 pairing against the composite map") {
  // <phi, psi>_{W_u} = Int conj(phihat) . (A_G psi) over the cell
  CSParams p(3, 0, 0.6);
  auto spec = suites::default_spec(2);
  SchwartzVec phi = suites::as_vector(suites::standard_atom(2, 0));
  SchwartzVec psi = suites::as_vector(suites::standard_atom(2, 1));
  const Complex lhs = form_Wu(phi, psi, p, spec);
  SchwartzVec phi_hat = fourier(phi);
  quadrature::QuadratureSpec inner = suites::default_spec(2);
  inner.radial_nodes = 32;
  inner.angular_order = 16;
  auto h = [&](const Vec& z) -> Complex {
    CVec a = phi_hat.eval(z);
    CVec b = a_g_map_composite(psi, p, z, inner);
    return a.dot(b);
  };
  const Complex rhs = quadrature::integrate_weighted_callable(h, 2, 0.0, 0.7, spec);
  CHECK(std::abs(lhs - rhs) < 1e-4 * std::abs(lhs));
}

TEST_CASE("rotation equivariance of the form") {
  // wedge-rotated arguments leave the form unchanged
  CSParams p(4, 1, 0.25);
  auto spec = suites::default_spec(3);
  auto fam = suites::vector_family(3, 1, 3, 2);
  Rng rng(59);
  Mat r = rng.orthogonal(3);
  embedding::RotationGen gen{r};
  SchwartzVec a_rot = embedding::parabolic_action(gen, fam[0], p, embedding::ModelSide::kFourierHat);
  SchwartzVec b_rot = embedding::parabolic_action(gen, fam[1], p, embedding::ModelSide::kFourierHat);
  const Complex before = form_Wu(fam[0], fam[1], p, spec);
  const Complex after = form_Wu(a_rot, b_rot, p, spec);
  CHECK(std::abs(before - after) < 1e-5 * std::max(1.0, std::abs(before)));
}
