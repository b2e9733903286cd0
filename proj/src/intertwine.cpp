#include "csembed/intertwine.hpp"

#include <cmath>

namespace csembed::intertwine {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double min_width(const SchwartzVec& f) {
  double w = 1e300;
  for (const auto& comp : f.comps)
    for (const auto& atom : comp.atoms) w = std::min(w, atom.width);
  return w == 1e300 ? 1.0 : w;
}

}  // namespace

bool in_window(int n, int i, double u, Window window) {
  // n = 2 appears as the small side of an n = 3 embedding
  if (n < 2 || i < 0) return false;
  if (i > n / 2 - 1) return false;
  const double hi = 1.0 - 2.0 * i / (n - 1);
  const double lo = (window == Window::kEmbedding) ? 1.0 / (n - 1) : 0.0;
  return u > lo && u < hi;
}

CSParams::CSParams(int n_, int i_, double u_, Window window) : n(n_), i(i_), u(u_) {
  if (!in_window(n, i, u, window))
    throw std::invalid_argument("CSParams: (n,i,u) outside the parameter window");
}

quadrature::DirectionWeight reflection_weight(int d, int i) {
  return [d, i](const Vec& omega) -> CMat {
    return exterior::wedge_matrix(exterior::reflection(omega), i).entries.cast<Complex>();
  };
}

CVec intertwine_apply(const SchwartzVec& f, const CSParams& p, const Vec& y,
                      const QuadratureSpec& spec) {
  if (f.basis.d != p.dim() || f.basis.i != p.i)
    throw std::invalid_argument("intertwine_apply: basis does not match parameters");
  if (y.norm() > 1e3)
    throw std::invalid_argument("intertwine_apply: sample point outside quadrature range");
  // f(y + x) as atoms in x
  std::vector<SchwartzFn> shifted;
  shifted.reserve(f.comps.size());
  for (const auto& comp : f.comps) shifted.push_back(translate(comp, -y));
  return quadrature::weighted_apply(shifted, reflection_weight(p.dim(), p.i), f.basis.size(),
                                    p.lambda(), spec);
}

Complex pairing_bruhat(const SchwartzVec& f, const SchwartzVec& g, const CSParams& p,
                       const QuadratureSpec& spec, PairingRoute route) {
  if (!(f.basis == g.basis)) throw std::invalid_argument("pairing_bruhat: basis mismatch");
  const int c = f.basis.size();
  const int d = p.dim();
  if (route == PairingRoute::kCollapsed) {
    // K_{TS}(x) = Int conj(f_T(y)) g_S(y+x) dy, a closed-form atom in x:
    // K = pi^{d/2} flip(F[ conj(F f_T) . (F g_S) ])
    std::vector<std::vector<SchwartzFn>> corr(c, std::vector<SchwartzFn>(c));
    const double pref = std::pow(kPi, 0.5 * d);
    for (int t = 0; t < c; ++t) {
      SchwartzFn ft_hat = fourier(f.comps[t]);
      for (int s = 0; s < c; ++s) {
        SchwartzFn prod = multiply(conjugate(ft_hat), fourier(g.comps[s]));
        corr[t][s] = scale(flip(fourier(prod)), Complex(pref, 0.0));
      }
    }
    return quadrature::weighted_contraction(corr, reflection_weight(d, p.i), p.lambda(), spec);
  }
  // Nested route: outer quadrature in y of <f(y), (I g)(y)>; kept for
  // cross-checking the collapsed evaluation at low dimension.
  const double beta = 0.8 * std::min(min_width(f), 1.0);
  QuadratureSpec inner = spec;
  auto h = [&](const Vec& y) -> Complex {
    CVec iv = intertwine_apply(g, p, y, inner);
    CVec fv = f.eval(y);
    return fv.dot(iv);  // Eigen dot conjugates the left argument
  };
  return quadrature::integrate_weighted_callable(h, d, 0.0, beta, spec);
}

Complex form_Wu(const SchwartzVec& phi, const SchwartzVec& psi, const CSParams& p,
                const QuadratureSpec& spec) {
  if (!(phi.basis == psi.basis)) throw std::invalid_argument("form_Wu: basis mismatch");
  if (phi.basis.d != p.dim() || phi.basis.i != p.i)
    throw std::invalid_argument("form_Wu: basis does not match parameters");
  const int c = phi.basis.size();
  const int d = p.dim();
  const double pref = std::pow(kPi, 0.5 * d);
  std::vector<std::vector<SchwartzFn>> g(c, std::vector<SchwartzFn>(c));
  for (int t = 0; t < c; ++t)
    for (int s = 0; s < c; ++s) {
      // Int dy conj(phi_T) psi_S e^{-2iy.x} = pi^{d/2} F[conj(phi_T) psi_S](x)
      SchwartzFn prod = multiply(conjugate(phi.comps[t]), psi.comps[s]);
      g[t][s] = scale(fourier(prod), Complex(pref, 0.0));
    }
  return quadrature::weighted_contraction(g, reflection_weight(d, p.i), p.lambda(), spec);
}

std::pair<Complex, Complex> functional_equation(const SchwartzFn& f, Complex s, int n,
                                                const QuadratureSpec& spec) {
  const int d = n - 1;
  if (!(s.real() > 0.0) || !(s.real() < 0.5 * d))
    throw std::invalid_argument("functional_equation: s outside the strip");
  SchwartzFn fhat = fourier(f);
  const Complex lhs =
      quadrature::cgamma(s) * quadrature::integrate_weighted_c(fhat, 2.0 * s, spec);
  const Complex rhs = quadrature::cgamma(Complex(0.5 * d, 0.0) - s) *
                      quadrature::integrate_weighted_c(f, Complex(d, 0.0) - 2.0 * s, spec);
  return {lhs, rhs};
}

double derive_c_numeric(double u, int n, const QuadratureSpec& spec) {
  const int d = n - 1;
  // Apply the functional-equation route to g = |phihat|^2 with a reference
  // Gaussian: c(u) = pi^{d/2} * [Int |x|^{-2s} ghat] / [Int |x|^{2s-d} g]
  // at s = (n-1)(1-u)/2.
  SchwartzFn phi_hat = SchwartzFn::gaussian(d, 1.0);
  SchwartzFn g = multiply(phi_hat, conjugate(phi_hat));
  SchwartzFn ghat = fourier(g);
  const double s = 0.5 * d * (1.0 - u);
  const Complex num = quadrature::integrate_weighted(ghat, 2.0 * s, spec);
  const Complex den = quadrature::integrate_weighted(g, d - 2.0 * s, spec);
  return std::pow(kPi, 0.5 * d) * (num / den).real();
}

double c_gamma_reference(double u, int n) {
  const int d = n - 1;
  return std::pow(kPi, 0.5 * d) *
         quadrature::gamma_ratio(0.5 * d * u, 0.5 * d * (1.0 - u));
}

Complex a_g_map_kernel(const SchwartzFn& phi_hat, const CSParams& p, const Vec& y,
                       const QuadratureSpec& spec) {
  if (p.i != 0) throw std::invalid_argument("a_g_map_kernel: scalar route needs i = 0");
  return quadrature::integrate_weighted(modulate(phi_hat, -y), (p.n - 1) * p.u, spec);
}

CVec a_g_map_composite(const SchwartzVec& phi, const CSParams& p, const Vec& y,
                       const QuadratureSpec& spec) {
  return intertwine_apply(fourier(phi), p, y, spec);
}

CMat form_gram(const std::vector<SchwartzVec>& family, const CSParams& p,
               const QuadratureSpec& spec) {
  const int m = static_cast<int>(family.size());
  CMat gram(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      gram(a, b) = form_Wu(family[a], family[b], p, spec);
      if (b != a) gram(b, a) = std::conj(gram(a, b));
    }
  return gram;
}

}  // namespace csembed::intertwine
