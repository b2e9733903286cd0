#pragma once

#include <functional>

#include "csembed/atom.hpp"

// Quadrature for the weighted integrals Int f(x) |x|^{-alpha} dx.
//
// The singular weight is absorbed analytically: in polar coordinates the
// radial integral becomes (1/2) Int t^{(d-alpha)/2 - 1} e^{-t} h(t) dt after
// t = a r^2, which a generalized Gauss-Laguerre rule handles with spectral
// accuracy.  The origin is never sampled.  Angular integration uses a
// recursive product scheme: Gauss-Jacobi in the polar cosine, equal-angle
// nodes on the base circle.

namespace csembed::quadrature {

using csembed::CMat;
using csembed::Complex;
using csembed::CVec;
using csembed::Vec;

struct QuadratureSpec {
  int radial_nodes = 32;
  int angular_order = 14;       // polar nodes per recursion level; azimuth uses 2x
  double target_rel_err = 1e-7;
  bool check_refinement = false;
};

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// weight 1 on [-1, 1]
const Rule1D& gauss_legendre(int n);
// weight (1-x)^a (1+x)^b on [-1, 1]; a, b > -1
const Rule1D& gauss_jacobi(int n, double a, double b);
// weight x^alpha e^{-x} on (0, inf); alpha > -1
const Rule1D& gauss_laguerre(int n, double alpha);
// weight e^{-x^2} on R
const Rule1D& gauss_hermite(int n);

struct AngularScheme {
  std::vector<Vec> nodes;       // unit vectors in R^d
  std::vector<double> weights;  // sum to the surface area of S^{d-1}
};

const AngularScheme& sphere_scheme(int d, int order);

double sphere_area(int d);  // surface area of S^{d-1}

// Global integrand-evaluation budget (CS_EMBED_QUAD_BUDGET).
void set_eval_budget(long long cap);  // <= 0 disables the cap
void reset_eval_count();
long long eval_count();
void charge_evals(long long k);  // throws QuadratureBudgetExceeded past the cap

// ---- atom-family integrals ----

Complex integrate_weighted(const schwartz::SchwartzFn& f, double alpha,
                           const QuadratureSpec& spec);
Complex integrate_weighted_c(const schwartz::SchwartzFn& f, Complex alpha,
                             const QuadratureSpec& spec);

// |phi|_u^2 = Int |phi(x)|^2 |x|^{-(n-1)u} dx for a Fourier-side phi.
double weighted_norm(const schwartz::SchwartzFn& phi_hat, double u, int n,
                     const QuadratureSpec& spec);

// Direction-dependent matrix weight, evaluated once per angular node.
using DirectionWeight = std::function<CMat(const Vec& omega)>;

// sum_{T,S} Int |x|^{-alpha} W(omega)_{TS} G[T][S](x) dx
Complex weighted_contraction(const std::vector<std::vector<schwartz::SchwartzFn>>& g,
                             const DirectionWeight& w, double alpha,
                             const QuadratureSpec& spec);

// out_T = sum_S Int |x|^{-alpha} W(omega)_{TS} f_S(x) dx
CVec weighted_apply(const std::vector<schwartz::SchwartzFn>& f, const DirectionWeight& w,
                    int out_dim, double alpha, const QuadratureSpec& spec);

// ---- generic callables ----

// h decays at least like exp(-decay_scale |x|^2).
Complex integrate_weighted_callable(const std::function<Complex(const Vec&)>& h, int d,
                                    double alpha, double decay_scale,
                                    const QuadratureSpec& spec);

// h supported on r0 <= |x| <= r1.
Complex integrate_annulus_callable(const std::function<Complex(const Vec&)>& h, int d,
                                   double alpha, double r0, double r1,
                                   const QuadratureSpec& spec);

// ---- special functions ----

Complex cgamma(Complex z);     // Lanczos
double gamma_ratio(double a, double b);  // Gamma(a)/Gamma(b) for a, b > 0

}  // namespace csembed::quadrature
