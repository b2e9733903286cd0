#pragma once

#include <utility>

#include "csembed/quadrature.hpp"

// The kernel operator
//     (I f)(y) = Int |x|^{-(n-1)(1-u)} m_i(x) f(y+x) dx,
// the invariant pairings built from it, the Gamma functional equation,
// the sesquilinear form on the Fourier-side model, and the map A_G.

namespace csembed::intertwine {

using csembed::CMat;
using csembed::Complex;
using csembed::CVec;
using csembed::Vec;
using quadrature::QuadratureSpec;
using schwartz::SchwartzFn;
using schwartz::SchwartzVec;

enum class Window {
  kEmbedding,      // 1/(n-1) < u < 1 - 2i/(n-1)
  kFormPositivity  // 0 < u < 1 - 2i/(n-1)
};

struct CSParams {
  int n = 3;
  int i = 0;
  double u = 0.5;

  CSParams(int n_, int i_, double u_, Window window = Window::kFormPositivity);

  int dim() const { return n - 1; }                   // dimension of the cell
  double lambda() const { return (n - 1) * (1 - u); }  // kernel exponent
};

bool in_window(int n, int i, double u, Window window);

// Direction weight omega -> m_i(omega) on the subset basis of Lambda^i(R^d).
quadrature::DirectionWeight reflection_weight(int d, int i);

// (I f)(y) by singular-weight polar quadrature.
CVec intertwine_apply(const SchwartzVec& f, const CSParams& p, const Vec& y,
                      const QuadratureSpec& spec);

// Int dy < f(y), (I g)(y) >.  The default path integrates the correlation
// atoms against the kernel; the nested path keeps the double quadrature and
// exists to cross-check the collapsed one.
enum class PairingRoute { kCollapsed, kNested };
Complex pairing_bruhat(const SchwartzVec& f, const SchwartzVec& g, const CSParams& p,
                       const QuadratureSpec& spec,
                       PairingRoute route = PairingRoute::kCollapsed);

// <phi, psi> = Int dx |x|^{-(n-1)(1-u)} Int dy <phi(y), m_i(x) psi(y)> e^{-2i y.x},
// inner integral in closed form on atoms.  Inputs live on the Fourier side.
Complex form_Wu(const SchwartzVec& phi, const SchwartzVec& psi, const CSParams& p,
                const QuadratureSpec& spec);

// lhs = Gamma(s) Int |x|^{-2s} fhat,  rhs = Gamma((n-1)/2 - s) Int |x|^{2s-(n-1)} f.
std::pair<Complex, Complex> functional_equation(const SchwartzFn& f, Complex s, int n,
                                                const QuadratureSpec& spec);

// c(u) with form_Wu(phi,phi) = c(u) * weighted_norm(phi) in the unramified
// case; derived numerically through the functional equation (never copied
// from a closed form), plus the Gamma-ratio reference for cross-checks.
double derive_c_numeric(double u, int n, const QuadratureSpec& spec);
double c_gamma_reference(double u, int n);

// phi(y) = Int dx |x|^{-(n-1)u} phihat(x) e^{-2i x.y}; scalar kernel (i = 0).
Complex a_g_map_kernel(const SchwartzFn& phi_hat, const CSParams& p, const Vec& y,
                       const QuadratureSpec& spec);

// Composite route valid for every i: intertwine_apply o fourier.  Satisfies
// <phi, psi>_{W_u(i)} = <phihat, A_G psi>_{L2} exactly in this normalization;
// the scalar kernel route differs from it by the ratio
// Gamma((n-1)u/2) / Gamma((n-1)(1-u)/2).
CVec a_g_map_composite(const SchwartzVec& phi, const CSParams& p, const Vec& y,
                       const QuadratureSpec& spec);

// Gram matrix of form_Wu on a family of test functions.
CMat form_gram(const std::vector<SchwartzVec>& family, const CSParams& p,
               const QuadratureSpec& spec);

}  // namespace csembed::intertwine
