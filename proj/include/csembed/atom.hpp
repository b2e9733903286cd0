#pragma once

#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "csembed/exterior.hpp"
#include "csembed/poly.hpp"

// Closed algebra of Gaussian test functions
//     p(x) exp(-a|x-b|^2) exp(2i c.x)
// on R^d, with exact Fourier transforms under the normalization
//     F[f](y) = pi^{-d/2} Int f(x) e^{-2i x.y} dx.
// This is the unique normalization for which F[e^{-t|x|^2}] =
// t^{-d/2} e^{-|y|^2/t} exactly and F(F(f))(x) = f(-x).

namespace csembed::schwartz {

using csembed::CVec;
using csembed::Complex;
using csembed::Mat;
using csembed::MultiPoly;
using csembed::Vec;

constexpr int kDegreeCap = 8;

struct GaussianAtom {
  int d = 0;
  double width = 1.0;  // a > 0
  Vec center;          // b
  Vec modulation;      // c
  MultiPoly poly;      // p, in absolute coordinates

  GaussianAtom() = default;
  GaussianAtom(int d_, double width_, Vec center_, Vec modulation_, MultiPoly poly_);

  Complex eval(const Vec& x) const;
};

// Finite sum of atoms; scalar-valued Schwartz-class test function.
struct SchwartzFn {
  int d = 0;
  std::vector<GaussianAtom> atoms;

  static SchwartzFn zero(int d);
  // exp(-a|x-b|^2) e^{2i c.x}
  static SchwartzFn gaussian(int d, double a, const Vec& b, const Vec& c);
  static SchwartzFn gaussian(int d, double a);

  Complex eval(const Vec& x) const;
  bool is_zero() const { return atoms.empty(); }
  void compress(double eps = 0.0);  // drop zero polynomials
};

SchwartzFn operator+(const SchwartzFn& f, const SchwartzFn& g);
SchwartzFn scale(const SchwartzFn& f, Complex c);
SchwartzFn multiply(const SchwartzFn& f, const SchwartzFn& g);
SchwartzFn conjugate(const SchwartzFn& f);
SchwartzFn fourier(const SchwartzFn& f);
// |fourier(f)|^2 as a SchwartzFn
SchwartzFn autocorrelation_transform(const SchwartzFn& f);

// f(x - s)
SchwartzFn translate(const SchwartzFn& f, const Vec& s);
// f(x) e^{2i m.x}
SchwartzFn modulate(const SchwartzFn& f, const Vec& m);
// f(x / t), t > 0
SchwartzFn dilate(const SchwartzFn& f, double t);
// f(R^{-1} x) for orthogonal R
SchwartzFn rotate(const SchwartzFn& f, const Mat& r);
// f(-x)
SchwartzFn flip(const SchwartzFn& f);

// Int f dx in closed form (pi^{d/2} fourier(f)(0)).
Complex integral_closed(const SchwartzFn& f);
// Int conj(f) g dx in closed form.
Complex l2_inner_closed(const SchwartzFn& f, const SchwartzFn& g);

// Lambda^i-valued test function: one scalar component per basis subset.
struct SchwartzVec {
  exterior::SubsetBasis basis;
  std::vector<SchwartzFn> comps;

  static SchwartzVec zero(int d_ambient, int degree, int var_dim);
  int var_dim() const { return comps.empty() ? 0 : comps.front().d; }
  CVec eval(const Vec& x) const;
};

SchwartzVec operator+(const SchwartzVec& f, const SchwartzVec& g);
SchwartzVec scale(const SchwartzVec& f, Complex c);
SchwartzVec fourier(const SchwartzVec& f);
SchwartzVec conjugate(const SchwartzVec& f);
SchwartzVec translate(const SchwartzVec& f, const Vec& s);
SchwartzVec modulate(const SchwartzVec& f, const Vec& m);
SchwartzVec flip(const SchwartzVec& f);

// Move Lambda^i(R^{d-1})-valued components into the Lambda^i(R^d) basis.
// The variable dimension is untouched.
SchwartzVec include_components(const SchwartzVec& f);
SchwartzVec restrict_components(const SchwartzVec& f);

// JSON serialization (CLI fixtures).
nlohmann::json to_json(const SchwartzFn& f);
SchwartzFn schwartz_from_json(const nlohmann::json& j);

}  // namespace csembed::schwartz
