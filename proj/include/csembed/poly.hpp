#pragma once

#include <map>
#include <vector>

#include "csembed/errors.hpp"
#include "csembed/linalg.hpp"

namespace csembed {

// Sparse multivariate polynomial with complex coefficients, exponent
// vectors keyed lexicographically.  Sizes stay tiny (degree <= 8, d <= 5).
struct MultiPoly {
  int d = 0;
  std::map<std::vector<int>, Complex> terms;

  static MultiPoly zero(int d);
  static MultiPoly constant(int d, Complex c);
  static MultiPoly axis(int d, int j);  // the coordinate x_j, 0-based

  bool is_zero() const { return terms.empty(); }
  int total_degree() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(Complex c) const;
  MultiPoly conjugated() const;

  // p(x + s)
  MultiPoly shifted(const Vec& s) const;
  // p(B x)
  MultiPoly linear_composed(const Mat& b) const;

  Complex eval(const Vec& x) const;

  void add_term(const std::vector<int>& e, Complex c);
  void prune(double eps = 0.0);
};

}  // namespace csembed
