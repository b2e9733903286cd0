#pragma once

#include <vector>

#include "csembed/errors.hpp"
#include "csembed/linalg.hpp"

// Exterior powers of matrices on the lexicographic subset basis of
// Lambda^i(R^d), reflection operators and their wedge powers, the
// homogeneous matrix polynomial Phi_i, and the coefficient maps between
// Lambda^i(R^{d-1}) and Lambda^i(R^d).

namespace csembed::exterior {

using csembed::Mat;
using csembed::Vec;

struct SubsetBasis {
  int d = 0;  // ambient dimension
  int i = 0;  // degree
  std::vector<std::vector<int>> sets;  // strictly increasing i-subsets of {1..d}, lex order

  static SubsetBasis make(int d, int i);  // throws DegreeOutOfRange
  int size() const { return static_cast<int>(sets.size()); }
  int index_of(const std::vector<int>& s) const;  // -1 if absent

  bool operator==(const SubsetBasis& o) const { return d == o.d && i == o.i; }
};

struct WedgeOperator {
  SubsetBasis basis;
  Mat entries;  // C(d,i) x C(d,i)
};

// I - 2 x x^T / |x|^2; symmetric, involutive, det = -1.
Mat reflection(const Vec& x);

// Entry (T,S) = det A[T,S].  Functorial: wedge(AB) = wedge(A) wedge(B).
WedgeOperator wedge_matrix(const Mat& a, int i);

// wedge_matrix(reflection(x), i)
WedgeOperator m_i(const Vec& x, int i);

// (|x|^2 + t^2)^i m_i((x,t)); every entry is a polynomial in (x,t),
// homogeneous of degree 2i.  Computed as the wedge of
// (|x|^2+t^2) I - 2 (x,t)(x,t)^T.
WedgeOperator phi_poly(const Vec& x, double t, int i);

// 0/1 matrix of shape C(d,i) x C(d-1,i) sending the subset basis of
// {1..d-1} to the same subsets inside {1..d}.
Mat include_matrix(int d, int i);

CVec include_wedge(const CVec& v, int d_small, int i);
CVec restrict_wedge(const CVec& v, int d_big, int i);

}  // namespace csembed::exterior
