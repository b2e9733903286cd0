#pragma once

#include "csembed/errors.hpp"
#include "csembed/linalg.hpp"

// Matrix realization of G = SO(n,1) inside SL_{n+1}(R), together with the
// unipotent / diagonal / compact generators and the Bruhat and Iwasawa
// factorizations of u(x)w-type elements.
//
// Membership is defined through the invariant bilinear form S with
// S[0][n] = S[n][0] = -1 and S[j][j] = 1 for 1 <= j <= n-1 (the quadratic
// form -2 v_0 v_n + |v|^2, signature (n,1)).  This is the unique symmetric
// form, up to scale, preserved by every u(x), d(a) and the block M-embedding.
// The Weyl representative and the M-corner sign used by bruhat_decompose are
// the unique sign combination under which the reconstruction
//     w u(x) w = u(z) w m(x,eps) d(a) u(y)
// holds; the enumeration of all four candidates lives in the group tests.

namespace csembed::group {

using csembed::Mat;
using csembed::Vec;

constexpr double kFormTol = 1e-12;   // exact algebraic identities
constexpr double kDetTol = 1e-10;    // |det| after ~n products
constexpr double kReconTol = 1e-10;  // compositions of ~5 matrix products

// Both corner entries of w, and the corner sign of the M-factor in the
// Bruhat reconstruction.  Pinned by the reconstruction identity.
constexpr double kWeylCornerSign = 1.0;
constexpr double kBruhatCornerSign = 1.0;

struct GroupElement {
  int n = 0;
  Mat entries;  // (n+1) x (n+1)

  GroupElement(int n_, Mat entries_);

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
};

// The invariant Gram matrix S described above.
Mat gram_form(int n);

// Largest violation of transpose(g) S g = S.
double form_defect(int n, const Mat& g);

bool in_group(int n, const Mat& g, double form_tol = kFormTol,
              double det_tol = kDetTol);

// Upper unipotent u(x): row 0 = (1, x, |x|^2/2), middle block identity with
// last column x^T, bottom row (0, 0, 1).  Satisfies u(x) u(y) = u(x+y).
GroupElement make_u(const Vec& x);

// d(a) = diag(a, 1, ..., 1, 1/a); a may be negative but not zero.
GroupElement make_d(int n, double a);

// Block embedding diag(eps, m, eps) of an orthogonal (n-1)x(n-1) matrix m.
GroupElement make_m(const Mat& m, int eps);

// Weyl representative exchanging the two isotropic directions.
GroupElement make_w(int n);

// Modulus character of the parabolic: rho_P(a) = a^{(n-1)/2}.
double rho_P(double a, int n);

struct BruhatFactors {
  Vec z;     // left unipotent parameter, 2x/|x|^2
  Mat m;     // reflection about the hyperplane orthogonal to x
  double a;  // |x|^2 / 2
  Vec y;     // right unipotent parameter; equals z (see note below)
};

// Factors of w u(x) w = u(z) w m(x,kBruhatCornerSign) d(a) u(y), x != 0.
// Note: the right unipotent parameter comes out as y = 2x/|x|^2 = z; the
// reconstruction identity does not hold with y = x for any sign choice.
BruhatFactors bruhat_decompose(const Vec& x);

Mat bruhat_reconstruct(const BruhatFactors& f);

struct IwasawaFactors {
  GroupElement k;  // orthogonal, in G
  double a;        // 1 + |x|^2/2
  Vec y;           // x / a
};

// u(x) w = k(x) d(a) u(y) with k(x) = u(x) w u(-y) d(1/a).
IwasawaFactors iwasawa_decompose(const Vec& x);

}  // namespace csembed::group
