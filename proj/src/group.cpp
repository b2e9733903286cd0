#include "csembed/group.hpp"

#include <cmath>

namespace csembed::group {

GroupElement::GroupElement(int n_, Mat entries_) : n(n_), entries(std::move(entries_)) {
  if (n < 2) throw std::invalid_argument("GroupElement: need n >= 2");
  if (entries.rows() != n + 1 || entries.cols() != n + 1)
    throw std::invalid_argument("GroupElement: wrong matrix size");
  if (!in_group(n, entries))
    throw std::invalid_argument("GroupElement: matrix does not preserve the invariant form");
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (o.n != n) throw std::invalid_argument("GroupElement: rank mismatch");
  return GroupElement(n, entries * o.entries);
}

GroupElement GroupElement::inverse() const {
  // g^{-1} = S^{-1} g^T S; cheaper and better conditioned than a general inverse.
  Mat s = gram_form(n);
  Mat sinv = s;  // S is an involution composed with a permutation: S*S = I here
  return GroupElement(n, sinv * entries.transpose() * s);
}

Mat gram_form(int n) {
  if (n < 2) throw std::invalid_argument("gram_form: need n >= 2");
  Mat s = Mat::Zero(n + 1, n + 1);
  for (int j = 1; j <= n - 1; ++j) s(j, j) = 1.0;
  s(0, n) = -1.0;
  s(n, 0) = -1.0;
  return s;
}

double form_defect(int n, const Mat& g) {
  Mat s = gram_form(n);
  return (g.transpose() * s * g - s).cwiseAbs().maxCoeff();
}

bool in_group(int n, const Mat& g, double form_tol, double det_tol) {
  // rounding in g^T S g grows with the square of the entry scale
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (form_defect(n, g) > form_tol * scale * scale) return false;
  return std::abs(std::abs(g.determinant()) - 1.0) <= det_tol * scale * scale;
}

GroupElement make_u(const Vec& x) {
  const int n = static_cast<int>(x.size()) + 1;
  Mat g = Mat::Identity(n + 1, n + 1);
  for (int j = 0; j < n - 1; ++j) {
    g(0, 1 + j) = x(j);
    g(1 + j, n) = x(j);
  }
  g(0, n) = 0.5 * x.squaredNorm();
  return GroupElement(n, std::move(g));
}

GroupElement make_d(int n, double a) {
  if (a == 0.0) throw std::invalid_argument("make_d: a must be nonzero");
  Mat g = Mat::Identity(n + 1, n + 1);
  g(0, 0) = a;
  g(n, n) = 1.0 / a;
  return GroupElement(n, std::move(g));
}

GroupElement make_m(const Mat& m, int eps) {
  const int d = static_cast<int>(m.rows());
  if (m.cols() != d) throw std::invalid_argument("make_m: matrix not square");
  if ((m.transpose() * m - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kFormTol)
    throw std::invalid_argument("make_m: matrix not orthogonal");
  if (eps != 1 && eps != -1) throw std::invalid_argument("make_m: eps must be +-1");
  const int n = d + 1;
  Mat g = Mat::Zero(n + 1, n + 1);
  g(0, 0) = eps;
  g(n, n) = eps;
  g.block(1, 1, d, d) = m;
  return GroupElement(n, std::move(g));
}

GroupElement make_w(int n) {
  Mat g = Mat::Zero(n + 1, n + 1);
  for (int j = 1; j <= n - 1; ++j) g(j, j) = 1.0;
  g(0, n) = kWeylCornerSign;
  g(n, 0) = kWeylCornerSign;
  return GroupElement(n, std::move(g));
}

double rho_P(double a, int n) {
  if (a <= 0.0) throw std::invalid_argument("rho_P: a must be positive");
  return std::pow(a, 0.5 * (n - 1));
}

BruhatFactors bruhat_decompose(const Vec& x) {
  const double nrm2 = x.squaredNorm();
  if (std::sqrt(nrm2) < 1e-12) throw ZeroVector("bruhat_decompose: x = 0 is outside the cell");
  const int d = static_cast<int>(x.size());
  BruhatFactors f;
  f.z = 2.0 * x / nrm2;
  f.m = Mat::Identity(d, d) - (2.0 / nrm2) * (x * x.transpose());
  f.a = 0.5 * nrm2;
  f.y = f.z;
  return f;
}

Mat bruhat_reconstruct(const BruhatFactors& f) {
  const int n = static_cast<int>(f.z.size()) + 1;
  GroupElement w = make_w(n);
  GroupElement prod = make_u(f.z) * w *
                      make_m(f.m, static_cast<int>(kBruhatCornerSign)) *
                      make_d(n, f.a) * make_u(f.y);
  return prod.entries;
}

IwasawaFactors iwasawa_decompose(const Vec& x) {
  const int n = static_cast<int>(x.size()) + 1;
  const double a = 1.0 + 0.5 * x.squaredNorm();
  const Vec y = x / a;
  GroupElement k = make_u(x) * make_w(n) * make_u(-y) * make_d(n, 1.0 / a);
  return IwasawaFactors{std::move(k), a, y};
}

}  // namespace csembed::group
