#include "csembed/exterior.hpp"

#include <algorithm>

namespace csembed::exterior {

SubsetBasis SubsetBasis::make(int d, int i) {
  if (d < 0 || i < 0 || i > d) throw DegreeOutOfRange("SubsetBasis: need 0 <= i <= d");
  SubsetBasis b;
  b.d = d;
  b.i = i;
  std::vector<int> cur(i);
  // lexicographic enumeration of increasing i-subsets of {1..d}
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == i) {
      b.sets.push_back(cur);
      return;
    }
    for (int v = lo; v <= d - (i - pos - 1); ++v) {
      cur[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 1);
  return b;
}

int SubsetBasis::index_of(const std::vector<int>& s) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), s);
  if (it == sets.end() || *it != s) return -1;
  return static_cast<int>(it - sets.begin());
}

Mat reflection(const Vec& x) {
  const double nrm2 = x.squaredNorm();
  if (std::sqrt(nrm2) < 1e-12) throw ZeroVector("reflection: zero vector");
  const int d = static_cast<int>(x.size());
  return Mat::Identity(d, d) - (2.0 / nrm2) * (x * x.transpose());
}

WedgeOperator wedge_matrix(const Mat& a, int i) {
  const int d = static_cast<int>(a.rows());
  if (a.cols() != d) throw std::invalid_argument("wedge_matrix: matrix not square");
  SubsetBasis basis = SubsetBasis::make(d, i);
  const int c = basis.size();
  Mat w(c, c);
  Mat minor(i, i);
  for (int r = 0; r < c; ++r) {
    for (int s = 0; s < c; ++s) {
      for (int p = 0; p < i; ++p)
        for (int q = 0; q < i; ++q)
          minor(p, q) = a(basis.sets[r][p] - 1, basis.sets[s][q] - 1);
      w(r, s) = (i == 0) ? 1.0 : minor.determinant();
    }
  }
  return WedgeOperator{std::move(basis), std::move(w)};
}

WedgeOperator m_i(const Vec& x, int i) {
  return wedge_matrix(reflection(x), i);
}

WedgeOperator phi_poly(const Vec& x, double t, int i) {
  const int d = static_cast<int>(x.size()) + 1;
  Vec w(d);
  w.head(d - 1) = x;
  w(d - 1) = t;
  const double nrm2 = w.squaredNorm();
  if (std::sqrt(nrm2) < 1e-12) throw ZeroVector("phi_poly: (x,t) = 0");
  Mat psi = nrm2 * Mat::Identity(d, d) - 2.0 * (w * w.transpose());
  return wedge_matrix(psi, i);
}

Mat include_matrix(int d, int i) {
  SubsetBasis big = SubsetBasis::make(d, i);
  SubsetBasis small = SubsetBasis::make(d - 1, i);
  Mat inc = Mat::Zero(big.size(), small.size());
  for (int s = 0; s < small.size(); ++s) {
    int r = big.index_of(small.sets[s]);
    inc(r, s) = 1.0;
  }
  return inc;
}

CVec include_wedge(const CVec& v, int d_small, int i) {
  SubsetBasis small = SubsetBasis::make(d_small, i);
  if (v.size() != small.size())
    throw DegreeOutOfRange("include_wedge: coefficient count mismatch");
  return include_matrix(d_small + 1, i).cast<Complex>() * v;
}

CVec restrict_wedge(const CVec& v, int d_big, int i) {
  SubsetBasis big = SubsetBasis::make(d_big, i);
  if (v.size() != big.size())
    throw DegreeOutOfRange("restrict_wedge: coefficient count mismatch");
  return include_matrix(d_big, i).transpose().cast<Complex>() * v;
}

}  // namespace csembed::exterior
