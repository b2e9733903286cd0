#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csembed/exterior.hpp"

using namespace csembed;
namespace ex = csembed::exterior;

TEST_CASE("subset basis enumeration") {
  auto b = ex::SubsetBasis::make(4, 2);
  CHECK(b.size() == 6);
  CHECK(b.sets.front() == std::vector<int>{1, 2});
  CHECK(b.sets.back() == std::vector<int>{3, 4});
  CHECK(b.index_of({2, 4}) == 4);
  CHECK(b.index_of({4, 2}) == -1);
  CHECK(ex::SubsetBasis::make(5, 0).size() == 1);
  CHECK_THROWS_AS(ex::SubsetBasis::make(3, 4), DegreeOutOfRange);
}

TEST_CASE("reflections") {
  Vec e1 = Vec::Zero(3);
  e1(0) = 1.0;
  Mat r = ex::reflection(e1);
  Mat expect = Mat::Identity(3, 3);
  expect(0, 0) = -1.0;
  CHECK(max_abs_diff(r, expect) == 0.0);

  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + (k % 4);
    Vec x = rng.gaussian_vec(d);
    if (x.norm() < 1e-3) x(0) += 1.0;
    Mat m = ex::reflection(x);
    CHECK(max_abs_diff(m, m.transpose()) < 1e-14);
    CHECK(max_abs_diff(m * m, Mat::Identity(d, d)) < 1e-13);
    CHECK(m.determinant() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK((m * x + x).cwiseAbs().maxCoeff() < 1e-12);
    // scale invariance
    CHECK(max_abs_diff(ex::reflection(3.7 * x), m) < 1e-13);
    // perpendicular vectors are fixed
    Vec v = rng.gaussian_vec(d);
    v -= v.dot(x) / x.squaredNorm() * x;
    CHECK((m * v - v).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(ex::reflection(Vec::Zero(3)), ZeroVector);
}

TEST_CASE("wedge matrices: degenerate degrees and functoriality") {
  Rng rng(37);
  Mat a = rng.orthogonal(4);
  CHECK(ex::wedge_matrix(a, 0).entries(0, 0) == 1.0);
  CHECK(ex::wedge_matrix(a, 4).entries(0, 0) == doctest::Approx(a.determinant()));
  CHECK(max_abs_diff(ex::wedge_matrix(a, 1).entries, a) == 0.0);

  for (int k = 0; k < 200; ++k) {
    const int d = 2 + (k % 5);  // up to 6
    Mat m1(d, d), m2(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        m1(r, c) = rng.gaussian();
        m2(r, c) = rng.gaussian();
      }
    for (int i = 0; i <= d; ++i) {
      Mat lhs = ex::wedge_matrix(m1 * m2, i).entries;
      Mat rhs = ex::wedge_matrix(m1, i).entries * ex::wedge_matrix(m2, i).entries;
      CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("wedge of orthogonal stays orthogonal; determinant power") {
  Rng rng(41);
  for (int d = 2; d <= 5; ++d) {
    Mat q = rng.orthogonal(d);
    for (int i = 0; i <= d; ++i) {
      auto w = ex::wedge_matrix(q, i);
      const int c = w.basis.size();
      CHECK(max_abs_diff(w.entries.transpose() * w.entries, Mat::Identity(c, c)) < 1e-12);
      const double expo = static_cast<double>(binomial(d - 1, i - 1));
      CHECK(w.entries.determinant() ==
            doctest::Approx(std::pow(q.determinant(), expo)).epsilon(1e-9));
    }
  }
}

TEST_CASE("wedge reflections") {
  Vec e1 = Vec::Zero(4);
  e1(0) = 1.0;
  for (int i = 0; i <= 2; ++i) {
    auto m = ex::m_i(e1, i);
    // diagonal, -1 exactly on subsets containing 1
    for (int r = 0; r < m.basis.size(); ++r)
      for (int c = 0; c < m.basis.size(); ++c) {
        if (r != c) {
          CHECK(std::abs(m.entries(r, c)) < 1e-14);
        } else {
          const bool has1 = !m.basis.sets[r].empty() && m.basis.sets[r].front() == 1;
          CHECK(m.entries(r, r) == doctest::Approx(has1 ? -1.0 : 1.0));
        }
      }
  }

  Rng rng(43);
  for (int k = 0; k < 500; ++k) {
    const int d = 2 + (k % 4);
    const int i = k % (d + 1);
    Vec x = rng.gaussian_vec(d);
    if (x.norm() < 1e-3) x(0) += 1.0;
    auto m = ex::m_i(x, i);
    const int c = m.basis.size();
    CHECK(max_abs_diff(m.entries * m.entries, Mat::Identity(c, c)) < 1e-12);
    CHECK(max_abs_diff(ex::m_i(2.0 * x / x.squaredNorm(), i).entries, m.entries) < 1e-12);
  }
}

TEST_CASE("homogeneous matrix polynomial") {
  Rng rng(47);
  // i = 0: constant 1
  Vec x0 = rng.gaussian_vec(2);
  CHECK(ex::phi_poly(x0, 0.7, 0).entries(0, 0) == doctest::Approx(1.0));

  // (|x|^2 + t^2)^i m_i((x,t)) versus the direct product route
  for (int k = 0; k < 100; ++k) {
    const int d = 1 + (k % 3);  // x in R^{d}, ambient d+1
    const int i = k % (d + 2);
    Vec x = rng.gaussian_vec(d);
    const double t = rng.gaussian();
    if (std::sqrt(x.squaredNorm() + t * t) < 1e-3) continue;
    Vec full(d + 1);
    full.head(d) = x;
    full(d) = t;
    const double pw = std::pow(full.squaredNorm(), i);
    Mat direct = pw * ex::m_i(full, i).entries;
    CHECK(max_abs_diff(ex::phi_poly(x, t, i).entries, direct) <
          1e-11 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }

  // homogeneity of degree 2i under (x,t) -> (lambda x, lambda t)
  for (double lambda : {2.0, 3.0, 0.5}) {
    for (int i = 0; i <= 2; ++i) {
      Vec x = rng.gaussian_vec(3);
      const double t = rng.gaussian() + 1.1;
      Mat base = ex::phi_poly(x, t, i).entries;
      Mat scaled = ex::phi_poly(Vec(lambda * x), lambda * t, i).entries;
      CHECK(max_abs_diff(scaled, std::pow(lambda, 2 * i) * base) <
            1e-10 * std::max(1.0, scaled.cwiseAbs().maxCoeff()));
    }
  }

  // pinned value: d-1 = 1, i = 1, x = (1), t = 1; ambient reflection about (1,1)
  Vec one(1);
  one << 1.0;
  Mat phi = ex::phi_poly(one, 1.0, 1).entries;
  Mat expect(2, 2);  // 2 * (I - (1,1)(1,1)^T) evaluated by direct minors
  expect << 0, -2, -2, 0;
  CHECK(max_abs_diff(phi, expect) < 1e-13);

  CHECK_THROWS_AS(ex::phi_poly(Vec::Zero(2), 0.0, 1), ZeroVector);
}

TEST_CASE("include and restrict between wedge bases") {
  Rng rng(53);
  for (int d = 2; d <= 5; ++d)
    for (int i = 0; i <= std::min(2, d - 1); ++i) {
      const int cs = static_cast<int>(binomial(d - 1, i));
      CVec v(cs);
      for (int k = 0; k < cs; ++k) v(k) = Complex(rng.gaussian(), rng.gaussian());
      CVec up = ex::include_wedge(v, d - 1, i);
      CHECK((ex::restrict_wedge(up, d, i) - v).cwiseAbs().maxCoeff() < 1e-15);
      CHECK(up.norm() == doctest::Approx(v.norm()));  // isometry on coefficients
      // subsets containing d carry no coefficient
      auto big = ex::SubsetBasis::make(d, i);
      for (int r = 0; r < big.size(); ++r)
        if (!big.sets[r].empty() && big.sets[r].back() == d)
          CHECK(std::abs(up(r)) == 0.0);
    }
}

TEST_CASE("equivariance of the inclusion under rotations fixing the last axis") {
  Rng rng(59);
  for (int d = 3; d <= 5; ++d)
    for (int i = 1; i <= 2; ++i) {
      Mat small = rng.orthogonal(d - 1);
      Mat big = Mat::Identity(d, d);
      big.topLeftCorner(d - 1, d - 1) = small;
      Mat inc = ex::include_matrix(d, i);
      Mat lhs = ex::wedge_matrix(big, i).entries * inc;
      Mat rhs = inc * ex::wedge_matrix(small, i).entries;
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("reflections about (x,0) restrict to small reflections") {
  // the kernel identity behind the embedding isometry
  Rng rng(61);
  for (int d = 3; d <= 5; ++d)
    for (int i = 1; i <= 2; ++i) {
      Vec x = rng.gaussian_vec(d - 1);
      if (x.norm() < 1e-3) x(0) += 1.0;
      Vec x0(d);
      x0.head(d - 1) = x;
      x0(d - 1) = 0.0;
      Mat inc = ex::include_matrix(d, i);
      Mat lhs = ex::m_i(x0, i).entries * inc;
      Mat rhs = inc * ex::m_i(x, i).entries;
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("multiplicity-one: equivariant maps into the big wedge space form a line") {
  // Maps X with wedge(g^) X = X wedge(g) for every g in O(d-1), g^ the block
  // extension fixing e_d, form a one-dimensional space spanned by the
  // inclusion; dimension count for d <= 5, i <= 2.
  Rng rng(67);
  for (int d = 3; d <= 5; ++d)
    for (int i = 1; i <= 2; ++i) {
      const int cb = static_cast<int>(binomial(d, i));
      const int cs = static_cast<int>(binomial(d - 1, i));
      const int unknowns = cb * cs;
      const int reps = 5;
      Mat stack = Mat::Zero(reps * unknowns, unknowns);
      for (int rep = 0; rep < reps; ++rep) {
        Mat small = rng.orthogonal(d - 1);
        if (rep == 0) small.col(0) *= -1.0;  // include an improper element
        Mat big = Mat::Identity(d, d);
        big.topLeftCorner(d - 1, d - 1) = small;
        const Mat wb = ex::wedge_matrix(big, i).entries;
        const Mat ws = ex::wedge_matrix(small, i).entries;
        // (wb X - X ws) flattened: rows indexed by (r, c) of the map
        for (int r = 0; r < cb; ++r)
          for (int c = 0; c < cs; ++c) {
            const int row = rep * unknowns + r * cs + c;
            for (int p = 0; p < cb; ++p) stack(row, p * cs + c) += wb(r, p);
            for (int q = 0; q < cs; ++q) stack(row, r * cs + q) -= ws(q, c);
          }
      }
      Eigen::FullPivLU<Mat> lu(stack);
      lu.setThreshold(1e-9);
      CHECK(static_cast<int>(lu.rank()) == unknowns - 1);
      // the kernel line is the inclusion
      Mat inc = ex::include_matrix(d, i);
      Vec flat(unknowns);
      for (int r = 0; r < cb; ++r)
        for (int c = 0; c < cs; ++c) flat(r * cs + c) = inc(r, c);
      CHECK((stack * flat).cwiseAbs().maxCoeff() < 1e-12);
    }
}
