#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace csembed {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Deterministic RNG: splitmix64 core with explicit uniform/gaussian maps.
// The <random> distributions are implementation-defined, which would break
// byte-identical reports across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Vec gaussian_vec(int d) {
    Vec v(d);
    for (int j = 0; j < d; ++j) v(j) = gaussian();
    return v;
  }

  Vec uniform_vec(int d, double lo, double hi) {
    Vec v(d);
    for (int j = 0; j < d; ++j) v(j) = uniform(lo, hi);
    return v;
  }

  // Haar-ish random orthogonal matrix via Gram-Schmidt of a gaussian matrix.
  Mat orthogonal(int d) {
    Mat g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) g(r, c) = gaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < d; ++c)
      if (rmat(c, c) < 0) q.col(c) *= -1.0;
    return q;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace csembed
