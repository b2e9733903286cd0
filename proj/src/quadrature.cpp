#include "csembed/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>

namespace csembed::quadrature {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

std::atomic<long long> g_eval_count{0};
std::atomic<long long> g_eval_cap{0};

// Golub-Welsch: nodes/weights from the symmetric Jacobi matrix of the
// orthogonality weight; mu0 is the total mass of the weight.
Rule1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag,
                    double mu0) {
  const int n = static_cast<int>(diag.size());
  Mat j = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) j(k, k) = diag[k];
  for (int k = 0; k + 1 < n; ++k) {
    j(k, k + 1) = offdiag[k];
    j(k + 1, k) = offdiag[k];
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(j);
  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.x[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    rule.w[k] = mu0 * v0 * v0;
  }
  return rule;
}

Rule1D make_jacobi(int n, double a, double b) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  diag[0] = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  if (n > 1) {
    off[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) /
                       ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b)));
    for (int k = 2; k < n; ++k) {
      const double s = 2.0 * k + a + b;
      off[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) /
                             (s * s * (s + 1.0) * (s - 1.0)));
    }
  }
  const double mu0 = std::pow(2.0, a + b + 1.0) *
                     std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  return golub_welsch(diag, off, mu0);
}

Rule1D make_laguerre(int n, double alpha) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
  return golub_welsch(diag, off, std::exp(std::lgamma(alpha + 1.0)));
}

Rule1D make_hermite(int n) {
  std::vector<double> diag(n, 0.0), off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
  return golub_welsch(diag, off, std::sqrt(kPi));
}

template <class Key>
class RuleCache {
 public:
  const Rule1D& get(const Key& key, const std::function<Rule1D()>& make) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make()).first;
    return it->second;
  }

 private:
  std::mutex mu_;
  std::map<Key, Rule1D> cache_;
};

AngularScheme make_sphere_scheme(int d, int order) {
  AngularScheme s;
  if (d == 1) {
    Vec p(1), m(1);
    p(0) = 1.0;
    m(0) = -1.0;
    s.nodes = {p, m};
    s.weights = {1.0, 1.0};
    return s;
  }
  if (d == 2) {
    const int mcount = std::max(4, 2 * order);
    const double w = 2.0 * kPi / mcount;
    for (int j = 0; j < mcount; ++j) {
      const double th = 2.0 * kPi * (j + 0.5) / mcount;
      Vec v(2);
      v << std::cos(th), std::sin(th);
      s.nodes.push_back(v);
      s.weights.push_back(w);
    }
    return s;
  }
  // S^{d-1} = {(sqrt(1-mu^2) omega', mu)}, mu-weight (1-mu^2)^{(d-3)/2}
  const Rule1D& polar = gauss_jacobi(order, 0.5 * (d - 3), 0.5 * (d - 3));
  const AngularScheme& sub = sphere_scheme(d - 1, order);
  for (std::size_t k = 0; k < polar.x.size(); ++k) {
    const double mu = polar.x[k];
    const double sn = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
      Vec v(d);
      v.head(d - 1) = sn * sub.nodes[j];
      v(d - 1) = mu;
      s.nodes.push_back(v);
      s.weights.push_back(polar.w[k] * sub.weights[j]);
    }
  }
  return s;
}

class SchemeCache {
 public:
  const AngularScheme& get(int d, int order) {
    // recursive: building S^{d-1} pulls in S^{d-2}
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(d, order);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make_sphere_scheme(d, order)).first;
    return it->second;
  }

 private:
  std::recursive_mutex mu_;
  std::map<std::pair<int, int>, AngularScheme> cache_;
};

RuleCache<std::pair<int, std::pair<double, double>>>& jacobi_cache() {
  static RuleCache<std::pair<int, std::pair<double, double>>> c;
  return c;
}

RuleCache<std::pair<int, double>>& laguerre_cache() {
  static RuleCache<std::pair<int, double>> c;
  return c;
}

RuleCache<int>& hermite_cache() {
  static RuleCache<int> c;
  return c;
}

SchemeCache& scheme_cache() {
  static SchemeCache c;
  return c;
}

// Nodes/weights for Int_0^inf t^{c-1} e^{-t} H(t) dt with complex c.  The
// real case is generalized Gauss-Laguerre; a complex exponent oscillates in
// log t near the origin, which Laguerre cannot absorb, so that case uses the
// exponential substitution t = e^u with a trapezoid grid.
struct RadialRule {
  std::vector<double> t;
  std::vector<Complex> w;
};

RadialRule radial_rule(Complex c, int n) {
  RadialRule rule;
  if (c.imag() == 0.0) {
    const Rule1D& lag = gauss_laguerre(n, c.real() - 1.0);
    rule.t = lag.x;
    rule.w.assign(lag.w.begin(), lag.w.end());
    return rule;
  }
  const double re = std::max(c.real(), 0.05);
  const double h = 0.08;
  const double u_lo = -42.0 / re;
  const double u_hi = std::log(45.0);
  const int count = static_cast<int>((u_hi - u_lo) / h) + 1;
  rule.t.reserve(count);
  rule.w.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double u = u_lo + k * h;
    const double t = std::exp(u);
    rule.t.push_back(t);
    rule.w.push_back(h * std::exp(c * u - Complex(t, 0.0)));
  }
  return rule;
}

// Radial x angular fold for one atom against |x|^{-alpha} with an optional
// per-angular-node scalar weight.
Complex atom_fold(const schwartz::GaussianAtom& atom, Complex alpha, int radial_nodes,
                  const AngularScheme& ang, const std::vector<Complex>* dir_weight) {
  const int d = atom.d;
  const Complex cpar = 0.5 * (Complex(d, 0.0) - alpha);
  if (cpar.real() <= 0.0) throw WeightNotIntegrable("integrate_weighted: alpha >= d");
  const double a = atom.width;
  const double sqa = std::sqrt(a);
  const Vec bp = sqa * atom.center;
  const Vec cp = atom.modulation / sqa;
  const double bp2 = bp.squaredNorm();

  const RadialRule rad = radial_rule(cpar, radial_nodes);
  const std::size_t na = ang.nodes.size();
  charge_evals(static_cast<long long>(rad.t.size()) * static_cast<long long>(na));

  std::vector<double> dot_b(na), dot_c(na);
  for (std::size_t j = 0; j < na; ++j) {
    dot_b[j] = bp.dot(ang.nodes[j]);
    dot_c[j] = cp.dot(ang.nodes[j]);
  }

  Complex acc(0.0, 0.0);
  Vec point(d);
  for (std::size_t k = 0; k < rad.t.size(); ++k) {
    const double r = std::sqrt(rad.t[k]);
    Complex ring(0.0, 0.0);
    for (std::size_t j = 0; j < na; ++j) {
      point = (r / sqa) * ang.nodes[j];
      const Complex val =
          atom.poly.eval(point) *
          std::exp(Complex(2.0 * r * dot_b[j] - bp2, 2.0 * r * dot_c[j]));
      ring += ang.weights[j] * (dir_weight ? (*dir_weight)[j] * val : val);
    }
    acc += rad.w[k] * ring;
  }
  // pow(a, (alpha - d)/2) from the unit-width substitution
  const Complex apow = std::exp(0.5 * (alpha - Complex(d, 0.0)) * std::log(a));
  return 0.5 * apow * acc;
}

Complex fn_fold(const schwartz::SchwartzFn& f, Complex alpha, int radial_nodes,
                const AngularScheme& ang, const std::vector<Complex>* dir_weight) {
  Complex acc(0.0, 0.0);
  for (const auto& atom : f.atoms) acc += atom_fold(atom, alpha, radial_nodes, ang, dir_weight);
  return acc;
}

void refinement_guard(Complex coarse, Complex fine, double target, const char* who) {
  const double scale = std::max(std::abs(fine), 1e-300);
  if (std::abs(coarse - fine) / scale > target)
    throw QuadratureBudgetExceeded(std::string(who) + ": refinement disagreement above target");
}

}  // namespace

const Rule1D& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

const Rule1D& gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: parameters <= -1");
  return jacobi_cache().get({n, {a, b}}, [&] { return make_jacobi(n, a, b); });
}

const Rule1D& gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need n >= 1");
  if (alpha <= -1.0) throw WeightNotIntegrable("gauss_laguerre: alpha <= -1");
  return laguerre_cache().get({n, alpha}, [&] { return make_laguerre(n, alpha); });
}

const Rule1D& gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
  return hermite_cache().get(n, [&] { return make_hermite(n); });
}

const AngularScheme& sphere_scheme(int d, int order) {
  if (d < 1) throw std::invalid_argument("sphere_scheme: need d >= 1");
  return scheme_cache().get(d, order);
}

double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::exp(std::lgamma(0.5 * d));
}

void set_eval_budget(long long cap) { g_eval_cap.store(cap); }

void reset_eval_count() { g_eval_count.store(0); }

long long eval_count() { return g_eval_count.load(); }

void charge_evals(long long k) {
  const long long cap = g_eval_cap.load(std::memory_order_relaxed);
  const long long now = g_eval_count.fetch_add(k, std::memory_order_relaxed) + k;
  if (cap > 0 && now > cap)
    throw QuadratureBudgetExceeded("quadrature: evaluation budget exhausted");
}

Complex integrate_weighted(const schwartz::SchwartzFn& f, double alpha,
                           const QuadratureSpec& spec) {
  return integrate_weighted_c(f, Complex(alpha, 0.0), spec);
}

Complex integrate_weighted_c(const schwartz::SchwartzFn& f, Complex alpha,
                             const QuadratureSpec& spec) {
  if (alpha.real() >= f.d)
    throw WeightNotIntegrable("integrate_weighted: alpha >= d");
  const AngularScheme& ang = sphere_scheme(f.d, spec.angular_order);
  Complex fine = fn_fold(f, alpha, spec.radial_nodes, ang, nullptr);
  if (spec.check_refinement) {
    const AngularScheme& ang2 = sphere_scheme(f.d, spec.angular_order + 4);
    Complex finer = fn_fold(f, alpha, spec.radial_nodes + 8, ang2, nullptr);
    refinement_guard(fine, finer, spec.target_rel_err, "integrate_weighted");
    return finer;
  }
  return fine;
}

double weighted_norm(const schwartz::SchwartzFn& phi_hat, double u, int n,
                     const QuadratureSpec& spec) {
  const double alpha = (n - 1) * u;
  if (!(alpha > 0.0) || !(alpha < n - 1))
    throw WeightNotIntegrable("weighted_norm: need 0 < (n-1)u < n-1");
  schwartz::SchwartzFn sq = multiply(phi_hat, conjugate(phi_hat));
  return integrate_weighted(sq, alpha, spec).real();
}

Complex weighted_contraction(const std::vector<std::vector<schwartz::SchwartzFn>>& g,
                             const DirectionWeight& w, double alpha,
                             const QuadratureSpec& spec) {
  if (g.empty()) return Complex(0.0, 0.0);
  const int c_out = static_cast<int>(g.size());
  const int c_in = static_cast<int>(g.front().size());
  int d = 0;
  for (const auto& row : g)
    for (const auto& fn : row)
      if (fn.d > 0) d = fn.d;
  if (d == 0) return Complex(0.0, 0.0);

  auto run = [&](int radial, int order) {
    const AngularScheme& ang = sphere_scheme(d, order);
    std::vector<CMat> wj(ang.nodes.size());
    for (std::size_t j = 0; j < ang.nodes.size(); ++j) wj[j] = w(ang.nodes[j]);
    Complex total(0.0, 0.0);
    std::vector<Complex> dir(ang.nodes.size());
    for (int t = 0; t < c_out; ++t)
      for (int s = 0; s < c_in; ++s) {
        if (g[t][s].is_zero()) continue;
        for (std::size_t j = 0; j < dir.size(); ++j) dir[j] = wj[j](t, s);
        total += fn_fold(g[t][s], Complex(alpha, 0.0), radial, ang, &dir);
      }
    return total;
  };

  Complex fine = run(spec.radial_nodes, spec.angular_order);
  if (spec.check_refinement) {
    Complex finer = run(spec.radial_nodes + 8, spec.angular_order + 4);
    refinement_guard(fine, finer, spec.target_rel_err, "weighted_contraction");
    return finer;
  }
  return fine;
}

CVec weighted_apply(const std::vector<schwartz::SchwartzFn>& f, const DirectionWeight& w,
                    int out_dim, double alpha, const QuadratureSpec& spec) {
  int d = 0;
  for (const auto& fn : f)
    if (fn.d > 0) d = fn.d;
  CVec out = CVec::Zero(out_dim);
  if (d == 0) return out;
  const AngularScheme& ang = sphere_scheme(d, spec.angular_order);
  std::vector<CMat> wj(ang.nodes.size());
  for (std::size_t j = 0; j < ang.nodes.size(); ++j) wj[j] = w(ang.nodes[j]);
  std::vector<Complex> dir(ang.nodes.size());
  for (int t = 0; t < out_dim; ++t)
    for (std::size_t s = 0; s < f.size(); ++s) {
      if (f[s].is_zero()) continue;
      for (std::size_t j = 0; j < dir.size(); ++j) dir[j] = wj[j](t, static_cast<int>(s));
      out(t) += fn_fold(f[s], Complex(alpha, 0.0), spec.radial_nodes, ang, &dir);
    }
  return out;
}

Complex integrate_weighted_callable(const std::function<Complex(const Vec&)>& h, int d,
                                    double alpha, double decay_scale,
                                    const QuadratureSpec& spec) {
  const double gamma = 0.5 * (d - alpha);
  if (gamma <= 0.0) throw WeightNotIntegrable("integrate_weighted_callable: alpha >= d");
  if (decay_scale <= 0.0)
    throw std::invalid_argument("integrate_weighted_callable: decay_scale must be positive");
  // Int_0^inf r^{d-1-alpha} G(r) dr on a log-radius trapezoid grid; decay_scale
  // is a lower bound on the Gaussian decay rate of h, used only for the outer
  // cutoff, so accuracy is uniform in the actual scale of h.
  const double s_lo = -22.5 / gamma;
  const double s_hi = 0.5 * std::log(45.0 / decay_scale);
  const double step = 0.05;
  const int count = static_cast<int>((s_hi - s_lo) / step) + 1;
  const AngularScheme& ang = sphere_scheme(d, spec.angular_order);
  charge_evals(static_cast<long long>(count) * static_cast<long long>(ang.nodes.size()));
  Complex acc(0.0, 0.0);
  for (int k = 0; k < count; ++k) {
    const double s = s_lo + k * step;
    const double r = std::exp(s);
    Complex ring(0.0, 0.0);
    for (std::size_t j = 0; j < ang.nodes.size(); ++j)
      ring += ang.weights[j] * h(r * ang.nodes[j]);
    acc += std::exp(2.0 * gamma * s) * ring;  // r^{d-alpha} d(log r)
  }
  return step * acc;
}

Complex integrate_annulus_callable(const std::function<Complex(const Vec&)>& h, int d,
                                   double alpha, double r0, double r1,
                                   const QuadratureSpec& spec) {
  const Rule1D& rad = gauss_legendre(spec.radial_nodes);
  const AngularScheme& ang = sphere_scheme(d, spec.angular_order);
  const int panels = 4;
  charge_evals(static_cast<long long>(panels) * rad.x.size() * ang.nodes.size());
  Complex acc(0.0, 0.0);
  for (int p = 0; p < panels; ++p) {
    const double lo = r0 + (r1 - r0) * p / panels;
    const double hi = r0 + (r1 - r0) * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < rad.x.size(); ++k) {
      const double r = mid + hw * rad.x[k];
      Complex ring(0.0, 0.0);
      for (std::size_t j = 0; j < ang.nodes.size(); ++j)
        ring += ang.weights[j] * h(r * ang.nodes[j]);
      acc += hw * rad.w[k] * std::pow(r, d - 1 - alpha) * ring;
    }
  }
  return acc;
}

Complex cgamma(Complex z) {
  // Lanczos, g = 7
  static const double coef[9] = {0.99999999999980993,     676.5203681218851,
                                 -1259.1392167224028,     771.32342877765313,
                                 -176.61502916214059,     12.507343278686905,
                                 -0.13857109526572012,    9.9843695780195716e-6,
                                 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    const Complex pi_z = kPi * z;
    return kPi / (std::sin(pi_z) * cgamma(Complex(1.0, 0.0) - z));
  }
  z -= Complex(1.0, 0.0);
  Complex x(coef[0], 0.0);
  for (int k = 1; k < 9; ++k) x += coef[k] / (z + Complex(k, 0.0));
  const Complex t = z + Complex(7.5, 0.0);
  return std::sqrt(2.0 * kPi) * std::pow(t, z + Complex(0.5, 0.0)) * std::exp(-t) * x;
}

double gamma_ratio(double a, double b) {
  return std::exp(std::lgamma(a) - std::lgamma(b));
}

}  // namespace csembed::quadrature
