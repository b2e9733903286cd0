#include "csembed/embedding.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace csembed::embedding {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

double min_width(const SchwartzFn& f) {
  double w = 1e300;
  for (const auto& atom : f.atoms) w = std::min(w, atom.width);
  return w == 1e300 ? 1.0 : w;
}

Vec append_coord(const Vec& y, double t) {
  Vec full(y.size() + 1);
  full.head(y.size()) = y;
  full(y.size()) = t;
  return full;
}

}  // namespace

EmbeddingContext::EmbeddingContext(int n, int i, double u)
    : big(n, i, u, intertwine::Window::kEmbedding),
      small(n - 1, i, ((n - 1) * u - 1.0) / (n - 2), intertwine::Window::kFormPositivity),
      lambda((n - 1) * (1.0 - u)) {
  const double other = (n - 2) * (1.0 - small.u);
  if (std::abs(lambda - other) > 1e-14)
    throw std::logic_error("EmbeddingContext: (n-1)(1-u) = (n-2)(1-u') violated");
}

CVec JExtension::eval(const Vec& y, double) const { return base.eval(y); }

CVec JExtension::eval_full(const Vec& yt) const {
  return base.eval(yt.head(yt.size() - 1));
}

JExtension j_apply(const SchwartzVec& phi_small) {
  return JExtension{include_components(phi_small)};
}

double transverse_factor(double p, int nodes) {
  if (!(p > 0.5)) throw ExponentTooSmall("transverse_factor: need (n-1)u > 1");
  // Int_R (1+s^2)^{-p} ds  =  2 Int_0^1 (1+s^2)^{-p} ds
  //                        + 2 Int_0^1 w^{2p-2} (1+w^2)^{-p} dw   (s = 1/w)
  const auto& gl = quadrature::gauss_legendre(nodes);
  double part1 = 0.0;
  for (std::size_t k = 0; k < gl.x.size(); ++k) {
    const double s = 0.5 * (1.0 + gl.x[k]);
    part1 += 0.5 * gl.w[k] * std::pow(1.0 + s * s, -p);
  }
  const auto& gj = quadrature::gauss_jacobi(nodes, 0.0, 2.0 * p - 2.0);
  double part2 = 0.0;
  for (std::size_t k = 0; k < gj.x.size(); ++k) {
    const double w = 0.5 * (1.0 + gj.x[k]);
    part2 += gj.w[k] * std::pow(1.0 + w * w, -p);
  }
  part2 *= std::pow(2.0, 1.0 - 2.0 * p);
  return 2.0 * (part1 + part2);
}

double transverse_factor_reference(double p) {
  return std::sqrt(kPi) * std::exp(std::lgamma(p - 0.5) - std::lgamma(p));
}

MOperatorResult m_operator(const Vec& x, double lambda, int i, const MQuadSpec& mq) {
  const double xn = x.norm();
  if (xn < 1e-8) throw ZeroVector("m_operator: |x| too small");
  const int d_amb = static_cast<int>(x.size()) + 1;
  const double beta = 0.5 * lambda + i;

  Mat closed = exterior::wedge_matrix(exterior::reflection(append_coord(x, 0.0)), i).entries *
               std::pow(xn, -lambda);

  const auto& vr = quadrature::gauss_laguerre(mq.v_nodes, beta - 1.0);
  const auto& sr = quadrature::gauss_legendre(mq.s_nodes);
  const auto& tr = quadrature::gauss_legendre(mq.t_nodes);
  quadrature::charge_evals(static_cast<long long>(mq.v_nodes) * mq.t_nodes);

  const int c = static_cast<int>(binomial(d_amb, i));
  CMat acc = CMat::Zero(c, c);
  for (std::size_t k = 0; k < vr.x.size(); ++k) {
    const double v = vr.x[k] / (xn * xn);
    const double t_win = 7.0 / std::sqrt(v);
    const double s_win = 5.0 * std::sqrt(v);
    CMat inner = CMat::Zero(c, c);
    for (std::size_t m = 0; m < tr.x.size(); ++m) {
      const double t = t_win * tr.x[m];
      const double wt = t_win * tr.w[m];
      double skernel = 0.0;
      for (std::size_t j = 0; j < sr.x.size(); ++j)
        skernel += s_win * sr.w[j] * std::cos(2.0 * (s_win * sr.x[j]) * t);
      const double damp = std::exp(-v * t * t);
      if (damp * std::abs(skernel) < 1e-300) continue;
      inner += (wt * damp * skernel) *
               exterior::phi_poly(x, t, i).entries.cast<Complex>();
    }
    acc += vr.w[k] * inner;
  }
  const double pref = std::pow(xn, -2.0 * beta) / (kPi * std::exp(std::lgamma(beta)));
  return MOperatorResult{pref * acc, std::move(closed)};
}

MOperatorResult m_operator(const Vec& x, const EmbeddingContext& ctx, const MQuadSpec& mq) {
  return m_operator(x, ctx.lambda, ctx.big.i, mq);
}

quadrature::DirectionWeight m_route_weight(double lambda, int i, int d_ambient,
                                           const MQuadSpec& mq) {
  auto cache = std::make_shared<std::map<std::vector<double>, CMat>>();
  auto mu = std::make_shared<std::mutex>();
  return [lambda, i, d_ambient, mq, cache, mu](const Vec& omega) -> CMat {
    (void)d_ambient;
    std::vector<double> key(omega.data(), omega.data() + omega.size());
    {
      std::lock_guard<std::mutex> lock(*mu);
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
    }
    CMat m = m_operator(omega, lambda, i, mq).quadrature_route;
    std::lock_guard<std::mutex> lock(*mu);
    return cache->emplace(std::move(key), std::move(m)).first->second;
  };
}

IsometryResult isometry_check(const SchwartzVec& phi_small, const EmbeddingContext& ctx,
                              const QuadratureSpec& spec) {
  const int n = ctx.big.n;
  const int i = ctx.big.i;
  const int dp = n - 2;
  if (phi_small.basis.d != dp || phi_small.basis.i != i || phi_small.var_dim() != dp)
    throw std::invalid_argument("isometry_check: test function does not match the context");

  SchwartzVec tilde = include_components(phi_small);
  const int c = tilde.basis.size();
  const double pref = std::pow(kPi, 0.5 * dp);
  std::vector<std::vector<SchwartzFn>> omega(c, std::vector<SchwartzFn>(c));
  for (int t = 0; t < c; ++t)
    for (int s = 0; s < c; ++s) {
      if (tilde.comps[t].is_zero() || tilde.comps[s].is_zero()) {
        omega[t][s] = SchwartzFn::zero(dp);
        continue;
      }
      omega[t][s] = scale(fourier(multiply(conjugate(tilde.comps[t]), tilde.comps[s])),
                          Complex(pref, 0.0));
    }
  auto w = m_route_weight(ctx.lambda, i, n - 1);
  const double big = quadrature::weighted_contraction(omega, w, ctx.lambda, spec).real();

  QuadratureSpec other = spec;
  other.radial_nodes += 6;
  other.angular_order += 3;
  const double small = intertwine::form_Wu(phi_small, phi_small, ctx.small, other).real();
  return IsometryResult{big, small, big / small};
}

BetaIsometryResult unramified_isometry_beta(const SchwartzFn& phi_small,
                                            const EmbeddingContext& ctx,
                                            const QuadratureSpec& spec) {
  if (ctx.big.i != 0)
    throw std::invalid_argument("unramified_isometry_beta: i = 0 only");
  const int n = ctx.big.n;
  const double p = 0.5 * (n - 1) * ctx.big.u;
  const double factor = transverse_factor(p);
  SchwartzFn sq = multiply(phi_small, conjugate(phi_small));
  const double big =
      factor * quadrature::integrate_weighted(sq, (n - 2) * ctx.small.u, spec).real();
  QuadratureSpec other = spec;
  other.radial_nodes += 6;
  other.angular_order += 3;
  const double small = quadrature::weighted_norm(phi_small, ctx.small.u, n - 1, other);
  return BetaIsometryResult{big, small, big / small, transverse_factor_reference(p)};
}

namespace {

// Int_R dt (|y|^2 + t^2)^{-p} f(y, t) for an atom sum f on R^{dim(y)+1}.
//
// Written through (|y|^2+t^2)^{-p} = (1/Gamma(p)) Int v^{p-1} e^{-v(|y|^2+t^2)} dv;
// the t-integral of a 1D Gaussian slice is closed form (complex-center
// moments), the v-integral runs on a log-scale trapezoid grid.  A direct
// rule in t = |y| s develops a boundary layer as |y| -> 0; this route is
// uniform in |y|.
Complex transverse_slice_integral(const SchwartzFn& f, const Vec& y, double p) {
  const int d = f.d;
  const double y2 = y.squaredNorm();
  constexpr double kH = 0.08;
  const double u_lo = -42.0 / std::max(p, 0.1);
  const double u_hi = std::log(60.0 / std::max(y2, 1e-10));
  const int count = static_cast<int>((u_hi - u_lo) / kH) + 1;
  quadrature::charge_evals(static_cast<long long>(count) *
                           static_cast<long long>(std::max<std::size_t>(f.atoms.size(), 1)));

  Complex total(0.0, 0.0);
  std::vector<Complex> qk(schwartz::kDegreeCap + 1);
  std::vector<Complex> mom(schwartz::kDegreeCap + 1);
  for (const auto& atom : f.atoms) {
    const double a = atom.width;
    const double bt = atom.center(d - 1);
    const double ct = atom.modulation(d - 1);
    // y-part of the atom at the slice
    const double quad_y = -a * (y - atom.center.head(d - 1)).squaredNorm();
    const double phase_y = 2.0 * atom.modulation.head(d - 1).dot(y);
    const Complex ay = std::exp(Complex(quad_y, phase_y));
    // t-power coefficients at this y
    int kmax = 0;
    std::fill(qk.begin(), qk.end(), Complex(0.0, 0.0));
    for (const auto& [e, coeff] : atom.poly.terms) {
      double mono = 1.0;
      for (int j = 0; j < d - 1; ++j)
        for (int r = 0; r < e[j]; ++r) mono *= y(j);
      qk[e[d - 1]] += coeff * mono;
      kmax = std::max(kmax, e[d - 1]);
    }
    Complex acc(0.0, 0.0);
    for (int node = 0; node < count; ++node) {
      const double u = u_lo + node * kH;
      const double v = std::exp(u);
      const double w = v + a;
      const Complex mu = Complex(a * bt, ct) / w;
      // Int t^k e^{-w (t-mu)^2} dt = sqrt(pi/w) M_k
      mom[0] = Complex(1.0, 0.0);
      if (kmax >= 1) mom[1] = mu;
      for (int k = 2; k <= kmax; ++k) mom[k] = mu * mom[k - 1] + (k - 1) / (2.0 * w) * mom[k - 2];
      Complex poly_part(0.0, 0.0);
      for (int k = 0; k <= kmax; ++k) poly_part += qk[k] * mom[k];
      const Complex gauss_const = std::exp(w * mu * mu - Complex(a * bt * bt, 0.0));
      const Complex slice = std::sqrt(kPi / w) * gauss_const * poly_part;
      acc += std::exp(p * u - v * y2) * slice;  // v^{p-1} dv = e^{pu} du
    }
    total += ay * acc * kH;
  }
  return total / std::exp(std::lgamma(p));
}

}  // namespace

CVec j_star_apply(const SchwartzVec& f_big, const EmbeddingContext& ctx, const Vec& y,
                  int s_nodes) {
  const int n = ctx.big.n;
  if (f_big.basis.d != n - 1 || f_big.var_dim() != n - 1)
    throw std::invalid_argument("j_star_apply: function does not match the context");
  const double p = 0.5 * (n - 1) * ctx.big.u;
  if (!(p > 0.5)) throw ExponentTooSmall("j_star_apply: (n-1)u <= 1");
  const double ynorm = y.norm();
  CVec val = CVec::Zero(f_big.basis.size());
  if (ynorm < 1e-12) {
    // degenerate slice: integrand is f(y,0) times the pure transverse weight
    val = f_big.eval(append_coord(y, 0.0)) * transverse_factor(p, s_nodes);
  } else {
    for (int t = 0; t < f_big.basis.size(); ++t)
      val(t) = std::pow(ynorm, 2.0 * p - 1.0) *
               transverse_slice_integral(f_big.comps[t], y, p);
  }
  return exterior::restrict_wedge(val, n - 1, ctx.big.i);
}

Complex j_star_scalar(const SchwartzFn& f_big, const EmbeddingContext& ctx, const Vec& y,
                      int s_nodes) {
  const int n = ctx.big.n;
  const double p = 0.5 * (n - 1) * ctx.big.u;
  if (!(p > 0.5)) throw ExponentTooSmall("j_star_scalar: (n-1)u <= 1");
  const double ynorm = y.norm();
  if (ynorm < 1e-12) return f_big.eval(append_coord(y, 0.0)) * transverse_factor(p, s_nodes);
  return std::pow(ynorm, 2.0 * p - 1.0) * transverse_slice_integral(f_big, y, p);
}

PairSides adjoint_pairing(const SchwartzFn& g_small, const SchwartzFn& f_big,
                          const EmbeddingContext& ctx, const QuadratureSpec& spec) {
  const int n = ctx.big.n;
  if (ctx.big.i != 0) throw std::invalid_argument("adjoint_pairing: i = 0 only");
  // lhs: Int |X|^{-(n-1)u} conj(Jg)(X) f(X) dX over R^{n-1}
  auto lhs_fn = [&](const Vec& x) -> Complex {
    return std::conj(g_small.eval(x.head(n - 2))) * f_big.eval(x);
  };
  const double beta_big = 0.6 * min_width(f_big);
  const Complex lhs = quadrature::integrate_weighted_callable(lhs_fn, n - 1, (n - 1) * ctx.big.u,
                                                              beta_big, spec);
  // rhs: Int |y|^{-(n-2)u'} conj(g) (J* f) dy over R^{n-2}
  auto rhs_fn = [&](const Vec& y) -> Complex {
    return std::conj(g_small.eval(y)) * j_star_scalar(f_big, ctx, y);
  };
  const double beta_small = 0.6 * std::min(min_width(g_small), min_width(f_big));
  QuadratureSpec other = spec;
  other.radial_nodes += 6;
  other.angular_order += 3;
  const Complex rhs = quadrature::integrate_weighted_callable(
      rhs_fn, n - 2, (n - 2) * ctx.small.u, beta_small, other);
  return PairSides{lhs, rhs};
}

IdentityCheck adjoint_identity_check(const SchwartzFn& psi, const EmbeddingContext& ctx,
                                     const std::vector<Vec>& samples,
                                     const QuadratureSpec& spec) {
  const int n = ctx.big.n;
  if (ctx.big.i != 0) throw std::invalid_argument("adjoint_identity_check: i = 0 only");
  IdentityCheck out;
  out.max_rel_dev = 0.0;
  const double beta = 0.6 * min_width(psi);
  QuadratureSpec other = spec;
  other.radial_nodes += 6;
  other.angular_order += 3;
  for (const Vec& x : samples) {
    auto lhs_fn = [&](const Vec& y) -> Complex {
      return j_star_scalar(psi, ctx, y) * std::exp(Complex(0.0, -2.0 * x.dot(y)));
    };
    const Complex lhs = quadrature::integrate_weighted_callable(
        lhs_fn, n - 2, (n - 2) * ctx.small.u, beta, spec);
    const Complex rhs = quadrature::integrate_weighted(
        modulate(psi, -append_coord(x, 0.0)), (n - 1) * ctx.big.u, other);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    out.max_rel_dev = std::max(out.max_rel_dev, rel);
  }
  return out;
}

SchwartzVec parabolic_action(const ParabolicGen& gen, const SchwartzVec& f,
                             const CSParams& p, ModelSide side) {
  const int model_dim = p.dim();
  if (f.var_dim() != model_dim)
    throw std::invalid_argument("parabolic_action: model dimension mismatch");
  if (std::holds_alternative<Translation>(gen)) {
    const Vec& y0 = std::get<Translation>(gen).y0;
    return (side == ModelSide::kFourierHat) ? modulate(f, -y0) : translate(f, y0);
  }
  if (std::holds_alternative<RotationGen>(gen)) {
    const Mat& r = std::get<RotationGen>(gen).r;
    const Mat wedge = exterior::wedge_matrix(r, f.basis.i).entries;
    SchwartzVec out = f;
    for (int t = 0; t < f.basis.size(); ++t) {
      SchwartzFn acc = SchwartzFn::zero(model_dim);
      for (int s = 0; s < f.basis.size(); ++s) {
        if (wedge(t, s) == 0.0 || f.comps[s].is_zero()) continue;
        acc = acc + scale(rotate(f.comps[s], r), Complex(wedge(t, s), 0.0));
      }
      out.comps[t] = acc;
    }
    return out;
  }
  const double a = std::get<DilationGen>(gen).a;
  if (a <= 0.0) throw std::invalid_argument("parabolic_action: dilation needs a > 0");
  const double nm1 = p.n - 1;
  SchwartzVec out = f;
  double expo = 0.0;
  double arg = a;
  switch (side) {
    case ModelSide::kPositionU:
      expo = -0.5 * nm1 * (1.0 + p.u);
      break;
    case ModelSide::kPositionMinusU:
      expo = -0.5 * nm1 * (1.0 - p.u);
      break;
    case ModelSide::kFourierHat:
      expo = 0.5 * nm1 * (1.0 - p.u);
      arg = 1.0 / a;  // fhat(a xi)
      break;
  }
  const Complex factor(std::pow(a, expo), 0.0);
  for (auto& comp : out.comps) comp = scale(dilate(comp, arg), factor);
  return out;
}

double j_equivariance_deviation(const SchwartzVec& phi_small, const EmbeddingContext& ctx,
                                const ParabolicGen& gen,
                                const std::vector<std::pair<Vec, double>>& samples) {
  JExtension jphi = j_apply(phi_small);
  SchwartzVec acted = parabolic_action(gen, phi_small, ctx.small, ModelSide::kFourierHat);
  JExtension j_acted = j_apply(acted);

  double dev = 0.0;
  const int i = ctx.big.i;
  const int dbig = ctx.big.dim();
  for (const auto& [y, t] : samples) {
    CVec lhs = j_acted.eval(y, t);
    CVec rhs;
    if (std::holds_alternative<Translation>(gen)) {
      const Vec& y0 = std::get<Translation>(gen).y0;
      rhs = jphi.eval(y, t) * std::exp(Complex(0.0, -2.0 * y0.dot(y)));
    } else if (std::holds_alternative<RotationGen>(gen)) {
      Mat rbig = Mat::Identity(dbig, dbig);
      rbig.topLeftCorner(dbig - 1, dbig - 1) = std::get<RotationGen>(gen).r;
      const Mat wedge = exterior::wedge_matrix(rbig, i).entries;
      Vec point = append_coord(y, t);
      Vec back = rbig.transpose() * point;
      rhs = wedge.cast<Complex>() * jphi.eval_full(back);
    } else {
      const double a = std::get<DilationGen>(gen).a;
      rhs = std::pow(a, 0.5 * ctx.lambda) * jphi.eval(a * y, a * t);
    }
    dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return dev;
}

}  // namespace csembed::embedding
