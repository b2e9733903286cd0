#include "csembed/suites.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "csembed/group.hpp"

namespace csembed::suites {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

// Deterministic per-cell seed derivation.
std::uint64_t cell_seed(std::uint64_t base, std::uint64_t salt) {
  csembed::Rng rng(base ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  return rng.next_u64();
}

template <class F>
void parallel_for(int count, F&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::max(1, std::min<int>(count, static_cast<int>(hw ? hw : 1)));
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int k; (k = next.fetch_add(1)) < count;) {
        try {
          fn(k);
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool quick(const SuiteConfig& cfg) { return cfg.grid == "quick"; }

double tol_or(const SuiteConfig& cfg, double fallback) {
  return cfg.tol.value_or(fallback);
}

std::vector<int> grid_n(const SuiteConfig& cfg, std::vector<int> defaults) {
  if (cfg.n) return {*cfg.n};
  return defaults;
}

std::vector<double> grid_u(const SuiteConfig& cfg, std::vector<double> defaults) {
  if (cfg.u) return {*cfg.u};
  return defaults;
}

struct CtxCell {
  int n;
  int i;
};

std::vector<CtxCell> embedding_ctx_grid(const SuiteConfig& cfg) {
  std::vector<CtxCell> cells;
  for (CtxCell c : {CtxCell{3, 0}, CtxCell{4, 0}, CtxCell{5, 0}, CtxCell{5, 1}}) {
    if (cfg.n && *cfg.n != c.n) continue;
    if (cfg.i && *cfg.i != c.i) continue;
    cells.push_back(c);
  }
  return cells;
}

nlohmann::json base_params(const SuiteConfig& cfg) {
  nlohmann::json p;
  p["seed"] = cfg.seed;
  p["grid"] = cfg.grid;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// test-function families
// ---------------------------------------------------------------------------

SchwartzFn standard_atom(int d, int k) {
  using schwartz::SchwartzFn;
  Vec z = Vec::Zero(d);
  const int j2 = std::min(1, d - 1);  // second axis when it exists
  switch (k % 6) {
    case 0:
      return SchwartzFn::gaussian(d, 1.0);
    case 1: {
      Vec b = Vec::Zero(d);
      b(0) = 0.4;
      return SchwartzFn::gaussian(d, 1.3, b, z);
    }
    case 2: {
      SchwartzFn f = SchwartzFn::gaussian(d, 0.9);
      f.atoms[0].poly = MultiPoly::axis(d, 0);
      return f;
    }
    case 3: {
      Vec c = Vec::Zero(d);
      c(j2) = 0.5;
      return SchwartzFn::gaussian(d, 0.7, z, c);
    }
    case 4: {
      SchwartzFn f = SchwartzFn::gaussian(d, 1.1);
      MultiPoly p = MultiPoly::axis(d, j2) * MultiPoly::axis(d, j2) +
                    MultiPoly::constant(d, Complex(-0.3, 0.0));
      f.atoms[0].poly = p;
      return f;
    }
    default: {
      Vec b = Vec::Zero(d);
      b(0) = -0.3;
      b(j2) += 0.2;
      return SchwartzFn::gaussian(d, 0.8, b, z);
    }
  }
}

std::vector<SchwartzFn> scalar_family(int d, int count) {
  std::vector<SchwartzFn> fam;
  for (int k = 0; k < count; ++k) fam.push_back(standard_atom(d, k));
  return fam;
}

std::vector<SchwartzVec> vector_family(int d_basis, int i, int var_dim, int count) {
  std::vector<SchwartzVec> fam;
  for (int k = 0; k < count; ++k) {
    SchwartzVec v = SchwartzVec::zero(d_basis, i, var_dim);
    const int c = v.basis.size();
    v.comps[k % c] = standard_atom(var_dim, k);
    if (c > 1)
      v.comps[(k + 1) % c] =
          v.comps[(k + 1) % c] + scale(standard_atom(var_dim, (k + 1) % 6), Complex(0.5, 0.0));
    fam.push_back(std::move(v));
  }
  return fam;
}

SchwartzFn random_atom(csembed::Rng& rng, int d) {
  const double a = rng.uniform(0.7, 1.4);
  Vec b = rng.uniform_vec(d, -0.5, 0.5);
  Vec c = rng.uniform_vec(d, -0.5, 0.5);
  SchwartzFn f = SchwartzFn::gaussian(d, a, b, c);
  // occasionally a linear factor
  if (rng.uniform() < 0.5) {
    const int axis = static_cast<int>(rng.uniform(0.0, 1.0) * d) % d;
    MultiPoly p = MultiPoly::constant(d, Complex(1.0, 0.0)) +
                  MultiPoly::axis(d, axis).scaled(Complex(rng.uniform(-0.6, 0.6), 0.0));
    f.atoms[0].poly = p;
  }
  return f;
}

SchwartzVec as_vector(const SchwartzFn& f, int i) {
  SchwartzVec v = SchwartzVec::zero(f.d, i, f.d);
  if (i != 0) throw DegreeOutOfRange("as_vector: scalar wrapper is degree 0");
  v.comps[0] = f;
  return v;
}

quadrature::QuadratureSpec default_spec(int d, int quad_nodes) {
  quadrature::QuadratureSpec spec;
  if (d <= 2) {
    spec.radial_nodes = 40;
    spec.angular_order = 20;
  } else if (d == 3) {
    spec.radial_nodes = 36;
    spec.angular_order = 16;
  } else {
    spec.radial_nodes = 36;
    spec.angular_order = 14;
  }
  if (quad_nodes > 0) {
    spec.angular_order = std::max(6, spec.angular_order * quad_nodes / spec.radial_nodes);
    spec.radial_nodes = quad_nodes;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// group suites
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_bruhat(const SuiteConfig& cfg) {
  namespace g = csembed::group;
  std::vector<CheckReport> out;
  const int draws = quick(cfg) ? 100 : 1000;
  const double tol = tol_or(cfg, 1e-10);
  for (int n : grid_n(cfg, {2, 3, 4, 5, 6})) {
    const auto t0 = Clock::now();
    csembed::Rng rng(cell_seed(cfg.seed, 100 + n));
    double worst = 0.0;
    const Mat w = g::make_w(n).entries;
    for (int k = 0; k < draws; ++k) {
      Vec x = 1.5 * rng.gaussian_vec(n - 1);
      while (x.norm() < 0.05) x = 1.5 * rng.gaussian_vec(n - 1);
      const Mat lhs = w * g::make_u(x).entries * w;
      const Mat rhs = g::bruhat_reconstruct(g::bruhat_decompose(x));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    nlohmann::json p = base_params(cfg);
    p["n"] = n;
    p["draws"] = draws;
    auto r = report::make_check("bruhat", "bruhat-reconstruction", p, Complex(worst, 0.0),
                                Complex(0.0, 0.0), tol);
    r.wall_time_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckReport> suite_iwasawa(const SuiteConfig& cfg) {
  namespace g = csembed::group;
  std::vector<CheckReport> out;
  const int draws = quick(cfg) ? 100 : 1000;
  const double tol = tol_or(cfg, 1e-10);
  for (int n : grid_n(cfg, {2, 3, 4, 5, 6})) {
    const auto t0 = Clock::now();
    csembed::Rng rng(cell_seed(cfg.seed, 200 + n));
    double worst = 0.0;
    const Mat w = g::make_w(n).entries;
    const Mat id = Mat::Identity(n + 1, n + 1);
    for (int k = 0; k < draws; ++k) {
      Vec x = 1.5 * rng.gaussian_vec(n - 1);
      auto f = g::iwasawa_decompose(x);
      const Mat lhs = g::make_u(x).entries * w;
      const Mat rhs = f.k.entries * g::make_d(n, f.a).entries * g::make_u(f.y).entries;
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      worst = std::max(worst, (f.k.entries.transpose() * f.k.entries - id).cwiseAbs().maxCoeff());
      worst = std::max(worst, g::form_defect(n, f.k.entries));
    }
    nlohmann::json p = base_params(cfg);
    p["n"] = n;
    p["draws"] = draws;
    auto r = report::make_check("iwasawa", "iwasawa-reconstruction", p, Complex(worst, 0.0),
                                Complex(0.0, 0.0), tol);
    r.wall_time_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// jacobian of x -> 2x/|x|^2
// ---------------------------------------------------------------------------

namespace {

double annulus_bump(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return std::exp(-1.0 / ((r - 1.0) * (2.0 - r)));
}

}  // namespace

std::vector<CheckReport> suite_jacobian(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-8);
  for (int d : std::vector<int>{2, 3}) {
    if (cfg.n && *cfg.n != d + 1) continue;
    const auto t0 = Clock::now();
    auto angular = [d](const Vec& w) {
      double v = 1.0 + 0.4 * w(0);
      if (d > 1) v += 0.15 * w(1) * w(1);
      return v;
    };
    auto f = [&](const Vec& x) -> Complex {
      const double r = x.norm();
      if (r < 1e-14) return 0.0;
      return annulus_bump(r) * angular(x / r);
    };
    auto f_inverted = [&](const Vec& x) -> Complex {
      const double r = x.norm();
      if (r < 1e-14) return 0.0;
      return annulus_bump(2.0 / r) * angular(x / r);
    };
    quadrature::QuadratureSpec spec = default_spec(d, cfg.quad_nodes);
    spec.radial_nodes = std::max(spec.radial_nodes, 48);
    // both supported on 1 < r < 2
    const Complex lhs = quadrature::integrate_annulus_callable(f_inverted, d, 0.0, 1.0, 2.0, spec);
    auto weighted = [&](const Vec& x) -> Complex {
      return f(x) * std::pow(0.5 * x.squaredNorm(), -double(d));
    };
    quadrature::QuadratureSpec spec2 = spec;
    spec2.radial_nodes += 9;
    spec2.angular_order += 3;
    const Complex rhs = quadrature::integrate_annulus_callable(weighted, d, 0.0, 1.0, 2.0, spec2);

    // 1D radial oracle times the exact angular mass
    const auto& ang = quadrature::sphere_scheme(d, spec.angular_order + 7);
    double ang_mass = 0.0;
    for (std::size_t j = 0; j < ang.nodes.size(); ++j)
      ang_mass += ang.weights[j] * angular(ang.nodes[j]);
    const auto& gl = quadrature::gauss_legendre(40);
    double rad_lhs = 0.0, rad_rhs = 0.0;
    const int panels = 8;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double lo = 1.0 + pnl / double(panels);
      const double hi = 1.0 + (pnl + 1) / double(panels);
      const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
      for (std::size_t k = 0; k < gl.x.size(); ++k) {
        const double r = mid + hw * gl.x[k];
        rad_lhs += hw * gl.w[k] * annulus_bump(2.0 / r) * std::pow(r, d - 1);
        rad_rhs += hw * gl.w[k] * annulus_bump(r) * std::pow(0.5 * r * r, -double(d)) *
                   std::pow(r, d - 1);
      }
    }
    nlohmann::json p = base_params(cfg);
    p["d"] = d;
    auto r1 = report::make_check("jacobian", "reciprocal-jacobian", p, lhs, rhs, tol);
    r1.wall_time_ms = ms_since(t0);
    out.push_back(std::move(r1));
    auto r2 = report::make_check("jacobian", "reciprocal-jacobian-radial-oracle", p, lhs,
                                 Complex(ang_mass * rad_lhs, 0.0), tol);
    out.push_back(std::move(r2));
    auto r3 = report::make_check("jacobian", "reciprocal-jacobian-radial-oracle", p, rhs,
                                 Complex(ang_mass * rad_rhs, 0.0), tol);
    out.push_back(std::move(r3));
  }
  return out;
}

// ---------------------------------------------------------------------------
// functional equation
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_functional_eq(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-6);
  const int atom_count = quick(cfg) ? 3 : 10;
  struct Cell {
    int n;
    double s;
  };
  std::vector<Cell> cells;
  for (int n : grid_n(cfg, {3, 4, 5})) {
    std::vector<double> svals;
    if (cfg.s) {
      svals = {*cfg.s};
    } else {
      const int s_count = quick(cfg) ? 2 : 5;
      for (int j = 1; j <= s_count; ++j)
        svals.push_back(0.5 * (n - 1) * j / (s_count + 1.0));
    }
    for (double s : svals) cells.push_back({n, s});
  }
  std::vector<CheckReport> results(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const auto t0 = Clock::now();
    const auto [n, s] = cells[static_cast<std::size_t>(k)];
    quadrature::QuadratureSpec spec = default_spec(n - 1, cfg.quad_nodes);
    csembed::Rng rng(cell_seed(cfg.seed, 300 + 17 * n));
    double worst = 0.0;
    Complex worst_lhs(0, 0), worst_rhs(1, 0);
    for (int a = 0; a < atom_count; ++a) {
      SchwartzFn f = random_atom(rng, n - 1);
      auto [lhs, rhs] = intertwine::functional_equation(f, Complex(s, 0.0), n, spec);
      const double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
      if (rel > worst) {
        worst = rel;
        worst_lhs = lhs;
        worst_rhs = rhs;
      }
    }
    nlohmann::json p = base_params(cfg);
    p["n"] = n;
    p["s"] = s;
    p["atoms"] = atom_count;
    auto r = report::make_check("functional-eq", "gamma-functional-equation", p, worst_lhs,
                                worst_rhs, tol);
    r.wall_time_ms = ms_since(t0);
    results[static_cast<std::size_t>(k)] = std::move(r);
  });
  out.insert(out.end(), results.begin(), results.end());

  // self-dual Gaussian closed form at n = 3, s = 1/2: both sides pi^2
  if (!cfg.n || *cfg.n == 3) {
    quadrature::QuadratureSpec spec = default_spec(2, cfg.quad_nodes);
    auto [lhs, rhs] =
        intertwine::functional_equation(SchwartzFn::gaussian(2, 1.0), Complex(0.5, 0.0), 3, spec);
    nlohmann::json p = base_params(cfg);
    p["n"] = 3;
    p["s"] = 0.5;
    const double pi2 = 9.869604401089358;  // pi^2
    out.push_back(report::make_check("functional-eq", "gamma-functional-equation-selfdual", p,
                                     lhs, Complex(pi2, 0.0), 1e-8));
    out.push_back(report::make_check("functional-eq", "gamma-functional-equation-selfdual", p,
                                     rhs, Complex(pi2, 0.0), 1e-8));
  }
  return out;
}

// ---------------------------------------------------------------------------
// unramified norm identity
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_unramified_norm(const SuiteConfig& cfg) {
  struct Cell {
    int n;
    double u;
  };
  std::vector<Cell> cells;
  for (int n : grid_n(cfg, {3, 4, 5}))
    for (double u : grid_u(cfg, {0.3, 0.5, 0.7})) cells.push_back({n, u});
  if (quick(cfg) && !cfg.n && !cfg.u) cells = {{3, 0.5}, {4, 0.3}};
  const double tol = tol_or(cfg, 1e-3);
  const int fam_count = 5;

  std::vector<std::vector<CheckReport>> results(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const auto t0 = Clock::now();
    const auto [n, u] = cells[static_cast<std::size_t>(k)];
    const int d = n - 1;
    intertwine::CSParams p(n, 0, u);
    quadrature::QuadratureSpec spec = default_spec(d, cfg.quad_nodes);
    quadrature::QuadratureSpec norm_spec = spec;
    norm_spec.radial_nodes += 6;
    norm_spec.angular_order += 3;
    auto family = scalar_family(d, fam_count);
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (const auto& f : family) {
      SchwartzVec fv = as_vector(f);
      const double pairing = intertwine::pairing_bruhat(fv, fv, p, spec).real();
      const double norm = quadrature::weighted_norm(fourier(f), u, n, norm_spec);
      const double ratio = pairing / norm;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      sum += ratio;
    }
    const double c_numeric = intertwine::derive_c_numeric(u, n, norm_spec);
    const double c_gamma = intertwine::c_gamma_reference(u, n);
    nlohmann::json jp = base_params(cfg);
    jp["n"] = n;
    jp["u"] = u;
    jp["family"] = fam_count;
    auto r1 = report::make_check("unramified-norm", "unramified-norm-ratio-constancy", jp,
                                 Complex(hi, 0.0), Complex(lo, 0.0), tol);
    r1.wall_time_ms = ms_since(t0);
    auto r2 = report::make_check("unramified-norm", "unramified-norm-constant-match", jp,
                                 Complex(sum / fam_count, 0.0), Complex(c_numeric, 0.0), tol);
    auto r3 = report::make_check("unramified-norm", "derived-constant-gamma-reference", jp,
                                 Complex(c_numeric, 0.0), Complex(c_gamma, 0.0), 1e-5);
    results[static_cast<std::size_t>(k)] = {std::move(r1), std::move(r2), std::move(r3)};
  });
  std::vector<CheckReport> out;
  for (auto& group : results) out.insert(out.end(), group.begin(), group.end());
  return out;
}

// ---------------------------------------------------------------------------
// form positivity
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_form_positivity(const SuiteConfig& cfg) {
  struct Cell {
    int n;
    int i;
    double u;
  };
  std::vector<Cell> cells;
  for (CtxCell c : {CtxCell{3, 0}, CtxCell{4, 0}, CtxCell{4, 1}, CtxCell{5, 0}, CtxCell{5, 1}}) {
    if (cfg.n && *cfg.n != c.n) continue;
    if (cfg.i && *cfg.i != c.i) continue;
    const double hi = 1.0 - 2.0 * c.i / (c.n - 1.0);
    std::vector<double> us = cfg.u ? std::vector<double>{*cfg.u}
                                   : std::vector<double>{0.25 * hi, 0.55 * hi, 0.85 * hi};
    if (quick(cfg) && !cfg.u) us = {0.55 * hi};
    for (double u : us) cells.push_back({c.n, c.i, u});
  }
  std::vector<CheckReport> results(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const auto t0 = Clock::now();
    const auto [n, i, u] = cells[static_cast<std::size_t>(k)];
    const int d = n - 1;
    intertwine::CSParams p(n, i, u);
    quadrature::QuadratureSpec spec = default_spec(d, cfg.quad_nodes);
    auto family = vector_family(d, i, d, 6);
    CMat gram = intertwine::form_gram(family, p, spec);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (gram + gram.adjoint()));
    const double min_eig = es.eigenvalues().minCoeff();
    const double max_eig = es.eigenvalues().maxCoeff();
    nlohmann::json jp = base_params(cfg);
    jp["n"] = n;
    jp["i"] = i;
    jp["u"] = u;
    jp["min_eig"] = min_eig;
    jp["max_eig"] = max_eig;
    auto r = report::make_threshold_check("form-positivity", "form-gram-positivity", jp, min_eig,
                                          1e-10 * max_eig);
    r.wall_time_ms = ms_since(t0);
    results[static_cast<std::size_t>(k)] = std::move(r);
  });
  return results;
}

// ---------------------------------------------------------------------------
// transverse kernel operator
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_m_operator(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-4);
  const int draws = quick(cfg) ? 8 : 50;
  for (CtxCell c : embedding_ctx_grid(cfg)) {
    const auto t0 = Clock::now();
    const double lo = 1.0 / (c.n - 1.0);
    const double hi = 1.0 - 2.0 * c.i / (c.n - 1.0);
    const double u = cfg.u.value_or(0.5 * (lo + hi));
    embedding::EmbeddingContext ctx(c.n, c.i, u);
    csembed::Rng rng(cell_seed(cfg.seed, 700 + 31 * c.n + c.i));
    double worst = 0.0;
    for (int k = 0; k < draws; ++k) {
      Vec x = rng.gaussian_vec(c.n - 2);
      const double nrm = x.norm();
      const double target = rng.uniform(0.3, 3.0);
      if (nrm < 1e-9) {
        x = Vec::Ones(c.n - 2);
        x *= target / x.norm();
      } else {
        x *= target / nrm;
      }
      auto res = embedding::m_operator(x, ctx);
      const double scale = res.closed_form.cwiseAbs().maxCoeff();
      const double dev =
          (res.quadrature_route - res.closed_form.cast<Complex>()).cwiseAbs().maxCoeff();
      worst = std::max(worst, dev / scale);
    }
    nlohmann::json p = base_params(cfg);
    p["n"] = c.n;
    p["i"] = c.i;
    p["u"] = u;
    p["draws"] = draws;
    auto r = report::make_check("m-operator", "transverse-kernel-closed-form", p,
                                Complex(worst, 0.0), Complex(0.0, 0.0), tol);
    r.wall_time_ms = ms_since(t0);
    out.push_back(std::move(r));

    // homogeneity |x| -> 2|x| scales the closed form by 2^{-lambda}
    Vec x0 = Vec::Ones(c.n - 2);
    x0 *= 0.8 / x0.norm();
    auto m1 = embedding::m_operator(x0, ctx);
    auto m2 = embedding::m_operator(Vec(2.0 * x0), ctx);
    const double ratio = std::pow(2.0, -ctx.lambda);
    const double dev =
        (m2.quadrature_route - ratio * m1.quadrature_route).cwiseAbs().maxCoeff() /
        m1.closed_form.cwiseAbs().maxCoeff() / ratio;
    nlohmann::json hp = base_params(cfg);
    hp["n"] = c.n;
    hp["i"] = c.i;
    hp["u"] = u;
    out.push_back(report::make_check("m-operator", "transverse-kernel-homogeneity", hp,
                                     Complex(dev, 0.0), Complex(0.0, 0.0), tol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// isometry
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_isometry(const SuiteConfig& cfg) {
  struct Cell {
    int n;
    int i;
    double u;
  };
  std::vector<Cell> cells;
  for (CtxCell c : embedding_ctx_grid(cfg)) {
    const double lo = 1.0 / (c.n - 1.0);
    const double hi = 1.0 - 2.0 * c.i / (c.n - 1.0);
    const double w = hi - lo;
    std::vector<double> us = cfg.u ? std::vector<double>{*cfg.u}
                                   : std::vector<double>{lo + 0.2 * w, lo + 0.5 * w, lo + 0.8 * w};
    if (quick(cfg) && !cfg.u) us = {lo + 0.5 * w};
    for (double u : us) cells.push_back({c.n, c.i, u});
  }
  const double tol = tol_or(cfg, 1e-3);
  std::vector<std::vector<CheckReport>> results(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const auto t0 = Clock::now();
    const auto [n, i, u] = cells[static_cast<std::size_t>(k)];
    embedding::EmbeddingContext ctx(n, i, u);
    const int dp = n - 2;
    quadrature::QuadratureSpec spec = default_spec(dp, cfg.quad_nodes);
    auto family = vector_family(dp, i, dp, 6);
    double lo_r = 1e300, hi_r = -1e300;
    for (const auto& phi : family) {
      auto res = embedding::isometry_check(phi, ctx, spec);
      lo_r = std::min(lo_r, res.ratio);
      hi_r = std::max(hi_r, res.ratio);
    }
    nlohmann::json jp = base_params(cfg);
    jp["n"] = n;
    jp["i"] = i;
    jp["u"] = u;
    jp["family"] = 6;
    auto r1 = report::make_check("isometry", "embedding-isometry-ratio-constancy", jp,
                                 Complex(hi_r, 0.0), Complex(lo_r, 0.0), tol);
    r1.wall_time_ms = ms_since(t0);
    std::vector<CheckReport> local{std::move(r1)};
    if (i == 0) {
      auto beta = embedding::unramified_isometry_beta(standard_atom(dp, 0), ctx, spec);
      auto r2 = report::make_check("isometry", "embedding-isometry-transverse-beta", jp,
                                   Complex(beta.ratio, 0.0), Complex(beta.reference, 0.0),
                                   cfg.tol.value_or(1e-4));
      local.push_back(std::move(r2));
    }
    results[static_cast<std::size_t>(k)] = std::move(local);
  });
  std::vector<CheckReport> out;
  for (auto& group : results) out.insert(out.end(), group.begin(), group.end());
  return out;
}

// ---------------------------------------------------------------------------
// adjoint pairing and restriction identity
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<int, double>> adjoint_grid(const SuiteConfig& cfg) {
  std::vector<std::pair<int, double>> grid;
  for (int n : {3, 4}) {
    if (cfg.n && *cfg.n != n) continue;
    std::vector<double> us;
    if (cfg.u) {
      us = {*cfg.u};
    } else if (n == 3) {
      us = {0.6, 0.8};
    } else {
      us = {0.5, 0.7};
    }
    if (quick(cfg) && !cfg.u) us.resize(1);
    for (double u : us) grid.emplace_back(n, u);
  }
  return grid;
}

}  // namespace

std::vector<CheckReport> suite_adjoint(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-3);
  for (auto [n, u] : adjoint_grid(cfg)) {
    const auto t0 = Clock::now();
    embedding::EmbeddingContext ctx(n, 0, u);
    quadrature::QuadratureSpec spec = default_spec(n - 1, cfg.quad_nodes);
    auto small_fam = scalar_family(n - 2, 4);
    auto big_fam = scalar_family(n - 1, 4);
    for (int k = 0; k < 3; ++k) {
      auto sides = embedding::adjoint_pairing(small_fam[k], big_fam[k + 1], ctx, spec);
      nlohmann::json p = base_params(cfg);
      p["n"] = n;
      p["u"] = u;
      p["pair"] = k;
      auto r = report::make_check("adjoint", "embedding-adjointness", p, sides.lhs, sides.rhs, tol);
      r.wall_time_ms = ms_since(t0);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<CheckReport> suite_adjoint_identity(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-3);
  for (auto [n, u] : adjoint_grid(cfg)) {
    const auto t0 = Clock::now();
    embedding::EmbeddingContext ctx(n, 0, u);
    quadrature::QuadratureSpec spec = default_spec(n - 2, cfg.quad_nodes);
    csembed::Rng rng(cell_seed(cfg.seed, 900 + n));
    std::vector<Vec> samples;
    for (int k = 0; k < 10; ++k) samples.push_back(rng.uniform_vec(n - 2, -1.0, 1.0));
    SchwartzFn psi = standard_atom(n - 1, 0) + scale(standard_atom(n - 1, 1), Complex(0.7, 0.0));
    auto res = embedding::adjoint_identity_check(psi, ctx, samples, spec);
    nlohmann::json p = base_params(cfg);
    p["n"] = n;
    p["u"] = u;
    p["samples"] = 10;
    auto r = report::make_check("adjoint-identity", "adjoint-restriction-identity", p,
                                Complex(res.max_rel_dev, 0.0), Complex(0.0, 0.0), tol);
    r.wall_time_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// parabolic equivariance of J
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_equivariance(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double tol = tol_or(cfg, 1e-6);
  for (CtxCell c : embedding_ctx_grid(cfg)) {
    const auto t0 = Clock::now();
    const double lo = 1.0 / (c.n - 1.0);
    const double hi = 1.0 - 2.0 * c.i / (c.n - 1.0);
    const double u = cfg.u.value_or(0.5 * (lo + hi));
    embedding::EmbeddingContext ctx(c.n, c.i, u);
    const int dp = c.n - 2;
    auto family = vector_family(dp, c.i, dp, 2);
    csembed::Rng rng(cell_seed(cfg.seed, 1100 + 7 * c.n + c.i));
    std::vector<std::pair<Vec, double>> samples;
    for (int k = 0; k < 20; ++k)
      samples.emplace_back(rng.uniform_vec(dp, -1.5, 1.5), rng.uniform(-1.5, 1.5));

    std::vector<std::pair<std::string, embedding::ParabolicGen>> gens;
    Vec y0 = 0.3 * Vec::Ones(dp);
    gens.emplace_back("translation", embedding::Translation{y0});
    if (dp >= 2) {
      Mat rot = Mat::Identity(dp, dp);
      const double th = 0.7;
      rot(0, 0) = std::cos(th);
      rot(0, 1) = -std::sin(th);
      rot(1, 0) = std::sin(th);
      rot(1, 1) = std::cos(th);
      gens.emplace_back("rotation", embedding::RotationGen{rot});
    }
    gens.emplace_back("dilation", embedding::DilationGen{1.7});

    for (const auto& [name, gen] : gens) {
      double dev = 0.0;
      for (const auto& phi : family)
        dev = std::max(dev, embedding::j_equivariance_deviation(phi, ctx, gen, samples));
      nlohmann::json p = base_params(cfg);
      p["n"] = c.n;
      p["i"] = c.i;
      p["u"] = u;
      p["generator"] = name;
      auto r = report::make_check("equivariance", "parabolic-equivariance", p, Complex(dev, 0.0),
                                  Complex(0.0, 0.0), tol);
      r.wall_time_ms = ms_since(t0);
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// descent chains
// ---------------------------------------------------------------------------

std::vector<CheckReport> suite_chain(const SuiteConfig& cfg, std::string* csv_table) {
  namespace pr = csembed::params;
  std::vector<CheckReport> out;
  const auto t0 = Clock::now();

  // boundary compatibility u* = 1 - 2i/(m-1) -> 1 - 2i/(m-2), exact
  double worst = 0.0;
  for (int m = 4; m <= 8; ++m)
    for (int i = 0; i <= m / 2 - 1; ++i) {
      const double ustar = 1.0 - 2.0 * i / (m - 1.0);
      const double mapped = pr::descend_map(m, ustar);
      const double expect = 1.0 - 2.0 * i / (m - 2.0);
      worst = std::max(worst, std::abs(mapped - expect));
    }
  nlohmann::json p0 = base_params(cfg);
  auto r1 = report::make_check("chain", "descent-boundary-compatibility", p0,
                               Complex(worst, 0.0), Complex(0.0, 0.0), tol_or(cfg, 1e-14));
  r1.wall_time_ms = ms_since(t0);
  out.push_back(std::move(r1));

  // invariant (m-1)(1-u) = (m-2)(1-u') along random descents
  csembed::Rng rng(cell_seed(cfg.seed, 1300));
  double worst_rel = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int m = 4 + static_cast<int>(rng.uniform(0.0, 4.999));
    const double u = rng.uniform(0.05, 0.95);
    const double up = pr::descend_map(m, u);
    worst_rel = std::max(worst_rel, std::abs((m - 1) * (1 - u) - (m - 2) * (1 - up)));
  }
  out.push_back(report::make_check("chain", "descent-lambda-invariant", p0,
                                   Complex(worst_rel, 0.0), Complex(0.0, 0.0), 1e-13));

  // termination at i = [m/2]
  const int cn = cfg.n.value_or(6);
  const int ci = cfg.i.value_or(2);
  const double cu = cfg.u.value_or(0.19);
  auto steps = pr::chain(cn, ci, cu);
  const auto& last = steps.back();
  const bool terminated =
      last.tempered || last.status != pr::StepStatus::kValid || last.m == 2;
  nlohmann::json pc = base_params(cfg);
  pc["n"] = cn;
  pc["i"] = ci;
  pc["u"] = cu;
  pc["steps"] = steps.size();
  pc["final_m"] = last.m;
  out.push_back(report::make_threshold_check("chain", "descent-termination", pc,
                                             terminated ? 1.0 : 0.0, 0.5));

  if (csv_table) {
    std::ostringstream csv;
    csv << "step,m,i,u,window_lo,window_hi,tempered,status\n";
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const auto& s = steps[k];
      const double wlo = 1.0 / (s.m - 1.0);
      const double whi = 1.0 - 2.0 * s.i / (s.m - 1.0);
      const char* status = "valid";
      switch (s.status) {
        case pr::StepStatus::kValid: status = "valid"; break;
        case pr::StepStatus::kTempered: status = "tempered"; break;
        case pr::StepStatus::kDegreeBottom: status = "degree-bottom"; break;
        case pr::StepStatus::kWindowExit: status = "window-exit"; break;
      }
      csv << k << ',' << s.m << ',' << s.i << ',' << std::setprecision(17) << s.u << ',' << wlo
          << ',' << whi << ',' << (s.tempered ? 1 : 0) << ',' << status << '\n';
    }
    *csv_table = csv.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// runner
// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"bruhat",     "iwasawa",         "jacobian",        "functional-eq",
          "unramified-norm", "form-positivity", "m-operator",      "isometry",
          "adjoint",    "adjoint-identity", "equivariance",    "chain",
          "all"};
}

bool known_suite(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

namespace {

std::vector<CheckReport> dispatch(const SuiteConfig& cfg, const std::string& suite,
                                  std::string* csv_table) {
  if (suite == "bruhat") return suite_bruhat(cfg);
  if (suite == "iwasawa") return suite_iwasawa(cfg);
  if (suite == "jacobian") return suite_jacobian(cfg);
  if (suite == "functional-eq") return suite_functional_eq(cfg);
  if (suite == "unramified-norm") return suite_unramified_norm(cfg);
  if (suite == "form-positivity") return suite_form_positivity(cfg);
  if (suite == "m-operator") return suite_m_operator(cfg);
  if (suite == "isometry") return suite_isometry(cfg);
  if (suite == "adjoint") return suite_adjoint(cfg);
  if (suite == "adjoint-identity") return suite_adjoint_identity(cfg);
  if (suite == "equivariance") return suite_equivariance(cfg);
  if (suite == "chain") return suite_chain(cfg, csv_table);
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace

int run_suite(const SuiteConfig& cfg, std::ostream& reports, std::ostream& summary) {
  if (!known_suite(cfg.suite)) {
    summary << "unknown suite: " << cfg.suite << "\n";
    return 2;
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    summary << "unknown format: " << cfg.format << "\n";
    return 2;
  }
  if (cfg.format == "csv" && cfg.suite != "chain") {
    summary << "csv format is only available for the chain suite\n";
    return 2;
  }
  if (const char* budget = std::getenv("CS_EMBED_QUAD_BUDGET")) {
    char* end = nullptr;
    const long long cap = std::strtoll(budget, &end, 10);
    quadrature::set_eval_budget(cap);
  }
  quadrature::reset_eval_count();

  std::vector<std::string> suites;
  if (cfg.suite == "all") {
    suites = suite_names();
    suites.pop_back();  // drop "all"
  } else {
    suites = {cfg.suite};
  }

  int failures = 0;
  for (const auto& name : suites) {
    std::string csv;
    std::vector<CheckReport> checks;
    try {
      checks = dispatch(cfg, name, &csv);
    } catch (const QuadratureBudgetExceeded& e) {
      summary << "[ABORT] " << name << ": " << e.what() << "\n";
      return 1;
    }
    if (cfg.format == "csv" && name == "chain") {
      reports << csv;
    } else {
      for (const auto& c : checks) reports << report::to_json_line(c, cfg.timings) << "\n";
    }
    for (const auto& c : checks) {
      if (!c.pass) ++failures;
      summary << (c.pass ? "[PASS] " : "[FAIL] ") << name << " " << c.identity
              << " rel_err=" << c.rel_err << " tol=" << c.tol << "\n";
    }
  }
  summary << (failures == 0 ? "all checks passed" : "FAILURES: " + std::to_string(failures))
          << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace csembed::suites
