#include "csembed/atom.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace csembed::schwartz {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// Coefficients of Q_k with D^k e^{-v^2/a} = Q_k(v) e^{-v^2/a}.
std::vector<std::vector<Complex>> derivative_polys(int kmax, double a) {
  std::vector<std::vector<Complex>> q(kmax + 1);
  q[0] = {Complex(1.0, 0.0)};
  for (int k = 0; k < kmax; ++k) {
    const auto& cur = q[k];
    std::vector<Complex> next(cur.size() + 1, Complex(0.0, 0.0));
    for (std::size_t m = 1; m < cur.size(); ++m) next[m - 1] += double(m) * cur[m];
    for (std::size_t m = 0; m < cur.size(); ++m) next[m + 1] -= (2.0 / a) * cur[m];
    q[k + 1] = std::move(next);
  }
  return q;
}

MultiPoly poly_of_axis_coeffs(int d, int axis, const std::vector<Complex>& coeffs) {
  MultiPoly p = MultiPoly::zero(d);
  std::vector<int> e(d, 0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] == Complex(0.0, 0.0)) continue;
    e[axis] = static_cast<int>(m);
    p.add_term(e, coeffs[m]);
  }
  return p;
}

void check_dims(const SchwartzFn& f, const SchwartzFn& g, const char* who) {
  if (f.d != g.d) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

GaussianAtom::GaussianAtom(int d_, double width_, Vec center_, Vec modulation_, MultiPoly poly_)
    : d(d_), width(width_), center(std::move(center_)), modulation(std::move(modulation_)),
      poly(std::move(poly_)) {
  if (width <= 0.0) throw std::invalid_argument("GaussianAtom: width must be positive");
  if (center.size() != d || modulation.size() != d || poly.d != d)
    throw std::invalid_argument("GaussianAtom: dimension mismatch");
  if (poly.total_degree() > kDegreeCap)
    throw DegreeCapExceeded("GaussianAtom: polynomial degree above cap");
}

Complex GaussianAtom::eval(const Vec& x) const {
  const double quad = -width * (x - center).squaredNorm();
  const double phase = 2.0 * modulation.dot(x);
  return poly.eval(x) * std::exp(Complex(quad, phase));
}

SchwartzFn SchwartzFn::zero(int d) {
  SchwartzFn f;
  f.d = d;
  return f;
}

SchwartzFn SchwartzFn::gaussian(int d, double a, const Vec& b, const Vec& c) {
  SchwartzFn f = zero(d);
  f.atoms.emplace_back(d, a, b, c, MultiPoly::constant(d, Complex(1.0, 0.0)));
  return f;
}

SchwartzFn SchwartzFn::gaussian(int d, double a) {
  return gaussian(d, a, Vec::Zero(d), Vec::Zero(d));
}

Complex SchwartzFn::eval(const Vec& x) const {
  Complex acc(0.0, 0.0);
  for (const auto& atom : atoms) acc += atom.eval(x);
  return acc;
}

void SchwartzFn::compress(double eps) {
  std::vector<GaussianAtom> kept;
  for (auto& a : atoms) {
    a.poly.prune(eps);
    if (!a.poly.is_zero()) kept.push_back(std::move(a));
  }
  atoms = std::move(kept);
}

SchwartzFn operator+(const SchwartzFn& f, const SchwartzFn& g) {
  check_dims(f, g, "operator+");
  SchwartzFn r = f;
  r.atoms.insert(r.atoms.end(), g.atoms.begin(), g.atoms.end());
  return r;
}

SchwartzFn scale(const SchwartzFn& f, Complex c) {
  SchwartzFn r = SchwartzFn::zero(f.d);
  if (c == Complex(0.0, 0.0)) return r;
  for (const auto& a : f.atoms)
    r.atoms.emplace_back(a.d, a.width, a.center, a.modulation, a.poly.scaled(c));
  return r;
}

SchwartzFn multiply(const SchwartzFn& f, const SchwartzFn& g) {
  check_dims(f, g, "multiply");
  SchwartzFn r = SchwartzFn::zero(f.d);
  for (const auto& p : f.atoms)
    for (const auto& q : g.atoms) {
      const double a = p.width + q.width;
      const Vec center = (p.width * p.center + q.width * q.center) / a;
      const double drop = -(p.width * q.width / a) * (p.center - q.center).squaredNorm();
      MultiPoly poly = (p.poly * q.poly).scaled(Complex(std::exp(drop), 0.0));
      if (poly.total_degree() > kDegreeCap)
        throw DegreeCapExceeded("multiply: degree cap exceeded");
      if (poly.is_zero()) continue;
      r.atoms.emplace_back(f.d, a, center, p.modulation + q.modulation, std::move(poly));
    }
  return r;
}

SchwartzFn conjugate(const SchwartzFn& f) {
  SchwartzFn r = SchwartzFn::zero(f.d);
  for (const auto& a : f.atoms)
    r.atoms.emplace_back(a.d, a.width, a.center, Vec(-a.modulation), a.poly.conjugated());
  return r;
}

SchwartzFn fourier(const SchwartzFn& f) {
  const int d = f.d;
  SchwartzFn r = SchwartzFn::zero(d);
  for (const auto& atom : f.atoms) {
    const double a = atom.width;
    // p(b + xi) as a polynomial in xi
    MultiPoly ptil = atom.poly.shifted(atom.center);
    const auto q = derivative_polys(ptil.total_degree(), a);
    MultiPoly acc = MultiPoly::zero(d);
    const Complex half_i(0.0, 0.5);
    for (const auto& [e, coeff] : ptil.terms) {
      int total = 0;
      MultiPoly term = MultiPoly::constant(d, coeff);
      for (int j = 0; j < d; ++j) {
        if (e[j] == 0) continue;
        total += e[j];
        term = term * poly_of_axis_coeffs(d, j, q[e[j]]);
      }
      Complex pre(1.0, 0.0);
      for (int k = 0; k < total; ++k) pre *= half_i;
      acc += term.scaled(pre);
    }
    // v = y - c
    MultiPoly poly_y = acc.shifted(-atom.modulation);
    const Complex overall =
        std::pow(a, -0.5 * d) * std::exp(Complex(0.0, 2.0 * atom.center.dot(atom.modulation)));
    poly_y = poly_y.scaled(overall);
    if (poly_y.is_zero()) continue;
    r.atoms.emplace_back(d, 1.0 / a, atom.modulation, Vec(-atom.center), std::move(poly_y));
  }
  return r;
}

SchwartzFn autocorrelation_transform(const SchwartzFn& f) {
  SchwartzFn fhat = fourier(f);
  return multiply(fhat, conjugate(fhat));
}

SchwartzFn translate(const SchwartzFn& f, const Vec& s) {
  SchwartzFn r = SchwartzFn::zero(f.d);
  for (const auto& a : f.atoms) {
    const Complex phase = std::exp(Complex(0.0, -2.0 * a.modulation.dot(s)));
    r.atoms.emplace_back(a.d, a.width, Vec(a.center + s), a.modulation,
                         a.poly.shifted(-s).scaled(phase));
  }
  return r;
}

SchwartzFn modulate(const SchwartzFn& f, const Vec& m) {
  SchwartzFn r = SchwartzFn::zero(f.d);
  for (const auto& a : f.atoms)
    r.atoms.emplace_back(a.d, a.width, a.center, Vec(a.modulation + m), a.poly);
  return r;
}

SchwartzFn dilate(const SchwartzFn& f, double t) {
  if (t <= 0.0) throw std::invalid_argument("dilate: need t > 0");
  SchwartzFn r = SchwartzFn::zero(f.d);
  const Mat b = Mat::Identity(f.d, f.d) / t;
  for (const auto& a : f.atoms)
    r.atoms.emplace_back(a.d, a.width / (t * t), Vec(t * a.center), Vec(a.modulation / t),
                         a.poly.linear_composed(b));
  return r;
}

SchwartzFn rotate(const SchwartzFn& f, const Mat& rot) {
  if ((rot.transpose() * rot - Mat::Identity(f.d, f.d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("rotate: matrix not orthogonal");
  SchwartzFn r = SchwartzFn::zero(f.d);
  const Mat rinv = rot.transpose();
  for (const auto& a : f.atoms)
    r.atoms.emplace_back(a.d, a.width, Vec(rot * a.center), Vec(rot * a.modulation),
                         a.poly.linear_composed(rinv));
  return r;
}

SchwartzFn flip(const SchwartzFn& f) {
  return rotate(f, -Mat::Identity(f.d, f.d));
}

Complex integral_closed(const SchwartzFn& f) {
  return std::pow(kPi, 0.5 * f.d) * fourier(f).eval(Vec::Zero(f.d));
}

Complex l2_inner_closed(const SchwartzFn& f, const SchwartzFn& g) {
  return integral_closed(multiply(conjugate(f), g));
}

SchwartzVec SchwartzVec::zero(int d_ambient, int degree, int var_dim) {
  SchwartzVec v;
  v.basis = exterior::SubsetBasis::make(d_ambient, degree);
  v.comps.assign(v.basis.size(), SchwartzFn::zero(var_dim));
  return v;
}

CVec SchwartzVec::eval(const Vec& x) const {
  CVec out(static_cast<int>(comps.size()));
  for (std::size_t k = 0; k < comps.size(); ++k) out(static_cast<int>(k)) = comps[k].eval(x);
  return out;
}

SchwartzVec operator+(const SchwartzVec& f, const SchwartzVec& g) {
  if (!(f.basis == g.basis)) throw std::invalid_argument("SchwartzVec+: basis mismatch");
  SchwartzVec r = f;
  for (std::size_t k = 0; k < r.comps.size(); ++k) r.comps[k] = r.comps[k] + g.comps[k];
  return r;
}

SchwartzVec scale(const SchwartzVec& f, Complex c) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = scale(comp, c);
  return r;
}

SchwartzVec fourier(const SchwartzVec& f) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = fourier(comp);
  return r;
}

SchwartzVec conjugate(const SchwartzVec& f) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = conjugate(comp);
  return r;
}

SchwartzVec translate(const SchwartzVec& f, const Vec& s) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = translate(comp, s);
  return r;
}

SchwartzVec modulate(const SchwartzVec& f, const Vec& m) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = modulate(comp, m);
  return r;
}

SchwartzVec flip(const SchwartzVec& f) {
  SchwartzVec r = f;
  for (auto& comp : r.comps) comp = flip(comp);
  return r;
}

SchwartzVec include_components(const SchwartzVec& f) {
  const int d = f.basis.d;
  const int i = f.basis.i;
  SchwartzVec r = SchwartzVec::zero(d + 1, i, f.var_dim());
  for (int s = 0; s < f.basis.size(); ++s) {
    const int idx = r.basis.index_of(f.basis.sets[s]);
    r.comps[idx] = f.comps[s];
  }
  return r;
}

SchwartzVec restrict_components(const SchwartzVec& f) {
  const int d = f.basis.d;
  const int i = f.basis.i;
  SchwartzVec r = SchwartzVec::zero(d - 1, i, f.var_dim());
  for (int s = 0; s < r.basis.size(); ++s) {
    const int idx = f.basis.index_of(r.basis.sets[s]);
    r.comps[s] = f.comps[idx];
  }
  return r;
}

nlohmann::json to_json(const SchwartzFn& f) {
  nlohmann::json j;
  j["d"] = f.d;
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : f.atoms) {
    nlohmann::json ja;
    ja["width"] = a.width;
    ja["center"] = std::vector<double>(a.center.data(), a.center.data() + a.center.size());
    ja["modulation"] =
        std::vector<double>(a.modulation.data(), a.modulation.data() + a.modulation.size());
    ja["poly"] = nlohmann::json::array();
    for (const auto& [e, c] : a.poly.terms) {
      nlohmann::json jt;
      jt["exp"] = e;
      jt["re"] = c.real();
      jt["im"] = c.imag();
      ja["poly"].push_back(jt);
    }
    j["atoms"].push_back(ja);
  }
  return j;
}

SchwartzFn schwartz_from_json(const nlohmann::json& j) {
  SchwartzFn f = SchwartzFn::zero(j.at("d").get<int>());
  for (const auto& ja : j.at("atoms")) {
    const auto cv = ja.at("center").get<std::vector<double>>();
    const auto mv = ja.at("modulation").get<std::vector<double>>();
    Vec center = Eigen::Map<const Vec>(cv.data(), static_cast<int>(cv.size()));
    Vec modulation = Eigen::Map<const Vec>(mv.data(), static_cast<int>(mv.size()));
    MultiPoly poly = MultiPoly::zero(f.d);
    for (const auto& jt : ja.at("poly"))
      poly.add_term(jt.at("exp").get<std::vector<int>>(),
                    Complex(jt.at("re").get<double>(), jt.at("im").get<double>()));
    f.atoms.emplace_back(f.d, ja.at("width").get<double>(), std::move(center),
                         std::move(modulation), std::move(poly));
  }
  return f;
}

}  // namespace csembed::schwartz
