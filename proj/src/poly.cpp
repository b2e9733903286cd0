#include "csembed/poly.hpp"

#include <algorithm>
#include <cmath>

namespace csembed {

MultiPoly MultiPoly::zero(int d) {
  MultiPoly p;
  p.d = d;
  return p;
}

MultiPoly MultiPoly::constant(int d, Complex c) {
  MultiPoly p;
  p.d = d;
  if (c != Complex(0.0, 0.0)) p.terms[std::vector<int>(d, 0)] = c;
  return p;
}

MultiPoly MultiPoly::axis(int d, int j) {
  MultiPoly p;
  p.d = d;
  std::vector<int> e(d, 0);
  e[j] = 1;
  p.terms[e] = Complex(1.0, 0.0);
  return p;
}

int MultiPoly::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms) {
    int s = 0;
    for (int v : e) s += v;
    deg = std::max(deg, s);
  }
  return deg;
}

void MultiPoly::add_term(const std::vector<int>& e, Complex c) {
  auto it = terms.find(e);
  if (it == terms.end()) {
    if (c != Complex(0.0, 0.0)) terms[e] = c;
  } else {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r = zero(d);
  std::vector<int> e(d);
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      for (int j = 0; j < d; ++j) e[j] = e1[j] + e2[j];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MultiPoly MultiPoly::scaled(Complex c) const {
  MultiPoly r = zero(d);
  if (c == Complex(0.0, 0.0)) return r;
  for (const auto& [e, v] : terms) r.terms[e] = v * c;
  return r;
}

MultiPoly MultiPoly::conjugated() const {
  MultiPoly r = zero(d);
  for (const auto& [e, v] : terms) r.terms[e] = std::conj(v);
  return r;
}

MultiPoly MultiPoly::shifted(const Vec& s) const {
  // expand each monomial prod_j (x_j + s_j)^{e_j}
  MultiPoly r = zero(d);
  for (const auto& [e, c] : terms) {
    MultiPoly term = constant(d, c);
    for (int j = 0; j < d; ++j) {
      MultiPoly lin = axis(d, j) + constant(d, Complex(s(j), 0.0));
      for (int k = 0; k < e[j]; ++k) term = term * lin;
    }
    r += term;
  }
  return r;
}

MultiPoly MultiPoly::linear_composed(const Mat& b) const {
  MultiPoly r = zero(d);
  for (const auto& [e, c] : terms) {
    MultiPoly term = constant(d, c);
    for (int j = 0; j < d; ++j) {
      if (e[j] == 0) continue;
      MultiPoly lin = zero(d);
      for (int k = 0; k < d; ++k)
        if (b(j, k) != 0.0) lin += axis(d, k).scaled(Complex(b(j, k), 0.0));
      for (int k = 0; k < e[j]; ++k) term = term * lin;
    }
    r += term;
  }
  return r;
}

Complex MultiPoly::eval(const Vec& x) const {
  Complex acc(0.0, 0.0);
  for (const auto& [e, c] : terms) {
    double m = 1.0;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < e[j]; ++k) m *= x(j);
    acc += c * m;
  }
  return acc;
}

void MultiPoly::prune(double eps) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (std::abs(it->second) <= eps)
      it = terms.erase(it);
    else
      ++it;
  }
}

}  // namespace csembed
