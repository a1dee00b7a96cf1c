#pragma once

// Small dense polynomials in one and two variables, with the symbolic
// operations the cone-convolution algorithm needs: shifting, expanding
// a substitution x -> x - s*w in an auxiliary variable s, integrating
// in s, and evaluating at a linear form. Degrees stay tiny (bounded by
// the number of isotropy weights), so everything is dense and direct.

#include <array>
#include <cassert>
#include <cmath>
#include <vector>

#include "eqloc/common.hpp"

namespace eqloc {

// ---------------------------------------------------------------- 1-D

struct Poly1 {
  std::vector<double> c;  // c[k] * x^k

  static Poly1 zero() { return Poly1{}; }
  static Poly1 constant(double v) { return Poly1{{v}}; }

  int degree() const { return int(c.size()) - 1; }
  bool is_zero(double tol = 0.0) const {
    for (double v : c)
      if (std::abs(v) > tol) return false;
    return true;
  }
  double eval(double x) const {
    double v = 0.0;
    for (int k = int(c.size()) - 1; k >= 0; --k) v = v * x + c[k];
    return v;
  }
  void trim(double tol = 0.0) {
    while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
  }
  Poly1& operator+=(const Poly1& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0.0);
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    return *this;
  }
  Poly1 operator*(double s) const {
    Poly1 r = *this;
    for (double& v : r.c) v *= s;
    return r;
  }
  double max_abs_coef() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

// (x - a)^n expanded, scaled by `scale`.
inline Poly1 shifted_power(double a, int n, double scale) {
  Poly1 p;
  p.c.assign(n + 1, 0.0);
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    // coefficient of x^k in (x - a)^n
    p.c[k] = scale * binom * std::pow(-a, n - k);
    binom = binom * (n - k) / (k + 1.0);
  }
  return p;
}

inline double integrate_poly1(const Poly1& p, double a, double b) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.c.size(); ++k)
    s += p.c[k] / double(k + 1) * (std::pow(b, k + 1) - std::pow(a, k + 1));
  return s;
}

// Closed-form \int_a^b s^k e^{ts} ds, series fallback near t = 0 where
// the recurrence cancels catastrophically.
inline double integrate_monomial_exp(int k, double t, double a, double b) {
  double smax = std::max(std::abs(a), std::abs(b));
  if (std::abs(t) * std::max(smax, 1.0) < 0.5) {
    // e^{ts} expanded; terms decay at least geometrically with ratio 1/2.
    double total = 0.0;
    double tpow = 1.0;  // t^j / j!
    for (int j = 0; j < 60; ++j) {
      int m = k + j;
      double seg = (std::pow(b, m + 1) - std::pow(a, m + 1)) / double(m + 1);
      double term = tpow * seg;
      total += term;
      tpow *= t / double(j + 1);
      if (std::abs(tpow) * std::pow(smax, m + 2) < 1e-18 * (std::abs(total) + 1e-300))
        break;
    }
    return total;
  }
  // I_k = [s^k e^{ts}/t] - (k/t) I_{k-1}
  double ea = std::exp(t * a), eb = std::exp(t * b);
  double ik = (eb - ea) / t;
  double pa = 1.0, pb = 1.0;
  for (int m = 1; m <= k; ++m) {
    pa *= a;
    pb *= b;
    ik = (pb * eb - pa * ea) / t - double(m) / t * ik;
  }
  return ik;
}

inline double integrate_poly1_exp(const Poly1& p, double t, double a, double b) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.c.size(); ++k)
    if (p.c[k] != 0.0) s += p.c[k] * integrate_monomial_exp(int(k), t, a, b);
  return s;
}

// ---------------------------------------------------------------- 2-D

struct Poly2 {
  // c[i][j] * x^i y^j, stored as a ragged square grid.
  std::vector<std::vector<double>> c;

  static Poly2 zero() { return Poly2{}; }
  static Poly2 constant(double v) { return Poly2{{{v}}}; }
  // a + bx*x + by*y
  static Poly2 linear(double a, double bx, double by) {
    Poly2 p;
    p.c = {{a, by}, {bx, 0.0}};
    return p;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& row : c)
      for (double v : row)
        if (std::abs(v) > tol) return false;
    return true;
  }
  double max_abs_coef() const {
    double m = 0.0;
    for (const auto& row : c)
      for (double v : row) m = std::max(m, std::abs(v));
    return m;
  }
  int degree() const {
    int d = -1;
    for (int i = 0; i < int(c.size()); ++i)
      for (int j = 0; j < int(c[i].size()); ++j)
        if (c[i][j] != 0.0) d = std::max(d, i + j);
    return d;
  }
  double coef(int i, int j) const {
    if (i >= int(c.size()) || j >= int(c[i].size())) return 0.0;
    return c[i][j];
  }
  void add_coef(int i, int j, double v) {
    if (i >= int(c.size())) c.resize(i + 1);
    if (j >= int(c[i].size())) c[i].resize(j + 1, 0.0);
    c[i][j] += v;
  }
  double eval(double x, double y) const {
    double total = 0.0;
    double xp = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double yp = 1.0, row = 0.0;
      for (std::size_t j = 0; j < c[i].size(); ++j) {
        row += c[i][j] * yp;
        yp *= y;
      }
      total += xp * row;
      xp *= x;
    }
    return total;
  }
  Poly2& operator+=(const Poly2& o) {
    for (int i = 0; i < int(o.c.size()); ++i)
      for (int j = 0; j < int(o.c[i].size()); ++j)
        if (o.c[i][j] != 0.0) add_coef(i, j, o.c[i][j]);
    return *this;
  }
  Poly2 operator*(double s) const {
    Poly2 r = *this;
    for (auto& row : r.c)
      for (double& v : row) v *= s;
    return r;
  }
};

inline Poly2 poly2_mul(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (int i = 0; i < int(a.c.size()); ++i)
    for (int j = 0; j < int(a.c[i].size()); ++j) {
      if (a.c[i][j] == 0.0) continue;
      for (int k = 0; k < int(b.c.size()); ++k)
        for (int l = 0; l < int(b.c[k].size()); ++l)
          if (b.c[k][l] != 0.0) r.add_coef(i + k, j + l, a.c[i][j] * b.c[k][l]);
    }
  return r;
}

inline Poly2 poly2_pow(const Poly2& a, int n) {
  Poly2 r = Poly2::constant(1.0);
  for (int k = 0; k < n; ++k) r = poly2_mul(r, a);
  return r;
}

// q(x - vx, y - vy): local-coordinate polynomial moved to the frame
// whose origin is the cone vertex v.
inline Poly2 poly2_translate(const Poly2& q, double vx, double vy) {
  Poly2 r;
  Poly2 xs = Poly2::linear(-vx, 1.0, 0.0);
  Poly2 ys = Poly2::linear(-vy, 0.0, 1.0);
  for (int i = 0; i < int(q.c.size()); ++i)
    for (int j = 0; j < int(q.c[i].size()); ++j) {
      if (q.c[i][j] == 0.0) continue;
      Poly2 t = poly2_mul(poly2_pow(xs, i), poly2_pow(ys, j)) * q.c[i][j];
      r += t;
    }
  return r;
}

// Polynomial in an auxiliary scalar s with Poly2 coefficients.
using PolyS = std::vector<Poly2>;

// q(x - s*wx, y - s*wy) expanded in powers of s.
inline PolyS substitute_ray(const Poly2& q, double wx, double wy) {
  PolyS out;
  auto add = [&](int spow, int i, int j, double v) {
    if (spow >= int(out.size())) out.resize(spow + 1);
    out[spow].add_coef(i, j, v);
  };
  for (int i = 0; i < int(q.c.size()); ++i)
    for (int j = 0; j < int(q.c[i].size()); ++j) {
      double cij = q.c[i][j];
      if (cij == 0.0) continue;
      // (x - s wx)^i = sum_a C(i,a) x^a (-wx)^{i-a} s^{i-a}
      double bi = 1.0;
      for (int a = i; a >= 0; --a) {
        double wa = bi * std::pow(-wx, i - a);
        double bj = 1.0;
        for (int b = j; b >= 0; --b) {
          double wb = bj * std::pow(-wy, j - b);
          add((i - a) + (j - b), a, b, cij * wa * wb);
          bj = bj * b / double(j - b + 1);
        }
        bi = bi * a / double(i - a + 1);
      }
    }
  return out;
}

inline PolyS polys_antiderivative(const PolyS& f) {
  PolyS out(f.size() + 1);
  for (std::size_t k = 0; k < f.size(); ++k) out[k + 1] = f[k] * (1.0 / double(k + 1));
  return out;
}

// F evaluated at s = L(x, y) where L is (at most) linear.
inline Poly2 polys_eval_at(const PolyS& f, const Poly2& L) {
  Poly2 out;
  Poly2 lp = Poly2::constant(1.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    out += poly2_mul(f[k], lp);
    lp = poly2_mul(lp, L);
  }
  return out;
}

// Exact integral over the triangle (v0, v1, v2) using the simplex
// monomial formula int_simplex s^a t^b ds dt = a! b! / (a+b+2)!.
inline double poly2_integrate_triangle(const Poly2& q, const double v0[2],
                                       const double v1[2], const double v2[2]) {
  double ax = v1[0] - v0[0], ay = v1[1] - v0[1];
  double bx = v2[0] - v0[0], by = v2[1] - v0[1];
  double jac = ax * by - ay * bx;
  if (jac == 0.0) return 0.0;

  Poly2 xs;  // x(s,t) with (s,t) as the two poly variables
  xs.c = {{v0[0], bx}, {ax, 0.0}};
  Poly2 ys;
  ys.c = {{v0[1], by}, {ay, 0.0}};
  Poly2 comp;
  for (int i = 0; i < int(q.c.size()); ++i)
    for (int j = 0; j < int(q.c[i].size()); ++j) {
      if (q.c[i][j] == 0.0) continue;
      comp += poly2_mul(poly2_pow(xs, i), poly2_pow(ys, j)) * q.c[i][j];
    }

  auto factorial = [](int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  double total = 0.0;
  for (int a = 0; a < int(comp.c.size()); ++a)
    for (int b = 0; b < int(comp.c[a].size()); ++b)
      if (comp.c[a][b] != 0.0)
        total += comp.c[a][b] * factorial(a) * factorial(b) / factorial(a + b + 2);
  return std::abs(jac) * total;
}

}  // namespace eqloc
