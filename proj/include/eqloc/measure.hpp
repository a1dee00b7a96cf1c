#pragma once

// Piecewise-polynomial measures on R^1 / R^2: polyhedral pieces with
// polynomial densities, lower-dimensional segment pieces (degenerate
// cone directions), and point atoms. Pushforward measures of compact
// torus manifolds land here with bounded support.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "eqloc/polynomial.hpp"
#include "eqloc/quadrature.hpp"

namespace eqloc {

struct Piece1D {
  double lo = 0.0, hi = 0.0;
  Poly1 density;

  double mass() const { return integrate_poly1(density, lo, hi); }
};

// a*x + b*y <= c
struct HalfPlane {
  double a = 0.0, b = 0.0, c = 0.0;
};

struct Piece2D {
  std::vector<std::array<double, 2>> polygon;  // convex, CCW
  std::vector<HalfPlane> support;
  Poly2 density;

  double mass() const {
    double m = 0.0;
    for (std::size_t k = 1; k + 1 < polygon.size(); ++k)
      m += poly2_integrate_triangle(density, polygon[0].data(),
                                    polygon[k].data(), polygon[k + 1].data());
    return m;
  }
  bool contains(double x, double y, double tol = 1e-9) const {
    for (const auto& h : support)
      if (h.a * x + h.b * y > h.c + tol * (1.0 + std::abs(h.c))) return false;
    return true;
  }
};

// One-dimensional piece embedded in R^2: u = base + t * dir, t in
// [t_lo, t_hi], with density(t) dt (Hausdorff dimension 1).
struct SegmentPiece {
  std::array<double, 2> base{};
  std::array<double, 2> dir{};  // primitive integer direction
  double t_lo = 0.0, t_hi = 0.0;
  Poly1 density;

  double mass() const { return integrate_poly1(density, t_lo, t_hi); }
};

struct Atom {
  std::vector<double> point;
  double mass = 0.0;
};

struct FacetReport {
  std::vector<double> location;  // a point on the shared facet
  double jump = 0.0;
  bool continuous = true;
};

struct PiecewisePolynomialMeasure {
  int ambient_dim = 1;
  std::vector<Piece1D> pieces1d;
  std::vector<Piece2D> pieces2d;
  std::vector<SegmentPiece> segments;
  std::vector<Atom> atoms;
  std::vector<FacetReport> facets;

  double total_mass() const {
    double m = 0.0;
    for (const auto& p : pieces1d) m += p.mass();
    for (const auto& p : pieces2d) m += p.mass();
    for (const auto& s : segments) m += s.mass();
    for (const auto& a : atoms) m += a.mass;
    return m;
  }

  // Full-dimensional density at a point; 0 outside all pieces.
  double density_at(const std::vector<double>& u) const {
    if (ambient_dim == 1) {
      for (const auto& p : pieces1d)
        if (u[0] >= p.lo && u[0] <= p.hi) return p.density.eval(u[0]);
      return 0.0;
    }
    for (const auto& p : pieces2d)
      if (p.contains(u[0], u[1])) return p.density.eval(u[0], u[1]);
    return 0.0;
  }

  // \int e^{<x, u>} dm(u). Closed form in 1-D (and along segments);
  // per-piece Gauss quadrature on triangulated cells in 2-D.
  double integrate_exp(const std::vector<double>& x, int order = 32) const {
    double total = 0.0;
    if (ambient_dim == 1) {
      for (const auto& p : pieces1d)
        total += integrate_poly1_exp(p.density, x[0], p.lo, p.hi);
    } else {
      for (const auto& p : pieces2d) {
        const auto& poly = p.density;
        auto f = [&](double px, double py) {
          return poly.eval(px, py) * std::exp(x[0] * px + x[1] * py);
        };
        for (std::size_t k = 1; k + 1 < p.polygon.size(); ++k)
          total += integrate_triangle(f, p.polygon[0].data(),
                                      p.polygon[k].data(),
                                      p.polygon[k + 1].data(), order);
      }
      for (const auto& s : segments) {
        double td = x[0] * s.dir[0] + x[1] * s.dir[1];
        double base = std::exp(x[0] * s.base[0] + x[1] * s.base[1]);
        total += base * integrate_poly1_exp(s.density, td, s.t_lo, s.t_hi);
      }
    }
    for (const auto& a : atoms) {
      double e = 0.0;
      for (std::size_t k = 0; k < a.point.size(); ++k) e += x[k] * a.point[k];
      total += a.mass * std::exp(e);
    }
    return total;
  }

  // \int f dm for an arbitrary smooth f, by per-piece Gauss quadrature.
  double integrate(const std::function<double(const std::vector<double>&)>& f,
                   int order = 24) const {
    double total = 0.0;
    if (ambient_dim == 1) {
      for (const auto& p : pieces1d) {
        total += integrate_1d(
            [&](double u) { return f({u}) * p.density.eval(u); }, p.lo, p.hi,
            order);
      }
    } else {
      for (const auto& p : pieces2d) {
        auto g = [&](double px, double py) {
          return f({px, py}) * p.density.eval(px, py);
        };
        for (std::size_t k = 1; k + 1 < p.polygon.size(); ++k)
          total += integrate_triangle(g, p.polygon[0].data(),
                                      p.polygon[k].data(),
                                      p.polygon[k + 1].data(), order);
      }
      for (const auto& s : segments)
        total += integrate_1d(
            [&](double t) {
              return f({s.base[0] + t * s.dir[0], s.base[1] + t * s.dir[1]}) *
                     s.density.eval(t);
            },
            s.t_lo, s.t_hi, order);
    }
    for (const auto& a : atoms) total += a.mass * f(a.point);
    return total;
  }
};

// Sutherland-Hodgman clip of a convex polygon against a*x + b*y <= c.
inline std::vector<std::array<double, 2>> clip_half_plane(
    const std::vector<std::array<double, 2>>& poly, double a, double b,
    double c) {
  std::vector<std::array<double, 2>> out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    double dp = a * p[0] + b * p[1] - c;
    double dq = a * q[0] + b * q[1] - c;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      double t = dp / (dp - dq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

// Exact mass of the measure inside an axis-aligned box (for histogram
// comparisons): pieces are clipped and the polynomials integrated
// exactly piece by piece.
inline double mass_in_box(const PiecewisePolynomialMeasure& m,
                          const std::vector<double>& lo,
                          const std::vector<double>& hi) {
  double total = 0.0;
  if (m.ambient_dim == 1) {
    for (const auto& p : m.pieces1d) {
      double a = std::max(p.lo, lo[0]), b = std::min(p.hi, hi[0]);
      if (a < b) total += integrate_poly1(p.density, a, b);
    }
    for (const auto& a : m.atoms)
      if (a.point[0] >= lo[0] && a.point[0] < hi[0]) total += a.mass;
    return total;
  }
  for (const auto& p : m.pieces2d) {
    auto poly = p.polygon;
    poly = clip_half_plane(poly, -1.0, 0.0, -lo[0]);
    poly = clip_half_plane(poly, 1.0, 0.0, hi[0]);
    if (poly.size() < 3) continue;
    poly = clip_half_plane(poly, 0.0, -1.0, -lo[1]);
    poly = clip_half_plane(poly, 0.0, 1.0, hi[1]);
    if (poly.size() < 3) continue;
    for (std::size_t k = 1; k + 1 < poly.size(); ++k)
      total += poly2_integrate_triangle(p.density, poly[0].data(),
                                        poly[k].data(), poly[k + 1].data());
  }
  for (const auto& s : m.segments) {
    // intersect the parameter interval with the box
    double t0 = s.t_lo, t1 = s.t_hi;
    for (int d = 0; d < 2; ++d) {
      if (s.dir[d] == 0.0) {
        if (s.base[d] < lo[d] || s.base[d] >= hi[d]) t0 = t1 = 0.0;
        continue;
      }
      double ta = (lo[d] - s.base[d]) / s.dir[d];
      double tb = (hi[d] - s.base[d]) / s.dir[d];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
    if (t0 < t1) total += integrate_poly1(s.density, t0, t1);
  }
  for (const auto& a : m.atoms) {
    bool in = true;
    for (int d = 0; d < 2; ++d)
      if (a.point[d] < lo[d] || a.point[d] >= hi[d]) in = false;
    if (in) total += a.mass;
  }
  return total;
}

}  // namespace eqloc
