#pragma once

// Duistermaat-Heckman pushforward measures for the zero-section cycle:
// the localized exponential sum is inverted exactly by writing each
// fixed-point term as a signed convolution of ray measures (weight
// polarization), carrying the convolutions out symbolically, and
// merging the resulting shifted cone measures over a line-arrangement
// decomposition (rank <= 2). Bounded support of the merged measure is
// a consistency check on the input data, not an assumption.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "eqloc/localize.hpp"
#include "eqloc/measure.hpp"
#include "eqloc/polynomial.hpp"
#include "eqloc/regularity.hpp"
#include "eqloc/rng.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

struct PolarizationResult {
  std::vector<Weight> polarized;
  int sign = +1;  // (-1)^{number of flipped weights}
};

// Flip weights pairing negatively with xi; all polarized weights then
// pair positively.
inline PolarizationResult polarize_weights(const std::vector<Weight>& weights,
                                           const CartanParameter& xi) {
  PolarizationResult out;
  out.sign = +1;
  double max_w = 0.0;
  for (const auto& w : weights) max_w = std::max(max_w, w.norm());
  const double eps = wall_tolerance(norm2(xi.coords), max_w);
  for (const auto& w : weights) {
    double t = pairing(w, xi);
    if (std::abs(t) <= eps)
      throw EvalError("singular polarization direction");
    if (t < 0) {
      out.polarized.push_back(w.negated());
      out.sign = -out.sign;
    } else {
      out.polarized.push_back(w);
    }
  }
  return out;
}

namespace detail_dh {

inline double cross2(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

// A regular polarization direction for every weight of the spec.
inline CartanParameter find_polarization(const ProblemSpec& spec,
                                         std::uint64_t seed) {
  RngStream rng(seed ^ 0xd1ce5bu);
  const int r = spec.torus_rank;
  for (int attempt = 0; attempt < 512; ++attempt) {
    CartanParameter xi;
    if (r == 1 && attempt == 0) {
      xi.coords = {1.0};
    } else {
      xi.coords.resize(r);
      for (int k = 0; k < r; ++k) xi.coords[k] = rng.normal();
    }
    double nx = norm2(xi.coords);
    if (nx < 1e-6) continue;
    bool ok = true;
    for (const auto& p : spec.fixed_points)
      for (const auto& w : p.weights)
        if (std::abs(pairing(w, xi)) <= 1e-3 * nx * w.norm()) ok = false;
    if (ok) return xi;
  }
  throw EvalError("no regular polarization direction found");
}

// ------------------------------------------------------------- rank 1

struct RayContribution1D {
  double start = 0.0;   // shifted start of the cone
  double coef = 0.0;    // signed mass scale
  int degree = 0;       // n - 1
};

inline std::vector<Piece1D> merge_rays_1d(std::vector<RayContribution1D> rays,
                                          int direction,
                                          std::vector<FacetReport>* facets) {
  // Mirror the negative-direction case onto the standard one.
  if (direction < 0)
    for (auto& r : rays) r.start = -r.start;

  std::vector<double> breaks;
  for (const auto& r : rays) breaks.push_back(r.start);
  std::sort(breaks.begin(), breaks.end());
  double span = breaks.back() - breaks.front();
  double tol = 1e-9 * (span + 1.0);
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) { return std::abs(a - b) <= tol; }),
               breaks.end());

  double gross = 0.0;
  for (const auto& r : rays)
    gross += std::abs(r.coef) * std::pow(span + 1.0, r.degree);

  auto sum_on = [&](double lo) {
    Poly1 p;
    for (const auto& r : rays)
      if (r.start <= lo + tol) p += shifted_power(r.start, r.degree, r.coef);
    return p;
  };

  // Trailing region must cancel exactly: a compact moment image cannot
  // extend to infinity.
  Poly1 tail = sum_on(breaks.back());
  if (!tail.is_zero(1e-9 * (gross + 1e-300)))
    throw EvalError("unbounded support: fixed-point data is not consistent "
                    "with a compact manifold");

  std::vector<Piece1D> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Poly1 p = sum_on(breaks[i]);
    p.trim(1e-12 * (gross + 1e-300));
    if (p.is_zero(1e-9 * (gross + 1e-300))) continue;
    Piece1D piece;
    piece.lo = breaks[i];
    piece.hi = breaks[i + 1];
    piece.density = std::move(p);
    pieces.push_back(std::move(piece));
  }

  // Merge neighbours with identical densities, then mirror back.
  std::vector<Piece1D> merged;
  for (auto& p : pieces) {
    if (!merged.empty() && std::abs(merged.back().hi - p.lo) <= tol) {
      Poly1 diff = merged.back().density;
      diff += p.density * -1.0;
      if (diff.is_zero(1e-9 * (gross + 1e-300))) {
        merged.back().hi = p.hi;
        continue;
      }
    }
    merged.push_back(std::move(p));
  }

  if (facets) {
    for (std::size_t i = 0; i < merged.size(); ++i) {
      double left = (i > 0 && std::abs(merged[i - 1].hi - merged[i].lo) <= tol)
                        ? merged[i - 1].density.eval(merged[i].lo)
                        : 0.0;
      double right = merged[i].density.eval(merged[i].lo);
      FacetReport rep;
      rep.location = {direction < 0 ? -merged[i].lo : merged[i].lo};
      rep.jump = std::abs(right - left);
      rep.continuous = rep.jump <= 1e-8 * (std::abs(right) + std::abs(left) + 1.0);
      facets->push_back(rep);
    }
    if (!merged.empty()) {
      FacetReport rep;
      rep.location = {direction < 0 ? -merged.back().hi : merged.back().hi};
      rep.jump = std::abs(merged.back().density.eval(merged.back().hi));
      rep.continuous = rep.jump <= 1e-8 * (rep.jump + 1.0);
      facets->push_back(rep);
    }
  }

  if (direction < 0) {
    for (auto& p : merged) {
      double lo = -p.hi, hi = -p.lo;
      Poly1 q;
      q.c.resize(p.density.c.size());
      for (std::size_t k = 0; k < p.density.c.size(); ++k)
        q.c[k] = (k % 2 == 0) ? p.density.c[k] : -p.density.c[k];
      p.lo = lo;
      p.hi = hi;
      p.density = std::move(q);
    }
    std::reverse(merged.begin(), merged.end());
  }
  return merged;
}

// ------------------------------------------------------------- rank 2

// Angle-sorted fan of unit rays with one homogeneous polynomial per
// sector, all in coordinates local to the cone vertex.
struct Fan {
  std::vector<std::array<double, 2>> rays;
  std::vector<Poly2> sectors;  // sectors[i] between rays[i] and rays[i+1]
};

inline double angle_key(const std::array<double, 2>& xi,
                        const std::array<double, 2>& d) {
  return std::atan2(cross2(xi[0], xi[1], d[0], d[1]),
                    xi[0] * d[0] + xi[1] * d[1]);
}

inline std::array<double, 2> unit(double x, double y) {
  double n = std::hypot(x, y);
  return {x / n, y / n};
}

// Which sector of the fan contains q, or -1 if outside.
inline int locate_sector(const Fan& fan, double qx, double qy) {
  double n = std::hypot(qx, qy);
  if (n == 0.0) return -1;
  qx /= n;
  qy /= n;
  for (int k = 0; k + 1 < int(fan.rays.size()); ++k) {
    if (cross2(fan.rays[k][0], fan.rays[k][1], qx, qy) >= -1e-12 &&
        cross2(qx, qy, fan.rays[k + 1][0], fan.rays[k + 1][1]) >= -1e-12)
      return k;
  }
  return -1;
}

inline Fan initial_fan(const Weight& a, const Weight& b,
                       const std::array<double, 2>& xi) {
  double det = cross2(a.coeffs[0], a.coeffs[1], b.coeffs[0], b.coeffs[1]);
  Fan fan;
  auto ra = unit(a.coeffs[0], a.coeffs[1]);
  auto rb = unit(b.coeffs[0], b.coeffs[1]);
  if (angle_key(xi, ra) > angle_key(xi, rb)) std::swap(ra, rb);
  fan.rays = {ra, rb};
  fan.sectors = {Poly2::constant(1.0 / std::abs(det))};
  return fan;
}

// One convolution step: the fan measure convolved with the ray measure
// of weight w. Break rays of the result are the old rays plus the ray
// of w; on each new sector the value is a sum of segment integrals of
// old sector polynomials along the line u - s*w, with crossing
// parameters linear in u, so the result is again polynomial per sector.
inline Fan convolve_ray(const Fan& fan, const Weight& w,
                        const std::array<double, 2>& xi) {
  auto wd = unit(w.coeffs[0], w.coeffs[1]);
  double wx = w.coeffs[0], wy = w.coeffs[1];

  std::vector<std::array<double, 2>> rays = fan.rays;
  bool dup = false;
  for (const auto& r : rays)
    if (std::abs(angle_key(xi, r) - angle_key(xi, wd)) < 1e-12) dup = true;
  if (!dup) rays.push_back(wd);
  std::sort(rays.begin(), rays.end(),
            [&](const auto& a, const auto& b) {
              return angle_key(xi, a) < angle_key(xi, b);
            });

  Fan out;
  out.rays = rays;
  out.sectors.assign(rays.size() - 1, Poly2::zero());

  for (int k = 0; k + 1 < int(rays.size()); ++k) {
    // sample direction strictly inside the sector
    auto u0 = unit(rays[k][0] + rays[k + 1][0], rays[k][1] + rays[k + 1][1]);

    // crossings of u0 - s*w with the old rays, forward in s
    struct Crossing {
      double s;
      int ray;
    };
    std::vector<Crossing> crossings;
    for (int i = 0; i < int(fan.rays.size()); ++i) {
      const auto& r = fan.rays[i];
      double den = cross2(wx, wy, r[0], r[1]);
      if (std::abs(den) < 1e-13) continue;  // parallel
      double s = cross2(u0[0], u0[1], r[0], r[1]) / den;
      double t = cross2(u0[0], u0[1], wx, wy) / cross2(r[0], r[1], wx, wy);
      if (s > 1e-12 && t > -1e-12) crossings.push_back({s, i});
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.s < b.s; });

    // boundaries in s: 0, crossings..., +inf (density zero beyond)
    std::vector<double> bounds{0.0};
    for (const auto& c : crossings) bounds.push_back(c.s);

    Poly2 total = Poly2::zero();
    for (std::size_t seg = 0; seg < bounds.size(); ++seg) {
      double s_lo = bounds[seg];
      double s_hi_sample = (seg + 1 < bounds.size()) ? bounds[seg + 1]
                                                     : bounds.back() + 1.0;
      double s_mid = (seg + 1 < bounds.size()) ? 0.5 * (s_lo + s_hi_sample)
                                               : s_hi_sample;
      int sector = locate_sector(fan, u0[0] - s_mid * wx, u0[1] - s_mid * wy);
      if (sector < 0) continue;
      if (seg + 1 >= bounds.size())
        throw EvalError("cone convolution: trajectory failed to leave the "
                        "support (internal error)");

      // symbolic bounds: s = cross(u, r)/cross(w, r), linear in u
      auto bound_form = [&](std::size_t idx) -> Poly2 {
        if (idx == 0) return Poly2::zero();
        const auto& r = fan.rays[crossings[idx - 1].ray];
        double den = cross2(wx, wy, r[0], r[1]);
        return Poly2::linear(0.0, r[1] / den, -r[0] / den);
      };
      PolyS integrand = substitute_ray(fan.sectors[sector], wx, wy);
      PolyS anti = polys_antiderivative(integrand);
      Poly2 upper = polys_eval_at(anti, bound_form(seg + 1));
      Poly2 lower = polys_eval_at(anti, bound_form(seg));
      total += upper;
      total += lower * -1.0;
    }
    out.sectors[k] = std::move(total);
  }
  return out;
}

struct ConeContribution {
  std::array<double, 2> vertex{};
  Fan fan;
  double coef = 0.0;
};

struct SegmentContribution {
  std::array<double, 2> vertex{};
  std::array<double, 2> dir{};  // primitive, pairs positively with xi
  double coef = 0.0;
  double kprod = 1.0;
  int degree = 0;
};

struct Line {
  // y = m*x + b, or vertical x = b
  bool vertical = false;
  double m = 0.0, b = 0.0;
};

inline void merge_full_dim(const std::vector<ConeContribution>& cones,
                           PiecewisePolynomialMeasure& out) {
  if (cones.empty()) return;

  // arrangement lines through each vertex along each fan ray
  std::vector<Line> lines;
  auto add_line = [&](const std::array<double, 2>& v,
                      const std::array<double, 2>& d) {
    Line ln;
    if (std::abs(d[0]) < 1e-12 * std::abs(d[1])) {
      ln.vertical = true;
      ln.b = v[0];
    } else {
      ln.m = d[1] / d[0];
      ln.b = v[1] - ln.m * v[0];
    }
    for (const auto& e : lines) {
      if (e.vertical != ln.vertical) continue;
      if (e.vertical) {
        if (std::abs(e.b - ln.b) < 1e-9 * (1.0 + std::abs(ln.b))) return;
      } else if (std::abs(e.m - ln.m) < 1e-9 * (1.0 + std::abs(ln.m)) &&
                 std::abs(e.b - ln.b) < 1e-9 * (1.0 + std::abs(ln.b))) {
        return;
      }
    }
    lines.push_back(ln);
  };
  for (const auto& c : cones)
    for (const auto& r : c.fan.rays) add_line(c.vertex, r);

  // bounding box: vertices plus pairwise intersections, padded
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  auto grow = [&](double x, double y) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  };
  for (const auto& c : cones) grow(c.vertex[0], c.vertex[1]);
  std::vector<double> xbreaks;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line &a = lines[i], &b = lines[j];
      if (a.vertical && b.vertical) continue;
      double ix, iy;
      if (a.vertical) {
        ix = a.b;
        iy = b.m * ix + b.b;
      } else if (b.vertical) {
        ix = b.b;
        iy = a.m * ix + a.b;
      } else {
        if (std::abs(a.m - b.m) < 1e-12 * (1.0 + std::abs(a.m))) continue;
        ix = (b.b - a.b) / (a.m - b.m);
        iy = a.m * ix + a.b;
      }
      grow(ix, iy);
      xbreaks.push_back(ix);
    }
  double pad = std::max(1.0, 0.25 * std::max(x_max - x_min, y_max - y_min));
  x_min -= pad;
  x_max += pad;
  y_min -= pad;
  y_max += pad;

  for (const auto& ln : lines)
    if (ln.vertical) xbreaks.push_back(ln.b);
  xbreaks.push_back(x_min);
  xbreaks.push_back(x_max);
  std::sort(xbreaks.begin(), xbreaks.end());
  double xtol = 1e-9 * (x_max - x_min);
  xbreaks.erase(std::unique(xbreaks.begin(), xbreaks.end(),
                            [&](double a, double b) { return b - a <= xtol; }),
                xbreaks.end());
  // clamp to box
  std::vector<double> slabs;
  for (double x : xbreaks)
    if (x >= x_min - xtol && x <= x_max + xtol) slabs.push_back(x);

  struct CellRec {
    int slab = 0;
    double x0 = 0, x1 = 0;
    Line below, above;
    Poly2 poly;
    bool zero = true;
    bool boundary = false;
  };
  std::vector<CellRec> cells;

  double gross = 0.0;
  for (int s = 0; s + 1 < int(slabs.size()); ++s) {
    double x0 = slabs[s], x1 = slabs[s + 1];
    if (x1 - x0 <= xtol) continue;
    double xc = 0.5 * (x0 + x1);

    std::vector<Line> ordered;
    Line bottom;
    bottom.m = 0.0;
    bottom.b = y_min;
    Line top;
    top.m = 0.0;
    top.b = y_max;
    ordered.push_back(bottom);
    for (const auto& ln : lines) {
      if (ln.vertical) continue;
      double y = ln.m * xc + ln.b;
      if (y > y_min && y < y_max) ordered.push_back(ln);
    }
    ordered.push_back(top);
    std::sort(ordered.begin(), ordered.end(), [&](const Line& a, const Line& b) {
      return a.m * xc + a.b < b.m * xc + b.b;
    });

    for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
      const Line &lo = ordered[i], &hi = ordered[i + 1];
      double ylo = lo.m * xc + lo.b, yhi = hi.m * xc + hi.b;
      if (yhi - ylo <= 1e-12 * (y_max - y_min)) continue;
      CellRec cell;
      cell.slab = s;
      cell.x0 = x0;
      cell.x1 = x1;
      cell.below = lo;
      cell.above = hi;
      cell.boundary = (s == 0 || s + 2 == int(slabs.size()) || i == 0 ||
                       i + 2 == ordered.size());
      double sample_y = 0.5 * (ylo + yhi);

      Poly2 total = Poly2::zero();
      for (const auto& c : cones) {
        int sector = locate_sector(c.fan, xc - c.vertex[0], sample_y - c.vertex[1]);
        if (sector < 0) continue;
        Poly2 tr = poly2_translate(c.fan.sectors[sector], c.vertex[0], c.vertex[1]);
        tr = tr * c.coef;
        gross = std::max(gross, tr.max_abs_coef());
        total += tr;
      }
      cell.poly = std::move(total);
      cells.push_back(std::move(cell));
    }
  }

  double ztol = 1e-9 * (gross + 1e-300);
  for (auto& cell : cells) {
    cell.zero = cell.poly.is_zero(ztol);
    if (!cell.zero && cell.boundary)
      throw EvalError("unbounded support: fixed-point data is not consistent "
                      "with a compact manifold");
  }

  // vertical merge of equal-density neighbours within a slab
  std::vector<CellRec> kept;
  for (auto& cell : cells) {
    if (cell.zero) continue;
    if (!kept.empty() && kept.back().slab == cell.slab) {
      auto& prev = kept.back();
      bool same_edge =
          std::abs(prev.above.m - cell.below.m) < 1e-12 &&
          std::abs(prev.above.b - cell.below.b) < 1e-9 * (1.0 + std::abs(cell.below.b));
      Poly2 diff = prev.poly;
      diff += cell.poly * -1.0;
      if (same_edge && diff.is_zero(ztol)) {
        prev.above = cell.above;
        continue;
      }
    }
    kept.push_back(cell);
  }

  // facet continuity: shared edges within a slab...
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    if (kept[i].slab != kept[i + 1].slab) continue;
    const auto& a = kept[i];
    const auto& b = kept[i + 1];
    if (std::abs(a.above.m - b.below.m) > 1e-12 ||
        std::abs(a.above.b - b.below.b) > 1e-9 * (1.0 + std::abs(a.above.b)))
      continue;
    double xc = 0.5 * (a.x0 + a.x1);
    double y = a.above.m * xc + a.above.b;
    double va = a.poly.eval(xc, y), vb = b.poly.eval(xc, y);
    FacetReport rep;
    rep.location = {xc, y};
    rep.jump = std::abs(va - vb);
    rep.continuous = rep.jump <= 1e-8 * (std::abs(va) + std::abs(vb) + 1.0);
    out.facets.push_back(rep);
  }
  // ...and across slab boundaries
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (kept[j].slab != kept[i].slab + 1) continue;
      const auto& a = kept[i];
      const auto& b = kept[j];
      double xb = a.x1;
      double a_lo = a.below.m * xb + a.below.b, a_hi = a.above.m * xb + a.above.b;
      double b_lo = b.below.m * xb + b.below.b, b_hi = b.above.m * xb + b.above.b;
      double lo = std::max(a_lo, b_lo), hi = std::min(a_hi, b_hi);
      if (hi - lo <= 1e-9 * (y_max - y_min)) continue;
      double ym = 0.5 * (lo + hi);
      double va = a.poly.eval(xb, ym), vb = b.poly.eval(xb, ym);
      FacetReport rep;
      rep.location = {xb, ym};
      rep.jump = std::abs(va - vb);
      rep.continuous = rep.jump <= 1e-8 * (std::abs(va) + std::abs(vb) + 1.0);
      out.facets.push_back(rep);
    }

  for (const auto& cell : kept) {
    Piece2D piece;
    double x0 = cell.x0, x1 = cell.x1;
    auto yb = [&](double x) { return cell.below.m * x + cell.below.b; };
    auto yt = [&](double x) { return cell.above.m * x + cell.above.b; };
    std::vector<std::array<double, 2>> corners = {
        {x0, yb(x0)}, {x1, yb(x1)}, {x1, yt(x1)}, {x0, yt(x0)}};
    for (const auto& v : corners) {
      if (!piece.polygon.empty()) {
        const auto& last = piece.polygon.back();
        if (std::hypot(v[0] - last[0], v[1] - last[1]) <
            1e-12 * (1.0 + x_max - x_min))
          continue;
      }
      piece.polygon.push_back(v);
    }
    if (piece.polygon.size() >= 3) {
      const auto& first = piece.polygon.front();
      const auto& last = piece.polygon.back();
      if (std::hypot(first[0] - last[0], first[1] - last[1]) <
          1e-12 * (1.0 + x_max - x_min))
        piece.polygon.pop_back();
    }
    if (piece.polygon.size() < 3) continue;
    piece.support = {
        {-1.0, 0.0, -x0},
        {1.0, 0.0, x1},
        {cell.below.m, -1.0, -cell.below.b},
        {-cell.above.m, 1.0, cell.above.b},
    };
    piece.density = cell.poly;
    out.pieces2d.push_back(std::move(piece));
  }
}

inline void merge_segments(std::vector<SegmentContribution> segs,
                           PiecewisePolynomialMeasure& out) {
  std::vector<bool> used(segs.size(), false);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    // group contributions on the same line
    std::vector<std::size_t> group{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (used[j]) continue;
      const auto &a = segs[i], &b = segs[j];
      double cr = cross2(a.dir[0], a.dir[1], b.dir[0], b.dir[1]);
      if (std::abs(cr) > 1e-12) continue;
      double off = cross2(a.dir[0], a.dir[1], b.vertex[0] - a.vertex[0],
                          b.vertex[1] - a.vertex[1]);
      if (std::abs(off) > 1e-9 * (1.0 + std::hypot(a.dir[0], a.dir[1])))
        continue;
      group.push_back(j);
      used[j] = true;
    }

    const auto& ref = segs[i];
    double dd = ref.dir[0] * ref.dir[0] + ref.dir[1] * ref.dir[1];
    std::vector<RayContribution1D> rays;
    for (std::size_t j : group) {
      const auto& s = segs[j];
      double sgn = (s.dir[0] * ref.dir[0] + s.dir[1] * ref.dir[1]) > 0 ? 1.0 : -1.0;
      if (sgn < 0)
        throw EvalError("unbounded support: opposed degenerate directions on "
                        "one line cannot bound each other");  // polarized: same side
      double t0 = (s.vertex[0] * ref.dir[0] + s.vertex[1] * ref.dir[1]) / dd;
      RayContribution1D rc;
      rc.start = t0;
      rc.coef = s.coef / s.kprod;
      rc.degree = s.degree;
      for (int f = 1; f <= s.degree; ++f) rc.coef /= double(f);
      rays.push_back(rc);
    }
    auto pieces = merge_rays_1d(std::move(rays), +1, nullptr);
    for (auto& p : pieces) {
      SegmentPiece sp;
      double t_base = (ref.vertex[0] * ref.dir[0] + ref.vertex[1] * ref.dir[1]) / dd;
      sp.base = {ref.vertex[0] - t_base * ref.dir[0],
                 ref.vertex[1] - t_base * ref.dir[1]};
      sp.dir = ref.dir;
      sp.t_lo = p.lo;
      sp.t_hi = p.hi;
      sp.density = std::move(p.density);
      out.segments.push_back(std::move(sp));
    }
  }
}

}  // namespace detail_dh

// The pushforward measure (moment-map image of the Liouville measure)
// as an exact piecewise-polynomial object, for a given polarization
// direction. The result is independent of the direction; passing it
// explicitly exists for exactly that property test.
inline PiecewisePolynomialMeasure dh_measure_with_direction(
    const ProblemSpec& spec, const CartanParameter& xi) {
  const int r = spec.torus_rank;
  const int n = spec.dim_complex;
  if (r > 2)
    throw EvalError("dh_measure: only torus ranks 1 and 2 are supported");

  PiecewisePolynomialMeasure out;
  out.ambient_dim = r;
  const double front = std::pow(kTwoPi, n) * ((n % 2 == 0) ? 1.0 : -1.0);

  if (r == 1) {
    int direction = xi.coords[0] > 0 ? +1 : -1;
    std::vector<detail_dh::RayContribution1D> rays;
    for (const auto& p : spec.fixed_points) {
      auto pol = polarize_weights(p.weights, xi);
      double kprod = 1.0;
      for (const auto& w : pol.polarized) kprod *= std::abs(w.coeffs[0]);
      double coef = front * double(pol.sign) / double(p.sign) / kprod;
      for (int f = 1; f <= n - 1; ++f) coef /= double(f);
      rays.push_back({p.moment[0], coef, n - 1});
    }
    out.pieces1d = detail_dh::merge_rays_1d(std::move(rays), direction, &out.facets);
    return out;
  }

  std::array<double, 2> xid{xi.coords[0], xi.coords[1]};
  std::vector<detail_dh::ConeContribution> cones;
  std::vector<detail_dh::SegmentContribution> segs;
  for (const auto& p : spec.fixed_points) {
    auto pol = polarize_weights(p.weights, xi);
    double coef = front * double(pol.sign) / double(p.sign);

    // find two independent polarized weights (exact integer test)
    int ia = -1, ib = -1;
    for (int a = 0; a < n && ib < 0; ++a)
      for (int b = a + 1; b < n; ++b) {
        long det = long(pol.polarized[a].coeffs[0]) * pol.polarized[b].coeffs[1] -
                   long(pol.polarized[a].coeffs[1]) * pol.polarized[b].coeffs[0];
        if (det != 0) {
          ia = a;
          ib = b;
          break;
        }
      }

    if (ia < 0) {
      // all weights on one line: a lower-dimensional (segment) piece
      const auto& w0 = pol.polarized[0];
      int g = std::abs(std::gcd(w0.coeffs[0], w0.coeffs[1]));
      std::array<double, 2> d{double(w0.coeffs[0] / g), double(w0.coeffs[1] / g)};
      double dd = d[0] * d[0] + d[1] * d[1];
      detail_dh::SegmentContribution sc;
      sc.vertex = {p.moment[0], p.moment[1]};
      sc.dir = d;
      sc.degree = n - 1;
      sc.kprod = 1.0;
      for (const auto& w : pol.polarized) {
        double k = (w.coeffs[0] * d[0] + w.coeffs[1] * d[1]) / dd;
        sc.kprod *= k;
      }
      sc.coef = coef;
      segs.push_back(std::move(sc));
      continue;
    }

    detail_dh::Fan fan =
        detail_dh::initial_fan(pol.polarized[ia], pol.polarized[ib], xid);
    for (int k = 0; k < n; ++k) {
      if (k == ia || k == ib) continue;
      fan = detail_dh::convolve_ray(fan, pol.polarized[k], xid);
    }
    cones.push_back({{p.moment[0], p.moment[1]}, std::move(fan), coef});
  }

  detail_dh::merge_full_dim(cones, out);
  detail_dh::merge_segments(std::move(segs), out);
  return out;
}

inline PiecewisePolynomialMeasure dh_measure(const ProblemSpec& spec,
                                             std::uint64_t seed = 0) {
  validate(spec);
  CartanParameter xi = detail_dh::find_polarization(spec, seed);
  return dh_measure_with_direction(spec, xi);
}

// The Fourier transform (no factor of i in the exponent) of the DH
// measure at a regular parameter is exactly the localized exponential
// sum; provided as a named operation for that reading.
inline double dh_fourier(const ProblemSpec& spec, const CartanParameter& x) {
  return localize_integral(spec, x, LocalizedIntegrand::exponential_of_moment());
}

// Residual of the inversion identity: the exactly-integrated transform
// of the measure against the localized sum.
inline double verify_fourier_inversion(const PiecewisePolynomialMeasure& m,
                                       const ProblemSpec& spec,
                                       const CartanParameter& x) {
  double lhs = m.integrate_exp(x.coords);
  double rhs = dh_fourier(spec, x);
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

}  // namespace eqloc
