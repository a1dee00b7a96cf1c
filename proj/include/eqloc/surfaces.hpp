#pragma once

// Explicitly charted manifolds for the brute-force verifiers. Each
// fixture carries a uniform sampler with respect to its declared volume
// form, the moment map, the action vector field, and the 2-form in
// chart coordinates; a second (seam-shifted) chart exists so transition
// continuity of the moment map is an actual checkable statement.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqloc/common.hpp"
#include "eqloc/rng.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

struct ChartPoint {
  int chart = 0;
  std::vector<double> coords;
};

struct ChartedSurface {
  std::string name;
  int moment_dim = 1;
  int chart_dim = 2;
  double total_volume = 0.0;
  std::vector<std::string> charts;

  std::function<ChartPoint(RngStream&)> sample;
  std::function<std::vector<double>(const ChartPoint&)> moment;
  std::function<std::vector<double>(const ChartPoint&, const CartanParameter&)>
      vector_field;
  // antisymmetric matrix of 2-form coefficients in chart coordinates
  std::function<std::vector<std::vector<double>>(const ChartPoint&)> two_form;
  std::function<bool(const ChartPoint&, double margin)> in_domain;
  std::function<std::optional<ChartPoint>(const ChartPoint&)> transition;
};

namespace detail_surf {

inline double wrap_angle(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return phi;
}

}  // namespace detail_surf

// Unit sphere, rotation action, area form: chart coordinates
// (theta, phi) with moment z = cos(theta) (deliberately nonlinear in
// the chart, so finite differences see real truncation error).
inline ChartedSurface surface_s2() {
  ChartedSurface s;
  s.name = "s2";
  s.moment_dim = 1;
  s.chart_dim = 2;
  s.total_volume = 2.0 * kTwoPi;
  s.charts = {"polar (theta, phi), seam at phi = 0",
              "polar (theta, phi), seam shifted by pi"};
  s.sample = [](RngStream& rng) {
    double gx = rng.normal(), gy = rng.normal(), gz = rng.normal();
    double n = std::sqrt(gx * gx + gy * gy + gz * gz);
    ChartPoint p;
    p.chart = 0;
    p.coords = {std::acos(std::clamp(gz / n, -1.0, 1.0)),
                detail_surf::wrap_angle(std::atan2(gy, gx))};
    return p;
  };
  s.moment = [](const ChartPoint& p) {
    return std::vector<double>{std::cos(p.coords[0])};
  };
  s.vector_field = [](const ChartPoint&, const CartanParameter& x) {
    return std::vector<double>{0.0, x.coords[0]};
  };
  s.two_form = [](const ChartPoint& p) {
    double st = std::sin(p.coords[0]);
    return std::vector<std::vector<double>>{{0.0, -st}, {st, 0.0}};
  };
  s.in_domain = [](const ChartPoint& p, double margin) {
    return std::sin(p.coords[0]) > margin && p.coords[1] > margin &&
           p.coords[1] < kTwoPi - margin;
  };
  s.transition = [](const ChartPoint& p) -> std::optional<ChartPoint> {
    ChartPoint q = p;
    q.chart = 1 - p.chart;
    q.coords[1] = detail_surf::wrap_angle(p.coords[1] + kPi);
    return q;
  };
  return s;
}

// Same sphere with the moment map deliberately corrupted (z^2 instead
// of z): the Hamiltonian identity must fail loudly on it.
inline ChartedSurface surface_s2_broken() {
  ChartedSurface s = surface_s2();
  s.name = "s2-broken";
  s.moment = [](const ChartPoint& p) {
    double z = std::cos(p.coords[0]);
    return std::vector<double>{z * z};
  };
  return s;
}

// Projective line with the Fubini-Study form rescaled so the moment
// image is [0, 1]; total volume 2 pi.
inline ChartedSurface surface_cp1() {
  ChartedSurface s = surface_s2();
  s.name = "cp1";
  s.total_volume = kTwoPi;
  s.moment = [](const ChartPoint& p) {
    return std::vector<double>{0.5 * (1.0 + std::cos(p.coords[0]))};
  };
  s.two_form = [](const ChartPoint& p) {
    double st = 0.5 * std::sin(p.coords[0]);
    return std::vector<std::vector<double>>{{0.0, -st}, {st, 0.0}};
  };
  return s;
}

// Projective plane with the standard torus action; action-angle chart
// (x1, t1, x2, t2) over the open moment triangle, Liouville volume
// (2 pi)^2 / 2. The sampler draws Fubini-Study-uniform points through
// normalized complex Gaussians, independent of the chart.
inline ChartedSurface surface_cp2() {
  ChartedSurface s;
  s.name = "cp2";
  s.moment_dim = 2;
  s.chart_dim = 4;
  s.total_volume = 0.5 * kTwoPi * kTwoPi;
  s.charts = {"action-angle over the open moment triangle",
              "action-angle, angle seams shifted by pi"};
  s.sample = [](RngStream& rng) {
    double a1 = rng.normal(), b1 = rng.normal();
    double a2 = rng.normal(), b2 = rng.normal();
    double a3 = rng.normal(), b3 = rng.normal();
    double n = a1 * a1 + b1 * b1 + a2 * a2 + b2 * b2 + a3 * a3 + b3 * b3;
    ChartPoint p;
    p.chart = 0;
    p.coords = {(a1 * a1 + b1 * b1) / n,
                detail_surf::wrap_angle(std::atan2(b1, a1)),
                (a2 * a2 + b2 * b2) / n,
                detail_surf::wrap_angle(std::atan2(b2, a2))};
    return p;
  };
  s.moment = [](const ChartPoint& p) {
    return std::vector<double>{p.coords[0], p.coords[2]};
  };
  s.vector_field = [](const ChartPoint&, const CartanParameter& x) {
    return std::vector<double>{0.0, x.coords[0], 0.0, x.coords[1]};
  };
  s.two_form = [](const ChartPoint&) {
    return std::vector<std::vector<double>>{{0.0, 1.0, 0.0, 0.0},
                                            {-1.0, 0.0, 0.0, 0.0},
                                            {0.0, 0.0, 0.0, 1.0},
                                            {0.0, 0.0, -1.0, 0.0}};
  };
  s.in_domain = [](const ChartPoint& p, double margin) {
    double x1 = p.coords[0], x2 = p.coords[2];
    bool triangle = x1 > margin && x2 > margin && (1.0 - x1 - x2) > margin;
    bool angles = p.coords[1] > margin && p.coords[1] < kTwoPi - margin &&
                  p.coords[3] > margin && p.coords[3] < kTwoPi - margin;
    return triangle && angles;
  };
  s.transition = [](const ChartPoint& p) -> std::optional<ChartPoint> {
    ChartPoint q = p;
    q.chart = 1 - p.chart;
    q.coords[1] = detail_surf::wrap_angle(p.coords[1] + kPi);
    q.coords[3] = detail_surf::wrap_angle(p.coords[3] + kPi);
    return q;
  };
  return s;
}

inline ChartedSurface surface_by_name(const std::string& name) {
  if (name == "s2") return surface_s2();
  if (name == "cp1") return surface_cp1();
  if (name == "cp2") return surface_cp2();
  throw ConfigError("no charted surface for fixture '" + name + "'");
}

}  // namespace eqloc
