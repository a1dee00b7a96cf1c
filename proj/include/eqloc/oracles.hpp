#pragma once

// Independent brute-force verifiers: chart-level quadrature of the
// exponential integral, Monte-Carlo pushforward histograms, and a
// finite-difference check of the moment-map identity
// d mu(X) = -iota(VF_X) omega.

#include <cmath>
#include <vector>

#include "eqloc/measure.hpp"
#include "eqloc/quadrature.hpp"
#include "eqloc/rng.hpp"
#include "eqloc/surfaces.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

// int_{S^2} e^{t z} dA = 2 pi * int_{-1}^{1} e^{t z} dz, by Gauss
// quadrature in z and the exact 2 pi azimuth factor.
inline double quadrature_integral_s2(double t) {
  return kTwoPi *
         integrate_1d([t](double z) { return std::exp(t * z); }, -1.0, 1.0, 48);
}

// Chart-level quadrature of int e^{<X, mu>} dLiouville for the charted
// fixtures; the independent reference for the localized sum.
inline double chart_exponential_integral(const std::string& fixture,
                                         const CartanParameter& x) {
  if (fixture == "s2") return quadrature_integral_s2(x.coords[0]);
  if (fixture == "cp1") {
    double t = x.coords[0];
    return kTwoPi *
           integrate_1d([t](double u) { return std::exp(t * u); }, 0.0, 1.0, 48);
  }
  if (fixture == "cp2") {
    double v0[2] = {0.0, 0.0}, v1[2] = {1.0, 0.0}, v2[2] = {0.0, 1.0};
    double a = x.coords[0], b = x.coords[1];
    return kTwoPi * kTwoPi *
           integrate_triangle(
               [a, b](double u, double v) { return std::exp(a * u + b * v); },
               v0, v1, v2, 48);
  }
  throw ConfigError("no quadrature oracle for fixture '" + fixture + "'");
}

struct GridSpec {
  std::vector<double> lo, hi;
  std::vector<int> nbins;

  int total_bins() const {
    int n = 1;
    for (int b : nbins) n *= b;
    return n;
  }
};

struct Histogram {
  GridSpec grid;
  std::vector<double> masses;  // row-major over the grid

  double total_mass() const {
    double m = 0.0;
    for (double v : masses) m += v;
    return m;
  }
};

// Deterministic seeded histogram of moment values over `n_samples`
// surface samples, weighted to the declared total volume.
inline Histogram monte_carlo_pushforward(const ChartedSurface& surface,
                                         long n_samples, const GridSpec& grid,
                                         std::uint64_t seed) {
  if (n_samples < 10000)
    throw EvalError("monte_carlo_pushforward: need at least 1e4 samples");
  Histogram h;
  h.grid = grid;
  h.masses.assign(grid.total_bins(), 0.0);
  const double w = surface.total_volume / double(n_samples);
  const int dim = surface.moment_dim;
  RngStream rng(seed);
  for (long i = 0; i < n_samples; ++i) {
    ChartPoint p = surface.sample(rng);
    auto mu = surface.moment(p);
    int index = 0;
    bool in = true;
    for (int d = 0; d < dim; ++d) {
      double t = (mu[d] - grid.lo[d]) / (grid.hi[d] - grid.lo[d]);
      int b = int(std::floor(t * grid.nbins[d]));
      if (b < 0 || b >= grid.nbins[d]) {
        in = false;
        break;
      }
      index = index * grid.nbins[d] + b;
    }
    if (in) h.masses[index] += w;
  }
  return h;
}

// Exact per-bin masses of a piecewise-polynomial measure on the same grid.
inline std::vector<double> measure_bin_masses(
    const PiecewisePolynomialMeasure& m, const GridSpec& grid) {
  const int dim = int(grid.nbins.size());
  std::vector<double> out(grid.total_bins(), 0.0);
  std::vector<int> idx(dim, 0);
  for (int flat = 0; flat < grid.total_bins(); ++flat) {
    int rest = flat;
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = rest % grid.nbins[d];
      rest /= grid.nbins[d];
    }
    std::vector<double> lo(dim), hi(dim);
    for (int d = 0; d < dim; ++d) {
      double step = (grid.hi[d] - grid.lo[d]) / grid.nbins[d];
      lo[d] = grid.lo[d] + idx[d] * step;
      hi[d] = lo[d] + step;
    }
    out[flat] = mass_in_box(m, lo, hi);
  }
  return out;
}

// L1 distance between the Monte-Carlo histogram and the exact measure.
inline double histogram_l1_distance(const Histogram& h,
                                    const PiecewisePolynomialMeasure& m) {
  auto exact = measure_bin_masses(m, h.grid);
  double d = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i)
    d += std::abs(exact[i] - h.masses[i]);
  // mass of the measure falling outside the grid counts as error too
  double inside = 0.0;
  for (double v : exact) inside += v;
  d += std::abs(m.total_mass() - inside);
  return d;
}

struct HamiltonianCheckResult {
  double max_residual = 0.0;
  long points_used = 0;
  long points_skipped = 0;
};

// Central finite differences of mu(X) against -iota(VF_X) omega at
// sampled chart points. Chart-boundary points are skipped and counted.
inline HamiltonianCheckResult check_hamiltonian_identity(
    const ChartedSurface& surface, const CartanParameter& x, long n_points,
    double h, std::uint64_t seed = 0) {
  if (h < 1e-7 || h > 1e-3)
    throw EvalError("check_hamiltonian_identity: step h outside [1e-7, 1e-3]");
  HamiltonianCheckResult res;
  RngStream rng(seed);
  const double margin = std::max(16.0 * h, 1e-3);
  auto mu_x = [&](const ChartPoint& p) {
    auto mu = surface.moment(p);
    double s = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) s += x.coords[k] * mu[k];
    return s;
  };
  for (long i = 0; i < n_points; ++i) {
    ChartPoint p = surface.sample(rng);
    if (!surface.in_domain(p, margin)) {
      ++res.points_skipped;
      continue;
    }
    ++res.points_used;
    auto vf = surface.vector_field(p, x);
    auto omega = surface.two_form(p);
    for (int k = 0; k < surface.chart_dim; ++k) {
      ChartPoint pp = p, pm = p;
      pp.coords[k] += h;
      pm.coords[k] -= h;
      double fd = (mu_x(pp) - mu_x(pm)) / (2.0 * h);
      double contracted = 0.0;
      for (int j = 0; j < surface.chart_dim; ++j)
        contracted += vf[j] * omega[j][k];
      res.max_residual = std::max(res.max_residual, std::abs(fd + contracted));
    }
  }
  return res;
}

}  // namespace eqloc
