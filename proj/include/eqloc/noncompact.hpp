#pragma once

// The multiplicity-weighted localized sum for non-compact cycles, and
// its pairing against compactly supported test functions. Multiplicity
// tables are input data (chamber-wise integers); the evaluation shares
// its arithmetic path with the classical sum so the m == 1 reduction is
// exact rather than approximate.

#include <cmath>
#include <vector>

#include "eqloc/localize.hpp"
#include "eqloc/quadrature.hpp"
#include "eqloc/regularity.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

inline double noncompact_character(const ProblemSpec& spec,
                                   const MultiplicityTable& mt,
                                   const CartanParameter& x,
                                   const LocalizedIntegrand& f) {
  auto verdict = validate_regular(x, spec);
  if (!verdict.regular)
    throw EvalError("singular parameter: " +
                    std::to_string(verdict.vanishing.size()) +
                    " weight pairing(s) vanish");
  const Chamber& chamber = chamber_of(spec, mt, x);
  std::vector<double> mults;
  mults.reserve(spec.fixed_points.size());
  for (const auto& p : spec.fixed_points)
    mults.push_back(double(mt.lookup(p.label, chamber.name)));
  return detail::localized_sum(spec, x, f, &mults);
}

// Smooth compactly supported bump: amplitude * exp(-1/(1 - |u|^2)) on
// the ball |u| < 1, u = (X - center)/radius.
struct TestFunction {
  CartanParameter center;
  double radius = 1.0;
  double amplitude = 1.0;

  double eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      double u = (x[k] - center.coords[k]) / radius;
      s += u * u;
    }
    if (s >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - s));
  }
};

struct PairingResult {
  double value = 0.0;
  int order = 0;               // final Gauss order per axis
  double last_rel_change = 0.0;
  bool converged = false;
};

// integral of F(X) phi(X) dX over the bump's bounding box, where F is
// the multiplicity-weighted localized sum. Order doubles until the
// value is stable to 1e-6 relative, capped at 64 points per axis.
inline PairingResult pair_distribution(const ProblemSpec& spec,
                                       const MultiplicityTable& mt,
                                       const LocalizedIntegrand& f,
                                       const TestFunction& phi,
                                       int initial_order = 8) {
  // the support ball must clear every wall
  for (const auto& p : spec.fixed_points)
    for (const auto& w : p.weights) {
      double dist = std::abs(pairing(w, phi.center)) / w.norm();
      if (dist <= phi.radius)
        throw EvalError("test-function support touches the wall of weight "
                        "pairing at fixed point '" + p.label + "'");
    }
  (void)chamber_of(spec, mt, phi.center);  // must lie in a declared chamber

  const int r = spec.torus_rank;
  std::vector<double> lo(r), hi(r);
  for (int k = 0; k < r; ++k) {
    lo[k] = phi.center.coords[k] - phi.radius;
    hi[k] = phi.center.coords[k] + phi.radius;
  }
  auto integrand = [&](const std::vector<double>& x) {
    double b = phi.eval(x);
    if (b == 0.0) return 0.0;  // outside the ball; F may be off-chamber there
    CartanParameter cx{x};
    return b * noncompact_character(spec, mt, cx, f);
  };

  PairingResult res;
  double prev = integrate_box(integrand, lo, hi, initial_order);
  for (int order = initial_order * 2; order <= 64; order *= 2) {
    double cur = integrate_box(integrand, lo, hi, order);
    res.value = cur;
    res.order = order;
    res.last_rel_change =
        std::abs(cur - prev) / std::max(1e-300, std::abs(cur));
    if (res.last_rel_change < 1e-6) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;
  return res;
}

}  // namespace eqloc
