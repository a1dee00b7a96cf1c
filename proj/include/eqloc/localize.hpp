#pragma once

// Fixed-point localization: an integral of an equivariantly closed form
// becomes a sum of local terms alpha_0(p) / det^{1/2}(L_p) over the
// zeros of the action field. det^{1/2}(L_p) is realized as the signed
// product of isotropy-weight pairings; the overall constant is the
// complex-geometry normalization (2 pi)^{dim_C}, calibrated once
// against the sphere quadrature oracle.

#include <cmath>
#include <optional>
#include <vector>

#include "eqloc/integrand.hpp"
#include "eqloc/regularity.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

// sign(p) * prod_j <w_{p,j}, X>. Fails loudly inside the wall tolerance:
// the localized sum genuinely diverges termwise there.
inline double euler_factor(const FixedPointDatum& p, const CartanParameter& x) {
  double max_w = 0.0;
  for (const auto& w : p.weights) max_w = std::max(max_w, w.norm());
  const double eps = wall_tolerance(norm2(x.coords), max_w);
  double v = double(p.sign);
  for (const auto& w : p.weights) {
    double t = pairing(w, x);
    if (std::abs(t) <= eps)
      throw EvalError("singular parameter: weight pairing vanishes at fixed "
                      "point '" + p.label + "'");
    v *= t;
  }
  return v;
}

template <class Scalar>
Scalar euler_factor_complex(const FixedPointDatum& p,
                            const std::vector<Scalar>& x) {
  Scalar v = double(p.sign);
  for (const auto& w : p.weights) {
    Scalar t = pairing(w, x);
    if (std::abs(t) < 1e-300)
      throw EvalError("singular parameter: weight pairing vanishes at fixed "
                      "point '" + p.label + "'");
    v *= t;
  }
  return v;
}

namespace detail {

// Shared kernel for the classical sum and the multiplicity-weighted sum.
// Keeping one arithmetic path makes the m == 1 reduction exact, not just
// approximate. Terms are accumulated with compensated summation: the
// degree-0 integrand cancels to zero and the naive residue would
// otherwise swamp it.
inline double localized_sum(const ProblemSpec& spec, const CartanParameter& x,
                            const LocalizedIntegrand& f,
                            const std::vector<double>* multipliers) {
  f.check_against(spec);
  CompensatedSum acc;
  for (std::size_t i = 0; i < spec.fixed_points.size(); ++i) {
    const auto& p = spec.fixed_points[i];
    double term = f.evaluate(p, x.coords) / euler_factor(p, x);
    double m = multipliers ? (*multipliers)[i] : 1.0;
    acc.add(m * term);
  }
  return std::pow(kTwoPi, spec.dim_complex) * acc.value();
}

}  // namespace detail

inline double localize_integral(const ProblemSpec& spec,
                                const CartanParameter& x,
                                const LocalizedIntegrand& f) {
  auto verdict = validate_regular(x, spec);
  if (!verdict.regular)
    throw EvalError("singular parameter: " +
                    std::to_string(verdict.vanishing.size()) +
                    " weight pairing(s) vanish");
  return detail::localized_sum(spec, x, f, nullptr);
}

// Analytic continuation of the same rational-exponential expression to
// complex parameters. Experimental; chamber/wall diagnostics are only
// defined for real X.
inline Complex localize_integral_complex(const ProblemSpec& spec,
                                         const ComplexParameter& x,
                                         const LocalizedIntegrand& f) {
  f.check_against(spec);
  Complex acc{};
  for (const auto& p : spec.fixed_points)
    acc += f.evaluate(p, x) / euler_factor_complex(p, x);
  return std::pow(kTwoPi, spec.dim_complex) * acc;
}

// A regular parameter found deterministically (golden-ratio directions).
inline CartanParameter find_regular_parameter(const ProblemSpec& spec) {
  const int r = spec.torus_rank;
  CartanParameter x;
  x.coords.assign(r, 0.0);
  double phase = 0.6180339887498949;
  for (int attempt = 0; attempt < 1024; ++attempt) {
    for (int k = 0; k < r; ++k) {
      phase = phase + 0.7548776662466927 * (k + 1) + 0.1 * attempt;
      x.coords[k] = std::cos(kTwoPi * phase) + 0.5 * std::sin(3.0 * phase);
    }
    double min_pair = 1e300;
    bool ok = true;
    for (const auto& p : spec.fixed_points)
      for (const auto& w : p.weights) {
        double t = std::abs(pairing(w, x));
        min_pair = std::min(min_pair, t);
        if (t <= 0.05 * norm2(x.coords) * w.norm()) ok = false;
      }
    if (ok) return x;
  }
  throw EvalError("could not find a regular parameter for spec '" + spec.name +
                  "'");
}

// Integral of the equivariant Euler form divided by (2 pi)^n, rounded.
// Equals the number of fixed points; a non-integer pre-rounding value
// flags inconsistent input data.
inline long euler_characteristic(const ProblemSpec& spec) {
  CartanParameter x = find_regular_parameter(spec);
  double raw = localize_integral(spec, x, LocalizedIntegrand::euler_form()) /
               std::pow(kTwoPi, spec.dim_complex);
  double nearest = std::round(raw);
  if (std::abs(raw - nearest) > 1e-6)
    throw EvalError("euler characteristic did not localize to an integer "
                    "(got " + std::to_string(raw) + ")");
  return long(nearest);
}

}  // namespace eqloc
