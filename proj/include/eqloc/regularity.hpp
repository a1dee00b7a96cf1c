#pragma once

// Regularity of a Cartan parameter: X is regular when no isotropy weight
// of any fixed point annihilates it. The walls <w, X> = 0 bound the
// chambers on which localized sums are analytic.

#include <string>
#include <utility>
#include <vector>

#include "eqloc/types.hpp"

namespace eqloc {

// Scale-invariant wall tolerance: |<w,X>| below this counts as on-wall.
inline double wall_tolerance(double x_norm, double max_weight_norm) {
  return 1e-9 * x_norm * max_weight_norm;
}

struct RegularityVerdict {
  bool regular = true;
  // (fixed-point label, offending weight) for every vanishing pairing.
  std::vector<std::pair<std::string, Weight>> vanishing;
};

inline RegularityVerdict validate_regular(const CartanParameter& x,
                                          const ProblemSpec& spec) {
  RegularityVerdict v;
  const double eps = wall_tolerance(norm2(x.coords), spec.max_weight_norm());
  for (const auto& p : spec.fixed_points)
    for (const auto& w : p.weights)
      if (std::abs(pairing(w, x)) <= eps) {
        v.regular = false;
        v.vanishing.emplace_back(p.label, w);
      }
  return v;
}

// Sign pattern of all weight pairings, in fixed-point / weight order.
// Two regular parameters lie in the same chamber iff the patterns match.
inline std::vector<int> wall_sign_vector(const ProblemSpec& spec,
                                         const CartanParameter& x) {
  std::vector<int> signs;
  const double eps = wall_tolerance(norm2(x.coords), spec.max_weight_norm());
  for (const auto& p : spec.fixed_points)
    for (const auto& w : p.weights) {
      double v = pairing(w, x);
      if (std::abs(v) <= eps)
        throw EvalError("singular parameter: wall sign undefined at <" +
                        p.label + ">");
      signs.push_back(v > 0 ? +1 : -1);
    }
  return signs;
}

// The declared chamber containing X, matched by wall sign pattern.
inline const Chamber& chamber_of(const ProblemSpec& spec,
                                 const MultiplicityTable& mt,
                                 const CartanParameter& x) {
  auto sx = wall_sign_vector(spec, x);
  for (const auto& c : mt.chambers)
    if (wall_sign_vector(spec, c.sample_point) == sx) return c;
  throw EvalError("parameter lies in no declared chamber");
}

}  // namespace eqloc
