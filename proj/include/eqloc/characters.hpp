#pragma once

// Character formulas over a root system: the Weyl quotient of signed
// exponential sums, the localized orbit sum over flag-variety fixed
// points (one per Weyl element, linear denominators), and an
// independent weight-sum oracle driven by Freudenthal's multiplicity
// recursion. All evaluations accept complex Cartan parameters.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "eqloc/root_system.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

inline ComplexParameter complexify(const CartanParameter& x) {
  ComplexParameter out;
  for (double v : x.coords) out.emplace_back(v, 0.0);
  return out;
}

inline int weight_height(const Weight& lambda) {
  int h = 0;
  for (int c : lambda.coeffs) h += c;
  return h;
}

namespace detail_char {

template <class Scalar>
Scalar dot(const std::vector<double>& a, const std::vector<Scalar>& x) {
  Scalar s{};
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * x[k];
  return s;
}

// Signed exponential sum over the Weyl orbit of xi (weight coordinates).
inline Complex signed_orbit_sum(const RootSystem& rs,
                                const std::vector<double>& xi,
                                const ComplexParameter& x, double* max_term) {
  Complex total{};
  double mt = 0.0;
  for (const auto& w : rs.weyl) {
    auto wxi = w.apply(xi);
    Complex term = double(w.sign) * std::exp(dot(wxi, x));
    mt = std::max(mt, std::abs(term));
    total += term;
  }
  if (max_term) *max_term = mt;
  return total;
}

}  // namespace detail_char

// Sum_w eps(w) e^{<w rho, X>}; vanishes exactly on the root walls.
inline Complex weyl_denominator_sum(const RootSystem& rs,
                                    const ComplexParameter& x) {
  return detail_char::signed_orbit_sum(rs, rs.rho, x, nullptr);
}

// chi_lambda(X) = sum_w eps(w) e^{<w(lambda+rho),X>} / sum_w eps(w) e^{<w rho,X>}
inline Complex weyl_character(const RootSystem& rs, const Weight& lambda,
                              const ComplexParameter& x) {
  if (!rs.is_dominant(lambda))
    throw EvalError("weyl_character: highest weight is not dominant");
  std::vector<double> shifted(rs.rank);
  for (int k = 0; k < rs.rank; ++k) shifted[k] = lambda.coeffs[k] + rs.rho[k];
  double max_den = 0.0;
  Complex den = detail_char::signed_orbit_sum(rs, rs.rho, x, &max_den);
  if (std::abs(den) <= 1e-12 * max_den)
    throw EvalError("singular element: Weyl denominator vanishes");
  Complex num = detail_char::signed_orbit_sum(rs, shifted, x, nullptr);
  return num / den;
}

// Localized sum over the flag-variety fixed points for the orbit through
// xi: sum_w eps(w) e^{<w xi, X>} / prod_{alpha>0} <alpha, X>.
inline Complex orbit_fourier_sum(const RootSystem& rs,
                                 const std::vector<double>& xi,
                                 const ComplexParameter& x) {
  double xnorm = 0.0;
  for (const auto& v : x) xnorm += std::norm(v);
  xnorm = std::sqrt(xnorm);
  Complex den = 1.0;
  for (const auto& alpha : rs.positive_roots) {
    Complex t = pairing(alpha, x);
    if (std::abs(t) <= 1e-12 * alpha.norm() * xnorm)
      throw EvalError("singular element: root pairing vanishes");
    den *= t;
  }
  return detail_char::signed_orbit_sum(rs, xi, x, nullptr) / den;
}

// Weyl dimension formula, rounded; the rounding residue is checked.
inline long weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_dominant(lambda))
    throw EvalError("weyl_dimension: highest weight is not dominant");
  std::vector<double> lr(rs.rank), rr = rs.rho;
  for (int k = 0; k < rs.rank; ++k) lr[k] = lambda.coeffs[k] + rs.rho[k];
  double dim = 1.0;
  for (const auto& alpha : rs.positive_roots) {
    auto av = RootSystem::to_real(alpha);
    dim *= rs.inner(lr, av) / rs.inner(rr, av);
  }
  double nearest = std::round(dim);
  if (std::abs(dim - nearest) > 1e-6)
    throw EvalError("weyl_dimension: non-integer value " + std::to_string(dim));
  return long(nearest);
}

// Weight multiplicities of the irreducible with highest weight lambda,
// by Freudenthal's recursion level by level below lambda.
inline std::map<std::vector<int>, long> weight_multiplicities(
    const RootSystem& rs, const Weight& lambda, int max_height = 12) {
  if (!rs.is_dominant(lambda))
    throw EvalError("weight_multiplicities: highest weight is not dominant");
  if (weight_height(lambda) > max_height)
    throw EvalError("weight_multiplicities: height exceeded (desk-scale cap " +
                    std::to_string(max_height) + ")");

  auto plus_rho_sq = [&](const std::vector<int>& mu) {
    std::vector<double> v(rs.rank);
    for (int k = 0; k < rs.rank; ++k) v[k] = mu[k] + rs.rho[k];
    return rs.inner(v, v);
  };
  const double top = plus_rho_sq(lambda.coeffs);

  std::map<std::vector<int>, long> mult;
  mult[lambda.coeffs] = 1;
  std::vector<std::vector<int>> frontier{lambda.coeffs};

  for (int level = 1; level <= 200 && !frontier.empty(); ++level) {
    // candidates one simple-root step below the previous level
    std::map<std::vector<int>, bool> candidates;
    for (const auto& mu : frontier)
      for (const auto& alpha : rs.simple_roots) {
        std::vector<int> nu(mu);
        for (int k = 0; k < rs.rank; ++k) nu[k] -= alpha.coeffs[k];
        candidates[nu] = true;
      }

    std::vector<std::vector<int>> next;
    for (const auto& [mu, _] : candidates) {
      double rhs = 0.0;
      for (const auto& alpha : rs.positive_roots) {
        auto av = RootSystem::to_real(alpha);
        // mu sits `level` simple-root steps below lambda and every
        // positive root climbs at least one step, so the string above
        // mu is exhausted after `level` steps.
        for (int k = 1; k <= level; ++k) {
          std::vector<int> up(mu);
          for (int j = 0; j < rs.rank; ++j) up[j] += k * alpha.coeffs[j];
          auto it = mult.find(up);
          if (it == mult.end()) continue;
          std::vector<double> uv(rs.rank);
          for (int j = 0; j < rs.rank; ++j) uv[j] = up[j];
          rhs += 2.0 * rs.inner(uv, av) * double(it->second);
        }
      }
      double denom = top - plus_rho_sq(mu);
      if (std::abs(denom) < 1e-9) {
        if (std::abs(rhs) > 1e-6)
          throw EvalError("weight_multiplicities: degenerate recursion step");
        continue;
      }
      double m = rhs / denom;
      long rounded = std::lround(m);
      if (std::abs(m - rounded) > 1e-6)
        throw EvalError("weight_multiplicities: non-integer multiplicity");
      if (rounded > 0) {
        mult[mu] = rounded;
        next.push_back(mu);
      }
    }
    frontier = std::move(next);
  }
  return mult;
}

// Independent oracle for weyl_character: the plain weight sum
// sum_mu mult(mu) e^{<mu, X>} from Freudenthal's recursion.
inline Complex character_weight_sum_oracle(const RootSystem& rs,
                                           const Weight& lambda,
                                           const ComplexParameter& x,
                                           int max_height = 12) {
  auto mult = weight_multiplicities(rs, lambda, max_height);
  Complex total{};
  for (const auto& [mu, m] : mult) {
    Complex e{};
    for (int k = 0; k < rs.rank; ++k) e += double(mu[k]) * x[k];
    total += double(m) * std::exp(e);
  }
  return total;
}

}  // namespace eqloc
