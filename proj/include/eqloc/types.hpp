#pragma once

// Domain types: a manifold with torus action is described entirely by
// its isolated fixed points (moment image, integer isotropy weights,
// orientation sign), plus optional chamber/multiplicity data for the
// non-compact evaluation path. All types are immutable value types;
// operations elsewhere are pure functions over them.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqloc/common.hpp"

namespace eqloc {

// A point X of the Cartan subalgebra, in a fixed coordinate basis.
struct CartanParameter {
  std::vector<double> coords;

  std::size_t rank() const { return coords.size(); }
};

using ComplexParameter = std::vector<Complex>;

// An element of the dual (weight) lattice; pairing with X is the plain
// dot product of integer coefficients against X coordinates.
struct Weight {
  std::vector<int> coeffs;

  std::size_t rank() const { return coeffs.size(); }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](int c) { return c == 0; });
  }
  Weight negated() const {
    Weight w = *this;
    for (int& c : w.coeffs) c = -c;
    return w;
  }
  double norm() const {
    double s = 0.0;
    for (int c : coeffs) s += double(c) * double(c);
    return std::sqrt(s);
  }
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.coeffs == b.coeffs;
  }
};

template <class Scalar>
Scalar pairing(const Weight& w, const std::vector<Scalar>& x) {
  Scalar s{};
  for (std::size_t k = 0; k < w.coeffs.size(); ++k)
    s += double(w.coeffs[k]) * x[k];
  return s;
}

inline double pairing(const Weight& w, const CartanParameter& x) {
  return pairing(w, x.coords);
}

// Dot product of a real covector (e.g. a moment image) against X.
template <class Scalar>
Scalar pairing(const std::vector<double>& covec, const std::vector<Scalar>& x) {
  Scalar s{};
  for (std::size_t k = 0; k < covec.size(); ++k) s += covec[k] * x[k];
  return s;
}

inline double pairing(const std::vector<double>& covec,
                      const CartanParameter& x) {
  return pairing(covec, x.coords);
}

// One zero p of the action vector field: moment image phi(p), the
// integer isotropy weights of the linearized action, and the
// orientation sign entering the square-rooted determinant.
struct FixedPointDatum {
  std::string label;
  std::vector<double> moment;
  std::vector<Weight> weights;
  int sign = +1;
};

struct ProblemSpec {
  std::string name;
  int torus_rank = 0;
  int dim_complex = 0;
  std::vector<FixedPointDatum> fixed_points;

  double max_weight_norm() const {
    double m = 0.0;
    for (const auto& p : fixed_points)
      for (const auto& w : p.weights) m = std::max(m, w.norm());
    return m;
  }
};

// Throws ConfigError naming the offending field if any invariant fails.
inline void validate(const ProblemSpec& spec) {
  if (spec.torus_rank < 1)
    throw ConfigError("manifold.torus_rank must be a positive integer");
  if (spec.dim_complex < 1)
    throw ConfigError("manifold.dim_complex must be a positive integer");
  if (spec.fixed_points.empty())
    throw ConfigError("manifold.fixed_points: at least one fixed point required");
  std::set<std::string> seen;
  for (const auto& p : spec.fixed_points) {
    if (!seen.insert(p.label).second)
      throw ConfigError("duplicate fixed-point label '" + p.label + "'");
    if (p.sign != +1 && p.sign != -1)
      throw ConfigError("fixed point '" + p.label + "': sign must be +1 or -1");
    if (int(p.moment.size()) != spec.torus_rank)
      throw ConfigError("fixed point '" + p.label +
                        "': moment length does not match torus_rank");
    if (!all_finite(p.moment))
      throw ConfigError("fixed point '" + p.label + "': non-finite moment");
    if (int(p.weights.size()) != spec.dim_complex)
      throw ConfigError("fixed point '" + p.label +
                        "': expected dim_complex = " +
                        std::to_string(spec.dim_complex) + " weights, got " +
                        std::to_string(p.weights.size()));
    for (const auto& w : p.weights) {
      if (int(w.coeffs.size()) != spec.torus_rank)
        throw ConfigError("fixed point '" + p.label +
                          "': weight length does not match torus_rank");
      if (w.is_zero())
        throw ConfigError("fixed point '" + p.label +
                          "': zero isotropy weight");
    }
  }
}

// A connected component of the regular set, declared by a sample point.
struct Chamber {
  std::string name;
  CartanParameter sample_point;
};

// (fixed-point label, chamber name) -> integer Lefschetz multiplicity.
// Entries must cover every pair unless missing_default_zero is set.
struct MultiplicityTable {
  std::vector<Chamber> chambers;
  std::map<std::string, std::map<std::string, long>> entries;
  bool missing_default_zero = false;

  long lookup(const std::string& point_label,
              const std::string& chamber_name) const {
    auto it = entries.find(point_label);
    if (it != entries.end()) {
      auto jt = it->second.find(chamber_name);
      if (jt != it->second.end()) return jt->second;
    }
    if (missing_default_zero) return 0;
    throw EvalError("missing multiplicity entry for (point '" + point_label +
                    "', chamber '" + chamber_name + "')");
  }
};

// Uniform table m = c on every (point, chamber) pair of the spec.
inline MultiplicityTable constant_multiplicities(const ProblemSpec& spec,
                                                 std::vector<Chamber> chambers,
                                                 long value = 1) {
  MultiplicityTable mt;
  mt.chambers = std::move(chambers);
  for (const auto& p : spec.fixed_points)
    for (const auto& c : mt.chambers) mt.entries[p.label][c.name] = value;
  return mt;
}

}  // namespace eqloc
