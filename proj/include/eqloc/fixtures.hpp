#pragma once

// Built-in desk-scale fixtures. Flag-variety data is generated from the
// root system (one fixed point per Weyl element, tangent weights the
// Weyl translates of the positive roots), everything else is written
// out directly.

#include <string>
#include <vector>

#include "eqloc/config.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

inline Problem fixture_s2() {
  Problem prob;
  prob.spec.name = "s2";
  prob.spec.torus_rank = 1;
  prob.spec.dim_complex = 1;
  prob.spec.fixed_points = {
      {"N", {1.0}, {Weight{{1}}}, +1},
      {"S", {-1.0}, {Weight{{-1}}}, +1},
  };
  MultiplicityTable mt = constant_multiplicities(
      prob.spec, {{"pos", CartanParameter{{1.0}}}, {"neg", CartanParameter{{-1.0}}}});
  prob.multiplicities = std::move(mt);
  return prob;
}

inline Problem fixture_cp1() {
  Problem prob;
  prob.spec.name = "cp1";
  prob.spec.torus_rank = 1;
  prob.spec.dim_complex = 1;
  prob.spec.fixed_points = {
      {"p0", {0.0}, {Weight{{-1}}}, +1},
      {"p1", {1.0}, {Weight{{1}}}, +1},
  };
  prob.multiplicities = constant_multiplicities(
      prob.spec, {{"pos", CartanParameter{{1.0}}}, {"neg", CartanParameter{{-1.0}}}});
  return prob;
}

inline Problem fixture_cp2() {
  Problem prob;
  prob.spec.name = "cp2";
  prob.spec.torus_rank = 2;
  prob.spec.dim_complex = 2;
  prob.spec.fixed_points = {
      {"p00", {0.0, 0.0}, {Weight{{1, 0}}, Weight{{0, 1}}}, +1},
      {"p10", {1.0, 0.0}, {Weight{{-1, 0}}, Weight{{-1, 1}}}, +1},
      {"p01", {0.0, 1.0}, {Weight{{1, -1}}, Weight{{0, -1}}}, +1},
  };
  // chambers of the wall arrangement {x = 0, y = 0, x = y}
  std::vector<Chamber> chambers = {
      {"c0", CartanParameter{{2.0, 1.0}}},  {"c1", CartanParameter{{1.0, 2.0}}},
      {"c2", CartanParameter{{-1.0, 1.0}}}, {"c3", CartanParameter{{-2.0, -1.0}}},
      {"c4", CartanParameter{{-1.0, -2.0}}}, {"c5", CartanParameter{{1.0, -1.0}}},
  };
  prob.multiplicities = constant_multiplicities(prob.spec, std::move(chambers));
  return prob;
}

// Flag variety of the given root system through the orbit point xi
// (weight coordinates): one fixed point per Weyl element w, moment
// w(xi), tangent weights {w(alpha) : alpha > 0}.
inline Problem fixture_flag(const std::string& type) {
  RootSystem rs = make_root_system(type);
  Problem prob;
  prob.spec.name = (type == "A1") ? "a1-flag" : (type == "A2") ? "a2-flag" : type + "-flag";
  prob.spec.torus_rank = rs.rank;
  prob.spec.dim_complex = int(rs.positive_roots.size());

  Weight rho_int;
  for (double v : rs.rho) rho_int.coeffs.push_back(int(std::lround(v)));

  std::vector<Chamber> chambers;
  std::vector<double> dominant(rs.rank);
  for (int k = 0; k < rs.rank; ++k) dominant[k] = 1.0 + 0.37 * (k + 1);
  for (std::size_t i = 0; i < rs.weyl.size(); ++i) {
    const auto& w = rs.weyl[i];
    FixedPointDatum p;
    p.label = "w" + std::to_string(i);
    Weight mom = w.apply(rho_int);
    p.moment.assign(mom.coeffs.begin(), mom.coeffs.end());
    for (const auto& alpha : rs.positive_roots) p.weights.push_back(w.apply(alpha));
    p.sign = +1;
    prob.spec.fixed_points.push_back(std::move(p));

    Chamber c;
    c.name = "w" + std::to_string(i);
    c.sample_point.coords = w.apply_cartan(dominant);
    chambers.push_back(std::move(c));
  }
  prob.multiplicities = constant_multiplicities(prob.spec, std::move(chambers));
  prob.root_system = std::move(rs);
  return prob;
}

// Split-Cartan principal-series data for SL(2,R): the two flag-variety
// fixed points in the real locus, moments +-nu, weights +-2 (the root),
// orientation signs chosen so both localized denominators agree on the
// split chambers.
inline Problem fixture_sl2r_split(double nu = 1.0) {
  Problem prob;
  prob.spec.name = "sl2r-split";
  prob.spec.torus_rank = 1;
  prob.spec.dim_complex = 1;
  prob.spec.fixed_points = {
      {"q+", {nu}, {Weight{{2}}}, +1},
      {"q-", {-nu}, {Weight{{-2}}}, -1},
  };
  MultiplicityTable mt;
  mt.chambers = {{"split+", CartanParameter{{1.0}}},
                 {"split-", CartanParameter{{-1.0}}}};
  mt.entries["q+"]["split+"] = 1;
  mt.entries["q-"]["split+"] = 1;
  mt.entries["q+"]["split-"] = 1;
  mt.entries["q-"]["split-"] = 1;
  prob.multiplicities = std::move(mt);
  prob.root_system = make_root_system("A1");
  return prob;
}

// Single-orbit (discrete-series style) multiplicity table on the split
// chambers: each chamber sees only the fixed point it is adjacent to.
inline MultiplicityTable sl2r_discrete_series_table() {
  MultiplicityTable mt;
  mt.chambers = {{"split+", CartanParameter{{1.0}}},
                 {"split-", CartanParameter{{-1.0}}}};
  mt.entries["q+"]["split+"] = 1;
  mt.entries["q-"]["split+"] = 0;
  mt.entries["q+"]["split-"] = 0;
  mt.entries["q-"]["split-"] = 1;
  return mt;
}

inline Problem fixture_by_name(const std::string& name) {
  if (name == "s2") return fixture_s2();
  if (name == "cp1") return fixture_cp1();
  if (name == "cp2") return fixture_cp2();
  if (name == "a1-flag") return fixture_flag("A1");
  if (name == "a2-flag") return fixture_flag("A2");
  if (name == "sl2r-split") return fixture_sl2r_split();
  throw ConfigError("unknown fixture '" + name +
                    "' (expected s2|cp1|cp2|a1-flag|a2-flag|sl2r-split)");
}

}  // namespace eqloc
