#pragma once

// Configuration documents: a JSON key-value tree with a `manifold`
// block (fixed-point data), an optional `cycle` block (declared
// chambers + multiplicity table) and an optional `root_system` block.
// All numbers are decimal; weights must be integers.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eqloc/regularity.hpp"
#include "eqloc/root_system.hpp"
#include "eqloc/types.hpp"

namespace eqloc {

struct Problem {
  ProblemSpec spec;
  std::optional<MultiplicityTable> multiplicities;
  std::optional<RootSystem> root_system;
};

namespace detail {

inline std::vector<double> parse_real_vector(const nlohmann::json& j,
                                             const std::string& field) {
  if (!j.is_array()) throw ConfigError(field + ": expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw ConfigError(field + ": expected a number");
    v.push_back(e.get<double>());
  }
  return v;
}

inline Weight parse_weight(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field + ": expected an integer array");
  Weight w;
  for (const auto& e : j) {
    if (!e.is_number_integer())
      throw ConfigError(field + ": weights must be integers");
    w.coeffs.push_back(e.get<int>());
  }
  return w;
}

}  // namespace detail

inline Problem load_problem_json(const nlohmann::json& doc) {
  Problem out;
  if (!doc.is_object() || !doc.contains("manifold"))
    throw ConfigError("document must contain a 'manifold' object");

  const auto& m = doc.at("manifold");
  out.spec.name = m.value("name", std::string("unnamed"));
  if (!m.contains("torus_rank") || !m.at("torus_rank").is_number_integer())
    throw ConfigError("manifold.torus_rank: required integer");
  out.spec.torus_rank = m.at("torus_rank").get<int>();
  if (!m.contains("dim_complex") || !m.at("dim_complex").is_number_integer())
    throw ConfigError("manifold.dim_complex: required integer");
  out.spec.dim_complex = m.at("dim_complex").get<int>();
  if (!m.contains("fixed_points"))
    throw ConfigError("manifold.fixed_points: required");
  for (const auto& fp : m.at("fixed_points")) {
    FixedPointDatum p;
    p.label = fp.value("label", std::string());
    if (p.label.empty())
      throw ConfigError("fixed_points[]: every point needs a label");
    p.moment = detail::parse_real_vector(fp.at("moment"),
                                         "fixed point '" + p.label + "' moment");
    for (const auto& w : fp.at("weights"))
      p.weights.push_back(
          detail::parse_weight(w, "fixed point '" + p.label + "' weight"));
    p.sign = fp.value("sign", 1);
    out.spec.fixed_points.push_back(std::move(p));
  }
  validate(out.spec);

  if (doc.contains("cycle")) {
    const auto& cy = doc.at("cycle");
    MultiplicityTable mt;
    mt.missing_default_zero = cy.value("missing_default_zero", false);
    for (const auto& ch : cy.at("chambers")) {
      Chamber c;
      c.name = ch.value("name", std::string());
      if (c.name.empty()) throw ConfigError("cycle.chambers[]: name required");
      c.sample_point.coords = detail::parse_real_vector(
          ch.at("sample_point"), "chamber '" + c.name + "' sample_point");
      if (int(c.sample_point.coords.size()) != out.spec.torus_rank)
        throw ConfigError("chamber '" + c.name +
                          "': sample_point length does not match torus_rank");
      if (!validate_regular(c.sample_point, out.spec).regular)
        throw ConfigError("chamber '" + c.name +
                          "': sample_point is not regular");
      mt.chambers.push_back(std::move(c));
    }
    if (cy.contains("multiplicities")) {
      for (auto it = cy.at("multiplicities").begin();
           it != cy.at("multiplicities").end(); ++it) {
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
          if (!jt.value().is_number_integer())
            throw ConfigError("multiplicities['" + it.key() +
                              "']: values must be integers");
          mt.entries[it.key()][jt.key()] = jt.value().get<long>();
        }
      }
    }
    if (!mt.missing_default_zero) {
      for (const auto& p : out.spec.fixed_points)
        for (const auto& c : mt.chambers)
          (void)mt.lookup(p.label, c.name);  // throws if absent
    }
    out.multiplicities = std::move(mt);
  }

  if (doc.contains("root_system")) {
    const auto& rsj = doc.at("root_system");
    std::string type = rsj.value("type", std::string("custom"));
    if (type == "custom") {
      std::vector<Weight> roots;
      for (const auto& r : rsj.at("simple_roots"))
        roots.push_back(detail::parse_weight(r, "root_system.simple_roots"));
      std::vector<std::vector<double>> B;
      for (const auto& row : rsj.at("inner_product"))
        B.push_back(detail::parse_real_vector(row, "root_system.inner_product"));
      out.root_system = make_custom_root_system(std::move(roots), std::move(B));
    } else {
      out.root_system = make_root_system(type);
    }
  }
  return out;
}

inline Problem load_problem(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  try {
    return load_problem_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed document: ") + e.what());
  }
}

inline Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_problem(ss.str());
}

inline nlohmann::json serialize_problem(const Problem& prob) {
  nlohmann::json doc;
  auto& m = doc["manifold"];
  m["name"] = prob.spec.name;
  m["torus_rank"] = prob.spec.torus_rank;
  m["dim_complex"] = prob.spec.dim_complex;
  m["fixed_points"] = nlohmann::json::array();
  for (const auto& p : prob.spec.fixed_points) {
    nlohmann::json fp;
    fp["label"] = p.label;
    fp["moment"] = p.moment;
    fp["weights"] = nlohmann::json::array();
    for (const auto& w : p.weights) fp["weights"].push_back(w.coeffs);
    fp["sign"] = p.sign;
    m["fixed_points"].push_back(std::move(fp));
  }
  if (prob.multiplicities) {
    auto& cy = doc["cycle"];
    cy["chambers"] = nlohmann::json::array();
    for (const auto& c : prob.multiplicities->chambers) {
      nlohmann::json ch;
      ch["name"] = c.name;
      ch["sample_point"] = c.sample_point.coords;
      cy["chambers"].push_back(std::move(ch));
    }
    cy["multiplicities"] = nlohmann::json::object();
    for (const auto& [label, row] : prob.multiplicities->entries)
      for (const auto& [chamber, v] : row)
        cy["multiplicities"][label][chamber] = v;
    if (prob.multiplicities->missing_default_zero)
      cy["missing_default_zero"] = true;
  }
  if (prob.root_system) {
    auto& rs = doc["root_system"];
    if (prob.root_system->type != "custom") {
      rs["type"] = prob.root_system->type;
    } else {
      rs["type"] = "custom";
      rs["simple_roots"] = nlohmann::json::array();
      for (const auto& r : prob.root_system->simple_roots)
        rs["simple_roots"].push_back(r.coeffs);
      rs["inner_product"] = prob.root_system->inner_product;
    }
  }
  return doc;
}

}  // namespace eqloc
