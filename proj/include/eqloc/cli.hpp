#pragma once

// Command-line front end: subcommand dispatch, parameter parsing,
// structured reports, CSV emission. Kept in a header so the test suite
// can drive run_cli in-process; tools/main.cpp is a thin wrapper.

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqloc/characters.hpp"
#include "eqloc/config.hpp"
#include "eqloc/dh.hpp"
#include "eqloc/fixtures.hpp"
#include "eqloc/localize.hpp"
#include "eqloc/noncompact.hpp"
#include "eqloc/oracles.hpp"
#include "eqloc/report.hpp"

namespace eqloc {

namespace detail_cli {

inline Complex parse_complex_token(std::string s) {
  auto parse_real = [](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad numeric token '" + t + "'");
    }
    if (used != t.size()) throw ConfigError("bad numeric token '" + t + "'");
    return v;
  };
  if (s.empty()) throw ConfigError("empty parameter token");
  if (s.back() != 'i' && s.back() != 'I') return Complex{parse_real(s), 0.0};

  // pure imaginary or a+bi / a-bi
  s.pop_back();
  // split at the last +/- that is not a leading sign or exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return Complex{0.0, imag_of(s)};
  return Complex{parse_real(s.substr(0, split)), imag_of(s.substr(split))};
}

inline std::vector<Complex> parse_param(const std::string& raw) {
  std::string body = raw;
  if (body.rfind("X=", 0) == 0 || body.rfind("x=", 0) == 0) body = body.substr(2);
  std::vector<Complex> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos);
    if (tok.empty()) throw ConfigError("empty component in parameter '" + raw + "'");
    out.push_back(parse_complex_token(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("no components in parameter '" + raw + "'");
  return out;
}

inline CartanParameter require_real(const std::vector<Complex>& v) {
  CartanParameter x;
  for (const auto& c : v) {
    if (c.imag() != 0.0)
      throw ConfigError("this subcommand expects a real parameter");
    x.coords.push_back(c.real());
  }
  return x;
}

inline LocalizedIntegrand parse_integrand(const std::string& s) {
  if (s == "exp") return LocalizedIntegrand::exponential_of_moment();
  if (s == "euler") return LocalizedIntegrand::euler_form();
  if (s.rfind("const:", 0) == 0) {
    Complex c = parse_complex_token(s.substr(6));
    if (c.imag() != 0.0) throw ConfigError("constant integrand must be real");
    return LocalizedIntegrand::constant_form(c.real());
  }
  if (s == "const") return LocalizedIntegrand::constant_form(1.0);
  throw ConfigError("unknown integrand '" + s + "' (expected exp|const:c|euler)");
}

inline Problem load_from_options(const std::string& config_path,
                                 const std::string& fixture_name) {
  if (!config_path.empty() && !fixture_name.empty())
    throw ConfigError("--config and --fixture are mutually exclusive");
  if (!config_path.empty()) return load_problem_file(config_path);
  if (!fixture_name.empty()) return fixture_by_name(fixture_name);
  throw ConfigError("one of --config or --fixture is required");
}

// bump spec: center=c1,c2,radius=r,amp=a  (bare numbers continue the
// previous key, so vector-valued centers need no special syntax)
inline TestFunction parse_bump(const std::string& raw) {
  TestFunction phi;
  phi.radius = 0.0;
  std::string key;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t comma = raw.find(',', pos);
    std::string tok = raw.substr(pos, comma == std::string::npos
                                          ? std::string::npos
                                          : comma - pos);
    auto eq = tok.find('=');
    std::string value = tok;
    if (eq != std::string::npos) {
      key = tok.substr(0, eq);
      value = tok.substr(eq + 1);
    }
    if (value.empty()) throw ConfigError("bad bump token '" + tok + "'");
    Complex cv = parse_complex_token(value);
    if (cv.imag() != 0.0) throw ConfigError("bump parameters must be real");
    double v = cv.real();
    if (key == "center")
      phi.center.coords.push_back(v);
    else if (key == "radius")
      phi.radius = v;
    else if (key == "amp" || key == "amplitude")
      phi.amplitude = v;
    else
      throw ConfigError("unknown bump key '" + key + "'");
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (phi.center.coords.empty() || phi.radius <= 0.0)
    throw ConfigError("bump needs center=... and a positive radius=...");
  return phi;
}

inline void write_csv(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open CSV output '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_scalar(row[i]);
    out << "\r\n";
  }
}

inline std::string format_complex(Complex v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", v.real(), v.imag());
  return std::string(buf);
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("EQLOC_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

}  // namespace detail_cli

inline RunReport run_cli(std::vector<std::string> args, std::ostream& out) {
  RunReport report;

  CLI::App app{"equivariant localization workbench"};
  app.require_subcommand(1);

  std::string config_path, fixture_name, param_str, integrand_str = "exp";
  std::string emit_csv, bump_str, root_system_name, highest_weight_str;
  std::string what, scan_str, table_name = "config";
  std::uint64_t seed = detail_cli::default_seed();
  bool seed_given = false;
  long samples = 1000000;
  bool json_output = false;

  app.add_flag("--json", json_output, "emit the run report as canonical JSON");

  auto add_input_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration document (JSON)");
    cmd->add_option("--fixture", fixture_name,
                    "built-in fixture: s2|cp1|cp2|a1-flag|a2-flag|sl2r-split");
  };

  auto* cmd_localize = app.add_subcommand("localize", "evaluate the fixed-point localization sum");
  add_input_opts(cmd_localize);
  cmd_localize->add_option("--param", param_str, "X=c1,...,cr")->required();
  cmd_localize->add_option("--integrand", integrand_str, "exp|const:c|euler");

  auto* cmd_dh = app.add_subcommand("dh", "compute the Duistermaat-Heckman measure");
  add_input_opts(cmd_dh);
  cmd_dh->add_option("--emit-csv", emit_csv, "write a sampled-density CSV");
  cmd_dh->add_option("--seed", seed, "polarization sampling seed");

  auto* cmd_character = app.add_subcommand("character", "evaluate the Weyl character formula");
  cmd_character->add_option("--root-system", root_system_name, "A1|A2|B2")->required();
  cmd_character->add_option("--highest-weight", highest_weight_str, "l1,...,lr")->required();
  cmd_character->add_option("--param", param_str, "X=c1,...,cr (complex a+bi tokens allowed)")->required();
  cmd_character->add_option("--scan", scan_str, "t0:t1:n -- tabulate at t*X over the range");
  cmd_character->add_option("--emit-csv", emit_csv, "write the scanned character table");

  auto* cmd_pair = app.add_subcommand("pair", "pair the localized character against a bump");
  add_input_opts(cmd_pair);
  cmd_pair->add_option("--bump", bump_str, "center=c1[,c2],radius=r,amp=a")->required();
  cmd_pair->add_option("--integrand", integrand_str, "exp|const:c|euler");
  cmd_pair->add_option("--table", table_name, "config|discrete (sl2r-split only)");

  auto* cmd_verify = app.add_subcommand("verify", "run the brute-force oracles against the engines");
  cmd_verify->add_option("--fixture", fixture_name, "s2|cp1|cp2")->required();
  cmd_verify->add_option("--what", what, "localization|dh|hamiltonian")->required();
  cmd_verify->add_option("--seed", seed, "RNG seed (default EQLOC_SEED or 0)")
      ->each([&](const std::string&) { seed_given = true; });
  cmd_verify->add_option("--samples", samples, "Monte-Carlo sample count");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    report.command = "help";
    report.exit_code = 0;
    return report;
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n" << app.help();
    report.command = "parse-error";
    report.add_diagnostic(e.what());
    report.exit_code = 2;
    return report;
  }
  (void)seed_given;

  auto finish = [&](int code) {
    report.exit_code = code;
    if (json_output) out << report.to_json().dump(2) << "\n";
    return report;
  };
  auto emit_line = [&](const std::string& line) {
    if (!json_output) out << line << "\n";
  };

  try {
    if (cmd_localize->parsed()) {
      report.command = "localize";
      Problem prob = detail_cli::load_from_options(config_path, fixture_name);
      report.config_digest = fnv1a_hex(serialize_problem(prob).dump());
      auto f = detail_cli::parse_integrand(integrand_str);
      auto values = detail_cli::parse_param(param_str);
      if (int(values.size()) != prob.spec.torus_rank)
        throw ConfigError("parameter has " + std::to_string(values.size()) +
                          " components; torus rank is " +
                          std::to_string(prob.spec.torus_rank));
      bool complex_input = false;
      for (const auto& c : values)
        if (c.imag() != 0.0) complex_input = true;
      if (complex_input) {
        Complex v = localize_integral_complex(prob.spec, values, f);
        report.add_result("value_re", v.real());
        report.add_result("value_im", v.imag());
        emit_line(detail_cli::format_complex(v));
      } else {
        double v = localize_integral(prob.spec, detail_cli::require_real(values), f);
        report.add_result("value", v);
        emit_line(format_scalar(v));
      }
      return finish(0);
    }

    if (cmd_dh->parsed()) {
      report.command = "dh";
      Problem prob = detail_cli::load_from_options(config_path, fixture_name);
      report.config_digest = fnv1a_hex(serialize_problem(prob).dump());
      auto m = dh_measure(prob.spec, seed);

      nlohmann::json pieces = nlohmann::json::array();
      int index = 0;
      for (const auto& p : m.pieces1d) {
        nlohmann::json pj;
        pj["inequalities"] = {format_scalar(p.lo) + " <= s",
                              "s <= " + format_scalar(p.hi)};
        pj["coefficients"] = p.density.c;
        pj["mass"] = p.mass();
        emit_line("piece " + std::to_string(index++) + ": [" +
                  format_scalar(p.lo) + ", " + format_scalar(p.hi) +
                  "]; coeffs " + nlohmann::json(p.density.c).dump() +
                  "; mass " + format_scalar(p.mass()));
        pieces.push_back(std::move(pj));
      }
      for (const auto& p : m.pieces2d) {
        nlohmann::json pj;
        auto ineqs = nlohmann::json::array();
        std::string desc;
        for (const auto& h : p.support) {
          std::string s = format_scalar(h.a) + "*x " +
                          (h.b < 0 ? "- " : "+ ") +
                          format_scalar(std::abs(h.b)) + "*y <= " +
                          format_scalar(h.c);
          ineqs.push_back(s);
          desc += (desc.empty() ? "" : ", ") + s;
        }
        pj["inequalities"] = ineqs;
        pj["coefficients"] = p.density.c;
        pj["mass"] = p.mass();
        emit_line("piece " + std::to_string(index++) + ": {" + desc +
                  "}; coeffs " + nlohmann::json(p.density.c).dump() +
                  "; mass " + format_scalar(p.mass()));
        pieces.push_back(std::move(pj));
      }
      for (const auto& s : m.segments) {
        nlohmann::json pj;
        pj["segment_base"] = {s.base[0], s.base[1]};
        pj["segment_dir"] = {s.dir[0], s.dir[1]};
        pj["t_range"] = {s.t_lo, s.t_hi};
        pj["coefficients"] = s.density.c;
        pj["mass"] = s.mass();
        emit_line("segment " + std::to_string(index++) + ": dim 1; mass " +
                  format_scalar(s.mass()));
        pieces.push_back(std::move(pj));
      }
      report.add_result("pieces", pieces);
      report.add_result("total_mass", m.total_mass());
      emit_line("total_mass " + format_scalar(m.total_mass()));

      if (!emit_csv.empty()) {
        std::vector<std::vector<double>> rows;
        if (m.ambient_dim == 1) {
          double lo = 1e300, hi = -1e300;
          for (const auto& p : m.pieces1d) {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi);
          }
          double pad = 0.05 * (hi - lo);
          for (int i = 0; i <= 512; ++i) {
            double s = lo - pad + (hi - lo + 2 * pad) * i / 512.0;
            rows.push_back({s, m.density_at({s})});
          }
          detail_cli::write_csv(emit_csv, {"s", "density"}, rows);
        } else {
          double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
          for (const auto& p : m.pieces2d)
            for (const auto& v : p.polygon) {
              lo0 = std::min(lo0, v[0]);
              hi0 = std::max(hi0, v[0]);
              lo1 = std::min(lo1, v[1]);
              hi1 = std::max(hi1, v[1]);
            }
          for (int i = 0; i <= 128; ++i)
            for (int j = 0; j <= 128; ++j) {
              double x = lo0 + (hi0 - lo0) * i / 128.0;
              double y = lo1 + (hi1 - lo1) * j / 128.0;
              rows.push_back({x, y, m.density_at({x, y})});
            }
          detail_cli::write_csv(emit_csv, {"x", "y", "density"}, rows);
        }
      }
      return finish(0);
    }

    if (cmd_character->parsed()) {
      report.command = "character";
      RootSystem rs = make_root_system(root_system_name);
      nlohmann::json digest_doc;
      digest_doc["root_system"] = root_system_name;
      digest_doc["highest_weight"] = highest_weight_str;
      report.config_digest = fnv1a_hex(digest_doc.dump());

      Weight lambda;
      for (const auto& tok : detail_cli::parse_param(highest_weight_str)) {
        if (tok.imag() != 0.0 || tok.real() != std::floor(tok.real()))
          throw ConfigError("highest weight must be a vector of integers");
        lambda.coeffs.push_back(int(tok.real()));
      }
      if (int(lambda.coeffs.size()) != rs.rank)
        throw ConfigError("highest weight length does not match the rank");
      auto x = detail_cli::parse_param(param_str);
      if (int(x.size()) != rs.rank)
        throw ConfigError("parameter length does not match the rank");

      Complex v = weyl_character(rs, lambda, x);
      report.add_result("value_re", v.real());
      report.add_result("value_im", v.imag());
      emit_line(detail_cli::format_complex(v));

      if (!scan_str.empty() && !emit_csv.empty()) {
        double t0, t1;
        int n;
        if (std::sscanf(scan_str.c_str(), "%lf:%lf:%d", &t0, &t1, &n) != 3 || n < 2)
          throw ConfigError("bad --scan (expected t0:t1:n)");
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < n; ++i) {
          double t = t0 + (t1 - t0) * i / (n - 1);
          ComplexParameter xt;
          for (const auto& c : x) xt.push_back(t * c);
          try {
            Complex vt = weyl_character(rs, lambda, xt);
            rows.push_back({t, vt.real(), vt.imag()});
          } catch (const EvalError&) {
            // wall crossings inside the scan window are skipped
          }
        }
        detail_cli::write_csv(emit_csv, {"t", "re", "im"}, rows);
      }
      return finish(0);
    }

    if (cmd_pair->parsed()) {
      report.command = "pair";
      Problem prob = detail_cli::load_from_options(config_path, fixture_name);
      report.config_digest = fnv1a_hex(serialize_problem(prob).dump());
      if (!prob.multiplicities)
        throw ConfigError("pair requires a cycle block (chambers and "
                          "multiplicities) in the configuration");
      MultiplicityTable mt = *prob.multiplicities;
      if (table_name == "discrete") {
        if (prob.spec.name != "sl2r-split")
          throw ConfigError("--table discrete is only defined for sl2r-split");
        mt = sl2r_discrete_series_table();
      } else if (table_name != "config") {
        throw ConfigError("unknown --table '" + table_name + "'");
      }
      auto phi = detail_cli::parse_bump(bump_str);
      if (int(phi.center.coords.size()) != prob.spec.torus_rank)
        throw ConfigError("bump center length does not match torus rank");
      auto f = detail_cli::parse_integrand(integrand_str);
      auto res = pair_distribution(prob.spec, mt, f, phi);
      report.add_result("value", res.value);
      report.add_result("quadrature_order", res.order);
      report.add_result("converged", res.converged);
      if (!res.converged)
        report.add_diagnostic(
            "quadrature non-convergence warning: refinement still moved the "
            "value by " + format_scalar(res.last_rel_change));
      emit_line(format_scalar(res.value));
      for (const auto& d : report.diagnostics) emit_line("warning: " + d);
      return finish(0);
    }

    if (cmd_verify->parsed()) {
      report.command = "verify";
      Problem prob = fixture_by_name(fixture_name);
      report.config_digest = fnv1a_hex(serialize_problem(prob).dump());
      bool all_pass = true;
      auto check = [&](const std::string& name, double value, double threshold,
                       bool smaller_is_pass = true) {
        bool pass = smaller_is_pass ? value < threshold : value >= threshold;
        all_pass = all_pass && pass;
        nlohmann::json cj;
        cj["value"] = value;
        cj["threshold"] = threshold;
        cj["pass"] = pass;
        report.add_result(name, cj);
        emit_line(name + ": value=" + format_scalar(value) +
                  " threshold=" + format_scalar(threshold) +
                  (pass ? " PASS" : " FAIL"));
      };

      if (what == "localization") {
        std::vector<CartanParameter> params;
        if (prob.spec.torus_rank == 1)
          params = {CartanParameter{{0.1}}, CartanParameter{{1.0}},
                    CartanParameter{{5.0}}};
        else
          params = {CartanParameter{{1.0, 3.0}}, CartanParameter{{0.7, -0.4}},
                    CartanParameter{{2.0, 0.9}}};
        for (const auto& x : params) {
          double engine = localize_integral(
              prob.spec, x, LocalizedIntegrand::exponential_of_moment());
          double oracle = chart_exponential_integral(fixture_name, x);
          std::string label = "localization[X=";
          for (std::size_t k = 0; k < x.coords.size(); ++k)
            label += (k ? "," : "") + format_scalar(x.coords[k]);
          label += "]";
          check(label, rel_diff(engine, oracle), 1e-9);
        }
      } else if (what == "dh") {
        auto surface = surface_by_name(fixture_name);
        auto m = dh_measure(prob.spec, seed);
        GridSpec grid;
        double threshold;
        if (prob.spec.torus_rank == 1) {
          double lo = 1e300, hi = -1e300;
          for (const auto& p : m.pieces1d) {
            lo = std::min(lo, p.lo);
            hi = std::max(hi, p.hi);
          }
          grid = {{lo}, {hi}, {40}};
          threshold = 0.01;
        } else {
          grid = {{-0.05, -0.05}, {1.05, 1.05}, {12, 12}};
          threshold = 0.02;
        }
        auto h = monte_carlo_pushforward(surface, samples, grid, seed);
        double d = histogram_l1_distance(h, m) / m.total_mass();
        check("dh_l1_distance_fraction", d, threshold);
        if (!emit_csv.empty()) {
          auto exact = measure_bin_masses(m, grid);
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < h.masses.size(); ++i)
            rows.push_back({double(i), h.masses[i], exact[i]});
          detail_cli::write_csv(emit_csv, {"bin", "monte_carlo", "exact"}, rows);
        }
      } else if (what == "hamiltonian") {
        auto surface = surface_by_name(fixture_name);
        CartanParameter x;
        x.coords.assign(prob.spec.torus_rank, 1.0);
        long pts = std::min<long>(samples, 10000);
        auto res = check_hamiltonian_identity(surface, x, pts, 1e-5, seed);
        check("hamiltonian_residual", res.max_residual, 1e-6);
        report.add_result("points_skipped", res.points_skipped);
        if (fixture_name != "cp2") {
          // order check where the moment map is nonlinear in the chart
          auto full = check_hamiltonian_identity(surface, x, pts, 1e-3, seed);
          auto half = check_hamiltonian_identity(surface, x, pts, 5e-4, seed);
          double factor = full.max_residual / half.max_residual;
          check("hamiltonian_h_scaling_low", factor, 3.5, false);
          check("hamiltonian_h_scaling_high", factor, 4.5);
        }
      } else {
        throw ConfigError("unknown --what '" + what +
                          "' (expected localization|dh|hamiltonian)");
      }
      return finish(all_pass ? 0 : 1);
    }
  } catch (const ConfigError& e) {
    report.add_diagnostic(e.what());
    emit_line(std::string("error: ") + e.what());
    return finish(2);
  } catch (const EvalError& e) {
    report.add_diagnostic(e.what());
    emit_line(std::string("error: ") + e.what());
    return finish(1);
  }

  report.add_diagnostic("no subcommand executed");
  return finish(2);
}

}  // namespace eqloc
