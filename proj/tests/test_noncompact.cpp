#include <catch2/catch_amalgamated.hpp>

#include "eqloc/fixtures.hpp"
#include "eqloc/noncompact.hpp"
#include "eqloc/rng.hpp"

using namespace eqloc;

namespace {

CartanParameter random_regular(const ProblemSpec& spec, RngStream& rng,
                               double min_pairing = 0.15) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    CartanParameter x;
    x.coords.resize(spec.torus_rank);
    for (auto& c : x.coords) c = rng.uniform(-2.0, 2.0);
    bool ok = true;
    for (const auto& p : spec.fixed_points)
      for (const auto& w : p.weights)
        if (std::abs(pairing(w, x)) < min_pairing) ok = false;
    if (ok) return x;
  }
  FAIL("no regular parameter found");
  return {};
}

// stratified Monte-Carlo for the bump integral, reduced to the radial
// profile by spherical symmetry: independent of the quadrature path
double bump_integral_mc(const TestFunction& phi, int dim, long n_samples,
                        std::uint64_t seed) {
  RngStream rng(seed);
  const long strata = 2000;
  const long per = n_samples / strata;
  double acc = 0.0;
  for (long s = 0; s < strata; ++s) {
    double lo = double(s) / strata;
    double width = 1.0 / strata;
    double local = 0.0;
    for (long i = 0; i < per; ++i) {
      double rho = lo + width * rng.uniform();
      double g = std::exp(-1.0 / (1.0 - rho * rho));
      local += (dim == 1) ? g : rho * g;
    }
    acc += local / double(per) * width;
  }
  double surface = (dim == 1) ? 2.0 : kTwoPi;
  return phi.amplitude * surface * std::pow(phi.radius, dim) * acc;
}

}  // namespace

TEST_CASE("m == 1 reduces bitwise to the classical localized sum") {
  RngStream rng(3);
  for (const char* name : {"s2", "cp2", "a2-flag", "sl2r-split"}) {
    Problem prob = fixture_by_name(name);
    const auto& mt = *prob.multiplicities;
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_regular(prob.spec, rng);
      double classical = localize_integral(
          prob.spec, x, LocalizedIntegrand::exponential_of_moment());
      double weighted = noncompact_character(
          prob.spec, mt, x, LocalizedIntegrand::exponential_of_moment());
      REQUIRE(weighted == classical);  // identical arithmetic path
    }
  }
}

TEST_CASE("a single-entry table selects exactly one contribution") {
  Problem prob = fixture_cp2();
  auto spec = prob.spec;
  MultiplicityTable mt = *prob.multiplicities;
  for (auto& [label, row] : mt.entries)
    for (auto& [chamber, v] : row) v = (label == "p10") ? 1 : 0;

  RngStream rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_regular(spec, rng);
    double val = noncompact_character(spec, mt, x,
                                      LocalizedIntegrand::exponential_of_moment());
    const auto& p = spec.fixed_points[1];
    REQUIRE(p.label == "p10");
    double expected = std::pow(kTwoPi, 2) *
                      std::exp(pairing(p.moment, x)) / euler_factor(p, x);
    CHECK(rel_diff(val, expected) < 1e-14);
  }
}

TEST_CASE("sl2r principal-series closed form on the split chambers") {
  const double nu = 1.0;
  Problem prob = fixture_sl2r_split(nu);
  // two-term sum in closed form: both denominators equal 2t on the
  // split chambers with the fixture's orientation signs
  for (double t : {0.4, 1.0, 2.3, -0.7, -1.6}) {
    double val = noncompact_character(prob.spec, *prob.multiplicities,
                                      CartanParameter{{t}},
                                      LocalizedIntegrand::exponential_of_moment());
    double closed = kPi * (std::exp(nu * t) + std::exp(-nu * t)) / t;
    CHECK(rel_diff(val, closed) < 1e-13);
  }
}

TEST_CASE("discrete-series style table is nonvanishing on the split set") {
  Problem prob = fixture_sl2r_split();
  auto mt = sl2r_discrete_series_table();
  for (double t : {0.2, 0.5, 1.0, 1.7, 2.5}) {
    double vp = noncompact_character(prob.spec, mt, CartanParameter{{t}},
                                     LocalizedIntegrand::exponential_of_moment());
    CHECK(rel_diff(vp, kPi * std::exp(t) / t) < 1e-13);
    CHECK(std::abs(vp) > 0.1);
    double vm = noncompact_character(prob.spec, mt, CartanParameter{{-t}},
                                     LocalizedIntegrand::exponential_of_moment());
    CHECK(std::abs(vm) > 0.1);
  }
}

TEST_CASE("one-sided wall limits expose differing multiplicities") {
  Problem prob = fixture_sl2r_split();
  MultiplicityTable mt = *prob.multiplicities;
  mt.entries["q+"]["split-"] = 2;
  mt.entries["q-"]["split-"] = 3;
  auto exp_i = LocalizedIntegrand::exponential_of_moment();
  // t * F(t) tends to pi * (sum of multiplicities) at the wall
  double eps = 1e-5;
  double from_plus = eps * noncompact_character(prob.spec, mt,
                                                CartanParameter{{eps}}, exp_i);
  double from_minus = -eps * noncompact_character(prob.spec, mt,
                                                  CartanParameter{{-eps}}, exp_i);
  CHECK(rel_diff(from_plus, 2.0 * kPi) < 1e-4);
  CHECK(rel_diff(from_minus, 5.0 * kPi) < 1e-4);
  CHECK(std::abs(from_plus - from_minus) > 1.0);
}

TEST_CASE("smooth inside a chamber: bounded second differences") {
  Problem prob = fixture_sl2r_split();
  auto mt = sl2r_discrete_series_table();
  auto exp_i = LocalizedIntegrand::exponential_of_moment();
  auto F = [&](double t) {
    return noncompact_character(prob.spec, mt, CartanParameter{{t}}, exp_i);
  };
  double h = 1e-3;
  for (double t : {0.5, 1.0, 1.5, 2.0}) {
    double second = (F(t + h) - 2.0 * F(t) + F(t - h)) / (h * h);
    CHECK(std::abs(second) < 100.0);
  }
}

TEST_CASE("weyl-invariant tables give weyl-invariant values") {
  Problem prob = fixture_flag("A2");
  const auto& rs = *prob.root_system;
  RngStream rng(7);
  auto exp_i = LocalizedIntegrand::exponential_of_moment();
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_regular(prob.spec, rng, 0.3);
    double base = noncompact_character(prob.spec, *prob.multiplicities, x, exp_i);
    for (const auto& w : rs.weyl) {
      CartanParameter wx{w.apply_cartan(x.coords)};
      double moved = noncompact_character(prob.spec, *prob.multiplicities, wx, exp_i);
      CHECK(rel_diff(moved, base) < 1e-11);
    }
  }
}

TEST_CASE("chamber errors are reported") {
  Problem prob = fixture_sl2r_split();
  MultiplicityTable half = *prob.multiplicities;
  half.chambers.pop_back();  // drop split-
  auto exp_i = LocalizedIntegrand::exponential_of_moment();
  CHECK_THROWS_WITH(
      noncompact_character(prob.spec, half, CartanParameter{{-1.0}}, exp_i),
      Catch::Matchers::ContainsSubstring("no declared chamber"));

  MultiplicityTable missing = *prob.multiplicities;
  missing.entries["q+"].erase("split+");
  CHECK_THROWS_WITH(
      noncompact_character(prob.spec, missing, CartanParameter{{1.0}}, exp_i),
      Catch::Matchers::ContainsSubstring("missing multiplicity"));

  CHECK_THROWS_WITH(
      noncompact_character(prob.spec, *prob.multiplicities,
                           CartanParameter{{0.0}}, exp_i),
      Catch::Matchers::ContainsSubstring("singular"));
}

TEST_CASE("pairing with the euler-form integrand matches the bump oracle") {
  // F is the constant (2 pi)^n * #points for the euler form, so the
  // pairing is that constant times the integral of the bump.
  Problem prob = fixture_sl2r_split();
  TestFunction phi{CartanParameter{{2.0}}, 0.5, 1.3};
  auto res = pair_distribution(prob.spec, *prob.multiplicities,
                               LocalizedIntegrand::euler_form(), phi);
  CHECK(res.converged);
  double constant = kTwoPi * 2.0;
  double oracle = constant * bump_integral_mc(phi, 1, 4000000, 99);
  CHECK(rel_diff(res.value, oracle) < 1e-4);
}

TEST_CASE("zero amplitude pairs to zero") {
  Problem prob = fixture_sl2r_split();
  TestFunction phi{CartanParameter{{1.5}}, 0.4, 0.0};
  auto res = pair_distribution(prob.spec, *prob.multiplicities,
                               LocalizedIntegrand::exponential_of_moment(), phi);
  CHECK(res.value == 0.0);
}

TEST_CASE("supports touching a wall are rejected") {
  Problem prob = fixture_sl2r_split();
  TestFunction phi{CartanParameter{{0.3}}, 0.4, 1.0};
  CHECK_THROWS_WITH(
      pair_distribution(prob.spec, *prob.multiplicities,
                        LocalizedIntegrand::exponential_of_moment(), phi),
      Catch::Matchers::ContainsSubstring("touches the wall"));
}

TEST_CASE("pairing is stable under quadrature refinement") {
  Problem prob = fixture_sl2r_split();
  auto mt = sl2r_discrete_series_table();
  TestFunction phi{CartanParameter{{1.5}}, 0.5, 1.0};
  auto exp_i = LocalizedIntegrand::exponential_of_moment();
  auto res = pair_distribution(prob.spec, mt, exp_i, phi);
  CHECK(res.converged);
  CHECK(res.last_rel_change < 1e-6);
  CHECK(res.value > 0.0);
  // doubling the starting order does not move the answer
  auto res2 = pair_distribution(prob.spec, mt, exp_i, phi, 16);
  CHECK(rel_diff(res.value, res2.value) < 1e-6);
}
