#include <catch2/catch_amalgamated.hpp>

#include "eqloc/dh.hpp"
#include "eqloc/fixtures.hpp"
#include "eqloc/oracles.hpp"
#include "eqloc/rng.hpp"

using namespace eqloc;

TEST_CASE("weight polarization flips and signs") {
  SECTION("one flip") {
    auto res = polarize_weights({Weight{{1}}, Weight{{-1}}}, CartanParameter{{1.0}});
    CHECK(res.polarized[0].coeffs == std::vector<int>{1});
    CHECK(res.polarized[1].coeffs == std::vector<int>{1});
    CHECK(res.sign == -1);
  }
  SECTION("no flips") {
    auto res = polarize_weights({Weight{{1}}, Weight{{1}}}, CartanParameter{{1.0}});
    CHECK(res.sign == +1);
  }
  SECTION("rank two") {
    auto res = polarize_weights({Weight{{1, 0}}, Weight{{-1, 1}}},
                                CartanParameter{{1.0, 0.1}});
    CHECK(res.polarized[0].coeffs == std::vector<int>{1, 0});
    CHECK(res.polarized[1].coeffs == std::vector<int>{1, -1});
    CHECK(res.sign == -1);
  }
  SECTION("singular direction") {
    CHECK_THROWS_WITH(
        polarize_weights({Weight{{1, -1}}}, CartanParameter{{1.0, 1.0}}),
        Catch::Matchers::ContainsSubstring("singular polarization"));
  }
}

TEST_CASE("sphere measure: constant density 2 pi on [-1, 1]") {
  auto m = dh_measure(fixture_s2().spec);
  REQUIRE(m.ambient_dim == 1);
  REQUIRE(m.pieces1d.size() == 1);
  CHECK(m.pieces1d[0].lo == Catch::Approx(-1.0));
  CHECK(m.pieces1d[0].hi == Catch::Approx(1.0));
  CHECK(m.atoms.empty());
  for (double z : {-0.9, -0.3, 0.0, 0.5, 0.99})
    CHECK(m.density_at({z}) == Catch::Approx(kTwoPi).epsilon(1e-12));
  CHECK(m.density_at({1.5}) == 0.0);
  CHECK(m.total_mass() == Catch::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("cp1 measure: density 2 pi on [0, 1]") {
  auto m = dh_measure(fixture_cp1().spec);
  CHECK(m.total_mass() == Catch::Approx(kTwoPi).epsilon(1e-12));
  CHECK(m.density_at({0.5}) == Catch::Approx(kTwoPi).epsilon(1e-12));
  CHECK(m.density_at({-0.5}) == 0.0);
}

TEST_CASE("a1 flag orbit measure has mass 2 pi and density pi") {
  auto m = dh_measure(fixture_flag("A1").spec);
  CHECK(m.density_at({0.0}) == Catch::Approx(kPi).epsilon(1e-12));
  CHECK(m.total_mass() == Catch::Approx(kTwoPi).epsilon(1e-12));
}

TEST_CASE("a single one-sided ray cannot come from a compact manifold") {
  ProblemSpec bad;
  bad.name = "unbounded";
  bad.torus_rank = 1;
  bad.dim_complex = 1;
  bad.fixed_points = {{"p", {0.0}, {Weight{{1}}}, +1}};
  CHECK_THROWS_WITH(dh_measure(bad),
                    Catch::Matchers::ContainsSubstring("unbounded support"));
}

TEST_CASE("fourier transform of the sphere measure matches the localized sum") {
  auto spec = fixture_s2().spec;
  SECTION("closed form at t = 1") {
    double v = dh_fourier(spec, CartanParameter{{1.0}});
    CHECK(v == Catch::Approx(kTwoPi * (std::exp(1.0) - std::exp(-1.0)))
                   .epsilon(1e-12));
  }
  SECTION("the t -> 0 limit recovers the total mass") {
    double v = dh_fourier(spec, CartanParameter{{1e-4}});
    CHECK(rel_diff(v, 4.0 * kPi) < 1e-6);
  }
}

TEST_CASE("fourier inversion residual is tiny in rank one") {
  for (const char* name : {"s2", "cp1", "a1-flag"}) {
    auto spec = fixture_by_name(name).spec;
    auto m = dh_measure(spec);
    for (double t : {0.3, 1.0, 5.0, -2.0}) {
      double res = verify_fourier_inversion(m, spec, CartanParameter{{t}});
      CHECK(res < 1e-10);
    }
  }
}

TEST_CASE("higher-weight convolutions produce polynomial densities") {
  // CP^2 restricted to the circle <(2,1), .>: the triangle pushes
  // forward to a tent. Densities frozen from the fiber-length oracle:
  // fiber of the unit triangle under u = 2x + y has length u/2 on
  // [0,1] and (2-u)/2 on [1,2], so the density is (2 pi)^2 times that.
  ProblemSpec spec;
  spec.name = "cp2-circle";
  spec.torus_rank = 1;
  spec.dim_complex = 2;
  spec.fixed_points = {
      {"p00", {0.0}, {Weight{{2}}, Weight{{1}}}, +1},
      {"p10", {2.0}, {Weight{{-2}}, Weight{{-1}}}, +1},
      {"p01", {1.0}, {Weight{{1}}, Weight{{-1}}}, +1},
  };
  auto m = dh_measure(spec);
  const double d = kTwoPi * kTwoPi;
  CHECK(m.density_at({0.5}) == Catch::Approx(d * 0.25).epsilon(1e-10));
  CHECK(m.density_at({1.5}) == Catch::Approx(d * 0.25).epsilon(1e-10));
  CHECK(m.density_at({1.0}) == Catch::Approx(d * 0.5).epsilon(1e-10));
  CHECK(m.total_mass() == Catch::Approx(d * 0.5).epsilon(1e-10));

  // Fourier inversion, and agreement with the rank-2 parent along the
  // embedded direction
  for (double t : {0.5, 2.0}) {
    CHECK(verify_fourier_inversion(m, spec, CartanParameter{{t}}) < 1e-10);
    double parent = dh_fourier(fixture_cp2().spec, CartanParameter{{2 * t, t}});
    CHECK(rel_diff(dh_fourier(spec, CartanParameter{{t}}), parent) < 1e-12);
  }
  // the tent is continuous at the interior breakpoint u = 1
  for (const auto& f : m.facets)
    if (std::abs(f.location[0] - 1.0) < 0.5) CHECK(f.continuous);
}

TEST_CASE("polarization independence in rank one") {
  auto spec = fixture_s2().spec;
  auto m_pos = dh_measure_with_direction(spec, CartanParameter{{1.0}});
  auto m_neg = dh_measure_with_direction(spec, CartanParameter{{-1.0}});
  RngStream rng(5);
  for (int i = 0; i < 50; ++i) {
    double c = rng.uniform(-1.5, 1.5), s = rng.uniform(0.2, 1.0);
    auto f = [&](const std::vector<double>& u) {
      double d = (u[0] - c) / s;
      return std::exp(-d * d);
    };
    CHECK(rel_diff(m_pos.integrate(f), m_neg.integrate(f)) < 1e-10);
  }
  CHECK(rel_diff(m_pos.total_mass(), m_neg.total_mass()) < 1e-12);
}

TEST_CASE("sl2r split data is not a compact pushforward") {
  CHECK_THROWS_WITH(dh_measure(fixture_sl2r_split().spec),
                    Catch::Matchers::ContainsSubstring("unbounded support"));
}

TEST_CASE("mass consistency: total mass equals the small-parameter limit") {
  // even in the parameter, so the symmetrized series limit kills the
  // first-moment term
  auto even_limit = [](const ProblemSpec& spec, double h) {
    double g1 = 0.5 * (dh_fourier(spec, CartanParameter{{h}}) +
                       dh_fourier(spec, CartanParameter{{-h}}));
    double g2 = 0.5 * (dh_fourier(spec, CartanParameter{{2 * h}}) +
                       dh_fourier(spec, CartanParameter{{-2 * h}}));
    return (4.0 * g1 - g2) / 3.0;
  };
  for (const char* name : {"s2", "cp1", "a1-flag"}) {
    auto spec = fixture_by_name(name).spec;
    auto m = dh_measure(spec);
    CHECK(rel_diff(even_limit(spec, 1e-3), m.total_mass()) < 1e-5);
  }
}
