#include <catch2/catch_amalgamated.hpp>

#include "eqloc/fixtures.hpp"
#include "eqloc/localize.hpp"
#include "eqloc/oracles.hpp"
#include "eqloc/rng.hpp"

using namespace eqloc;

namespace {

CartanParameter random_regular(const ProblemSpec& spec, RngStream& rng,
                               double min_pairing = 0.25) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    CartanParameter x;
    x.coords.resize(spec.torus_rank);
    double n = 0.0;
    for (auto& c : x.coords) {
      c = rng.normal();
      n += c * c;
    }
    n = std::sqrt(n);
    for (auto& c : x.coords) c /= n;
    bool ok = true;
    for (const auto& p : spec.fixed_points)
      for (const auto& w : p.weights)
        if (std::abs(pairing(w, x)) < min_pairing) ok = false;
    if (ok) return x;
  }
  FAIL("no regular parameter found");
  return {};
}

}  // namespace

TEST_CASE("euler factors on the stock examples") {
  auto s2 = fixture_s2().spec;
  CHECK(euler_factor(s2.fixed_points[0], CartanParameter{{2.0}}) == 2.0);
  CHECK(euler_factor(s2.fixed_points[1], CartanParameter{{2.0}}) == -2.0);

  FixedPointDatum p{"q", {0.0, 0.0}, {Weight{{-1, 0}}, Weight{{-1, 1}}}, +1};
  CHECK(euler_factor(p, CartanParameter{{1.0, 3.0}}) == -2.0);

  CHECK_THROWS_WITH(euler_factor(s2.fixed_points[0], CartanParameter{{0.0}}),
                    Catch::Matchers::ContainsSubstring("singular"));
}

TEST_CASE("exponential localization on the sphere matches quadrature") {
  auto s2 = fixture_s2().spec;
  for (double t : {0.1, 1.0, 5.0}) {
    double localized = localize_integral(
        s2, CartanParameter{{t}}, LocalizedIntegrand::exponential_of_moment());
    double oracle = quadrature_integral_s2(t);
    CHECK(rel_diff(localized, oracle) < 1e-9);
    // closed form of the same integral
    double closed = kTwoPi * (std::exp(t) - std::exp(-t)) / t;
    CHECK(rel_diff(localized, closed) < 1e-12);
  }
  // frozen from the quadrature oracle (= 2 pi (e - 1/e))
  double at_one = localize_integral(s2, CartanParameter{{1.0}},
                                    LocalizedIntegrand::exponential_of_moment());
  CHECK(at_one == Catch::Approx(14.768013745765291).epsilon(1e-12));
  double at_five = localize_integral(s2, CartanParameter{{5.0}},
                                     LocalizedIntegrand::exponential_of_moment());
  CHECK(at_five == Catch::Approx(186.49300897916608).epsilon(1e-12));
}

TEST_CASE("degree-zero integrand localizes to zero") {
  RngStream rng(11);
  for (const char* name : {"s2", "cp2", "a2-flag"}) {
    auto spec = fixture_by_name(name).spec;
    for (int trial = 0; trial < 20; ++trial) {
      auto x = random_regular(spec, rng);
      double v = localize_integral(spec, x, LocalizedIntegrand::constant_form(1.0));
      CHECK(std::abs(v) < 1e-12);
    }
  }
}

TEST_CASE("euler form contributes one unit per fixed point") {
  RngStream rng(13);
  for (const char* name : {"s2", "cp1", "cp2", "a1-flag", "a2-flag", "sl2r-split"}) {
    auto spec = fixture_by_name(name).spec;
    auto x = random_regular(spec, rng);
    double v = localize_integral(spec, x, LocalizedIntegrand::euler_form());
    double expected = std::pow(kTwoPi, spec.dim_complex) *
                      double(spec.fixed_points.size());
    CHECK(rel_diff(v, expected) < 1e-12);
  }
}

TEST_CASE("euler characteristics of the fixtures") {
  CHECK(euler_characteristic(fixture_s2().spec) == 2);
  CHECK(euler_characteristic(fixture_cp2().spec) == 3);
  CHECK(euler_characteristic(fixture_flag("A2").spec) == 6);
}

TEST_CASE("euler characteristic is independent of the sampled parameter") {
  auto spec = fixture_cp2().spec;
  RngStream rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_regular(spec, rng);
    double raw = localize_integral(spec, x, LocalizedIntegrand::euler_form()) /
                 std::pow(kTwoPi, spec.dim_complex);
    CHECK(std::lround(raw) == 3);
    CHECK(std::abs(raw - 3.0) < 1e-9);
  }
}

TEST_CASE("localized sum is linear in a table integrand") {
  auto spec = fixture_cp2().spec;
  RngStream rng(19);
  auto x = random_regular(spec, rng);

  auto entry = [&](double c, double ax, double ay) {
    ExpPoly e;
    e.terms.push_back({c, {0, 0}, {ax, ay}});
    return e;
  };
  std::map<std::string, ExpPoly> fa, fb, fsum;
  int k = 0;
  for (const auto& p : spec.fixed_points) {
    fa[p.label] = entry(1.0 + k, 0.3, -0.2);
    fb[p.label] = entry(2.0 - k, -0.1, 0.4);
    ExpPoly both = fa[p.label];
    both.terms.push_back(fb[p.label].terms[0]);
    fsum[p.label] = both;
    ++k;
  }
  double va = localize_integral(spec, x, LocalizedIntegrand::from_table(fa));
  double vb = localize_integral(spec, x, LocalizedIntegrand::from_table(fb));
  double vs = localize_integral(spec, x, LocalizedIntegrand::from_table(fsum));
  CHECK(rel_diff(va + vb, vs) < 1e-12);
}

TEST_CASE("table integrands must cover every fixed point") {
  auto spec = fixture_s2().spec;
  std::map<std::string, ExpPoly> partial;
  partial["N"] = ExpPoly{{{1.0, {0}, {0.0}}}};
  CHECK_THROWS_WITH(localize_integral(spec, CartanParameter{{1.0}},
                                      LocalizedIntegrand::from_table(partial)),
                    Catch::Matchers::ContainsSubstring("no entry"));
}

TEST_CASE("dropping a fixed point breaks the degree-zero cancellation") {
  auto spec = fixture_cp2().spec;
  spec.fixed_points.pop_back();
  spec.name = "cp2-degraded";
  RngStream rng(23);
  auto x = random_regular(spec, rng);
  double v = localize_integral(spec, x, LocalizedIntegrand::constant_form(1.0));
  CHECK(std::abs(v) > 1e-3);  // generically far from zero
}

TEST_CASE("singular parameters are rejected loudly") {
  auto spec = fixture_s2().spec;
  CHECK_THROWS_WITH(localize_integral(spec, CartanParameter{{0.0}},
                                      LocalizedIntegrand::exponential_of_moment()),
                    Catch::Matchers::ContainsSubstring("singular"));
  auto cp2 = fixture_cp2().spec;
  CHECK_THROWS_AS(localize_integral(cp2, CartanParameter{{1.0, 1.0}},
                                    LocalizedIntegrand::exponential_of_moment()),
                  EvalError);
}

TEST_CASE("complex continuation agrees with the real path on the real axis") {
  auto spec = fixture_cp2().spec;
  RngStream rng(29);
  auto x = random_regular(spec, rng);
  double re = localize_integral(spec, x, LocalizedIntegrand::exponential_of_moment());
  ComplexParameter cx{{x.coords[0], 0.0}, {x.coords[1], 0.0}};
  Complex cv = localize_integral_complex(spec, cx,
                                         LocalizedIntegrand::exponential_of_moment());
  CHECK(rel_diff(cv, Complex{re, 0.0}) < 1e-12);
}
