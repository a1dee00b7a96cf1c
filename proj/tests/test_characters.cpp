#include <catch2/catch_amalgamated.hpp>

#include "eqloc/characters.hpp"
#include "eqloc/fixtures.hpp"
#include "eqloc/localize.hpp"
#include "eqloc/rng.hpp"

using namespace eqloc;

namespace {

// random complex parameter, rejected until every root pairing and the
// Weyl denominator are comfortably away from zero
ComplexParameter random_regular_complex(const RootSystem& rs, RngStream& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ComplexParameter x;
    for (int k = 0; k < rs.rank; ++k)
      x.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.2, 1.2));
    bool ok = true;
    for (const auto& alpha : rs.positive_roots)
      if (std::abs(pairing(alpha, x)) < 0.15) ok = false;
    if (!ok) continue;
    double max_term = 0.0;
    Complex den{};
    for (const auto& w : rs.weyl) {
      auto wr = w.apply(rs.rho);
      Complex t = double(w.sign);
      Complex e{};
      for (int k = 0; k < rs.rank; ++k) e += wr[k] * x[k];
      t *= std::exp(e);
      max_term = std::max(max_term, std::abs(t));
      den += t;
    }
    if (std::abs(den) > 1e-2 * max_term) return x;
  }
  FAIL("no regular complex parameter found");
  return {};
}

std::vector<Weight> dominant_weights_up_to(const RootSystem& rs, int height) {
  std::vector<Weight> out;
  if (rs.rank == 1) {
    for (int a = 0; a <= height; ++a) out.push_back(Weight{{a}});
  } else {
    for (int a = 0; a <= height; ++a)
      for (int b = 0; a + b <= height; ++b) out.push_back(Weight{{a, b}});
  }
  return out;
}

}  // namespace

TEST_CASE("spin one-half character at a quarter turn") {
  auto a1 = make_root_system("A1");
  // fixture normalization: <alpha, H> = 1, so X = i theta H has
  // coordinate i theta / 2 against the fundamental-weight basis
  double theta = kPi / 2.0;
  ComplexParameter x{Complex{0.0, theta / 2.0}};
  Complex chi = weyl_character(a1, Weight{{1}}, x);
  CHECK(std::abs(chi - Complex{std::sqrt(2.0), 0.0}) < 1e-12);

  // weight-sum oracle route for the same value
  Complex oracle = character_weight_sum_oracle(a1, Weight{{1}}, x);
  CHECK(std::abs(chi - oracle) < 1e-12);
}

TEST_CASE("spin one character weight sum hits 1 at c theta = pi/2") {
  auto a1 = make_root_system("A1");
  // weights of the spin-1 module are {-2, 0, 2}: the sum is
  // e^{i c theta} + 1 + e^{-i c theta} with c = <alpha, H> = 1
  double theta = kPi / 2.0;
  ComplexParameter x{Complex{0.0, theta / 2.0}};
  Complex v = character_weight_sum_oracle(a1, Weight{{2}}, x);
  CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("trivial representation has character 1") {
  RngStream rng(7);
  for (const char* type : {"A1", "A2", "B2"}) {
    auto rs = make_root_system(type);
    auto x = random_regular_complex(rs, rng);
    Complex chi = weyl_character(rs, Weight{std::vector<int>(rs.rank, 0)}, x);
    CHECK(std::abs(chi - Complex{1.0, 0.0}) < 1e-10);
  }
}

TEST_CASE("character at the origin limit is the dimension") {
  auto a2 = make_root_system("A2");
  // chi(hX) = dim + O(h^2); eliminate the h^2 term by Richardson
  std::vector<double> dir{0.31, 0.47};
  auto chi_at = [&](double h) {
    ComplexParameter x{Complex{dir[0] * h, 0.0}, Complex{dir[1] * h, 0.0}};
    return weyl_character(a2, Weight{{1, 0}}, x).real();
  };
  double extrap = (4.0 * chi_at(0.01) - chi_at(0.02)) / 3.0;
  CHECK(std::abs(extrap - 3.0) < 1e-6);
  CHECK(weyl_dimension(a2, Weight{{1, 0}}) == 3);
}

TEST_CASE("classic dimensions from the weight-sum oracle at the origin") {
  auto a2 = make_root_system("A2");
  auto dim_of = [](const RootSystem& rs, const Weight& lam) {
    long d = 0;
    for (const auto& [mu, m] : weight_multiplicities(rs, lam)) d += m;
    return d;
  };
  CHECK(dim_of(a2, Weight{{1, 1}}) == 8);   // adjoint
  CHECK(dim_of(a2, Weight{{1, 0}}) == 3);
  CHECK(dim_of(a2, Weight{{3, 0}}) == 10);
  CHECK(dim_of(a2, Weight{{2, 2}}) == 27);

  auto b2 = make_root_system("B2");
  CHECK(dim_of(b2, Weight{{1, 0}}) == 5);   // vector of so(5)
  CHECK(dim_of(b2, Weight{{0, 1}}) == 4);   // spinor
  CHECK(dim_of(b2, Weight{{0, 2}}) == 10);  // adjoint
  CHECK(dim_of(b2, Weight{{1, 1}}) == 16);

  // Freudenthal against the closed-form dimension for everything small
  for (const char* type : {"A1", "A2", "B2"}) {
    auto rs = make_root_system(type);
    for (const auto& lam : dominant_weights_up_to(rs, 5))
      CHECK(dim_of(rs, lam) == weyl_dimension(rs, lam));
  }
}

TEST_CASE("adjoint weight multiplicities of A2") {
  auto a2 = make_root_system("A2");
  auto mult = weight_multiplicities(a2, Weight{{1, 1}});
  CHECK(mult.at({1, 1}) == 1);
  CHECK(mult.at({0, 0}) == 2);   // Cartan directions
  CHECK(mult.at({2, -1}) == 1);  // the root alpha_1
  CHECK(mult.size() == 7);       // 6 roots + origin
}

TEST_CASE("oracle equivalence: weyl character equals the weight sum") {
  RngStream rng(11);
  for (const char* type : {"A1", "A2", "B2"}) {
    auto rs = make_root_system(type);
    for (const auto& lam : dominant_weights_up_to(rs, 8)) {
      for (int trial = 0; trial < 5; ++trial) {
        auto x = random_regular_complex(rs, rng);
        Complex a = weyl_character(rs, lam, x);
        Complex b = character_weight_sum_oracle(rs, lam, x);
        REQUIRE(rel_diff(a, b) < 1e-10);
      }
    }
  }
}

TEST_CASE("characters are invariant under the weyl action on the parameter") {
  RngStream rng(13);
  for (const char* type : {"A2", "B2"}) {
    auto rs = make_root_system(type);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_regular_complex(rs, rng);
      Weight lam{{int(rng.uniform(0, 4)), int(rng.uniform(0, 4))}};
      Complex base = weyl_character(rs, lam, x);
      for (const auto& w : rs.weyl) {
        auto wx = w.apply_cartan(x);
        CHECK(rel_diff(weyl_character(rs, lam, wx), base) < 1e-9);
      }
    }
  }
}

TEST_CASE("matching identity: orbit sum against the weyl character") {
  RngStream rng(17);
  for (const char* type : {"A1", "A2", "B2"}) {
    auto rs = make_root_system(type);
    for (int trial = 0; trial < 50; ++trial) {
      auto x = random_regular_complex(rs, rng);
      Weight lam;
      for (int k = 0; k < rs.rank; ++k)
        lam.coeffs.push_back(int(rng.uniform(0, 5)));
      std::vector<double> xi(rs.rank);
      for (int k = 0; k < rs.rank; ++k) xi[k] = lam.coeffs[k] + rs.rho[k];

      Complex lhs = orbit_fourier_sum(rs, xi, x);
      for (const auto& alpha : rs.positive_roots) lhs *= pairing(alpha, x);
      Complex rhs = weyl_character(rs, lam, x) * weyl_denominator_sum(rs, x);
      CHECK(rel_diff(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("two-term orbit sum on A1 written out") {
  auto a1 = make_root_system("A1");
  double t = 0.8;
  ComplexParameter x{Complex{t, 0.0}};
  Complex v = orbit_fourier_sum(a1, a1.rho, x);
  // (e^{t} - e^{-t}) / (2 t) with <rho, X> = t and <alpha, X> = 2t
  double expected = (std::exp(t) - std::exp(-t)) / (2.0 * t);
  CHECK(std::abs(v - Complex{expected, 0.0}) < 1e-13);
}

TEST_CASE("the flag fixture ties localization to the orbit sum") {
  // the a2 flag fixture is the fixed-point data of the coadjoint orbit
  // through rho, so the localized exponential sum must equal the orbit
  // Fourier sum times the normalization constant
  auto prob = fixture_flag("A2");
  auto rs = make_root_system("A2");
  RngStream rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    CartanParameter x{{rng.uniform(-2, 2), rng.uniform(-2, 2)}};
    bool regular = true;
    for (const auto& alpha : rs.positive_roots)
      if (std::abs(pairing(alpha, x.coords)) < 0.2) regular = false;
    if (!regular) continue;
    double localized = localize_integral(
        prob.spec, x, LocalizedIntegrand::exponential_of_moment());
    ComplexParameter cx = complexify(x);
    Complex orbit = orbit_fourier_sum(rs, rs.rho, cx);
    CHECK(rel_diff(localized, std::pow(kTwoPi, 3) * orbit.real()) < 1e-11);
    CHECK(std::abs(orbit.imag()) < 1e-12 * std::abs(orbit.real()));
  }
}

TEST_CASE("singular elements are rejected") {
  auto a2 = make_root_system("A2");
  // X on the alpha_1 wall: <alpha_1, X> = 2x - y = 0
  ComplexParameter on_wall{Complex{0.5, 0.0}, Complex{1.0, 0.0}};
  CHECK_THROWS_WITH(orbit_fourier_sum(a2, a2.rho, on_wall),
                    Catch::Matchers::ContainsSubstring("singular"));
  CHECK_THROWS_WITH(weyl_character(a2, Weight{{1, 0}}, on_wall),
                    Catch::Matchers::ContainsSubstring("singular"));
}

TEST_CASE("non-dominant weights and oversized heights are rejected") {
  auto a2 = make_root_system("A2");
  CHECK_THROWS_WITH(weyl_character(a2, Weight{{-1, 0}},
                                   ComplexParameter{Complex{0.3}, Complex{0.9}}),
                    Catch::Matchers::ContainsSubstring("dominant"));
  CHECK_THROWS_WITH(weight_multiplicities(a2, Weight{{10, 5}}),
                    Catch::Matchers::ContainsSubstring("height"));
}
