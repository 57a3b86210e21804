#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morsetower/bidirect.hpp"

using namespace morsetower;

namespace {
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

std::vector<Rational> grid_of(std::initializer_list<long> vs) {
  std::vector<Rational> g;
  for (long v : vs) g.emplace_back(v);
  return g;
}
}  // namespace

TEST_CASE("intro 3x3 grid over F2: dimensions from the window formula") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 6, F2);
  BidirectGrid grid(t, grid_of({-3, -2, -1}), grid_of({1, 2, 3}));
  std::size_t expected[3][3] = {{2, 1, 0}, {1, 0, 1}, {0, 1, 2}};
  for (std::size_t ai = 0; ai < 3; ++ai)
    for (std::size_t bi = 0; bi < 3; ++bi)
      CHECK(grid.group(ai, bi).module().free_rank() == expected[ai][bi]);
}

TEST_CASE("appendix 2x2 grid over Z: free rank 2 for b >= 0") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 8, Z);
  BidirectGrid grid(t, grid_of({-4, -2}), grid_of({0, 1}));
  for (std::size_t ai = 0; ai < 2; ++ai)
    for (std::size_t bi = 0; bi < 2; ++bi) {
      CHECK(grid.group(ai, bi).module().free_rank() == 2);
      CHECK(grid.group(ai, bi).module().invariant_factors().empty());
    }
}

TEST_CASE("grid guards") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 6, Q);
  CHECK_THROWS(BidirectGrid(t, grid_of({-1, -2}), grid_of({1})));
  CHECK_THROWS(BidirectGrid(t, grid_of({2}), grid_of({1})));
  CHECK_THROWS(BidirectGrid(t, {}, grid_of({1})));
}

TEST_CASE("1x1 grid") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 6, Q);
  BidirectGrid grid(t, grid_of({-2}), grid_of({2}));
  auto kap = canonical_kappa(grid);
  CHECK(kap.all_pass());
  CHECK(kap.kappa->matrix().is_identity());
}

TEST_CASE("constant grid: all windows coincide, kappa is the identity") {
  auto t = random_triple(3, 8, 2, Q);  // actions within a few units of 0
  BidirectGrid grid(t, grid_of({-20, -19}), grid_of({19, 20}));
  for (std::size_t ai = 0; ai + 1 < 2; ++ai)
    CHECK(grid.hp(ai, 0).matrix().is_identity());
  auto kap = canonical_kappa(grid);
  CHECK(kap.all_pass());
  CHECK(kap.kappa->matrix().is_identity());
}

TEST_CASE("canonical kappa on family grids") {
  auto ti = builtin_family(BuiltinFamily::IntroLines, 6, F2);
  BidirectGrid gi(ti, grid_of({-4, -3, -2, -1}), grid_of({1, 2, 3, 4}));
  auto ki = canonical_kappa(gi);
  CHECK(ki.defining_identity);
  CHECK(ki.diagram_commutes);
  CHECK(ki.compatible);
  CHECK(ki.unique);
  CHECK(ki.kappa->is_surjective());

  auto tz = builtin_family(BuiltinFamily::AppendixZ, 8, Z);
  BidirectGrid gz(tz, grid_of({-5, -3, -1}), grid_of({0, 1}));
  auto kz = canonical_kappa(gz);
  CHECK(kz.all_pass());
  CHECK(kz.kappa->is_surjective());
}

TEST_CASE("tameness maps on a field grid") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 6, F2);
  BidirectGrid grid(t, grid_of({-3, -2, -1}), grid_of({1, 2, 3}));
  auto tam = tameness_maps(grid);
  CHECK(tam.characterizations_hold);
  CHECK(tam.mu_a_iso);
  CHECK(tam.nu_b_iso);
  CHECK(tam.mu_iso);
  CHECK(tam.tame);
  CHECK(tam.nu_surjective);
  REQUIRE(tam.rho.has_value());
  CHECK(tam.rho->is_isomorphism());
  REQUIRE(tam.sigma.has_value());
}

TEST_CASE("grid towers agree with standalone towers") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 8, Z);
  auto ag = grid_of({-5, -4, -3, -2, -1});
  BidirectGrid grid(t, ag, grid_of({0}));
  auto gt = grid.a_tower(0);
  auto st = build_a_tower(t, Rational(0), ag, TowerLevel::Homology);
  REQUIRE(gt.size() == st.size());
  for (std::size_t i = 0; i < gt.size(); ++i)
    CHECK(gt.module_at(i).same_normal_form(st.module_at(i)));
  auto ge = eventual_images(gt);
  auto se = eventual_images(st);
  CHECK(ge.stabilized == se.stabilized);
  CHECK(ge.levels.back().images.front().elementary_divisors ==
        se.levels.back().images.front().elementary_divisors);
}

TEST_CASE("theorem A harness certifies over fields") {
  auto schedule = canonical_schedule(5);
  for (auto fam : {BuiltinFamily::IntroLines, BuiltinFamily::AppendixZ}) {
    for (const auto& ring : {F2, Q}) {
      auto t = builtin_family(fam, 8, ring);
      auto report = theorem_a_harness(t, schedule);
      CHECK(report.certified);
      for (const auto& res : report.per_grid) {
        CHECK(res.k_iso);
        CHECK(res.hk_iso);
        CHECK(res.diagram_commutes);
        CHECK(res.rho_iso);
        CHECK(res.kappa_surjective);
        CHECK(res.tame);
      }
    }
  }
}

TEST_CASE("theorem A harness withholds certification over Z") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 10, Z);
  auto report = theorem_a_harness(t, canonical_schedule(6));
  CHECK(!report.certified);
  CHECK(report.diagnostic.find("integer") != std::string::npos);
  Integer expect(1);
  for (std::size_t g = 0; g < report.per_grid.size(); ++g) {
    const auto& res = report.per_grid[g];
    // depth d = g + 2; image divisor at level -1 from depth -d is 2^(d-2)
    REQUIRE(res.shallow_image_divisors.size() == 1);
    CHECK(res.shallow_image_divisors[0] == expect);
    expect *= 2;
    if (g > 0) CHECK(!res.images_stabilized);
    if (g > 0) CHECK(res.ml.kind == MlCertificateKind::Indeterminate);
  }
}
