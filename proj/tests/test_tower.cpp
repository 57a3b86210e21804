#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morsetower/tower.hpp"

using namespace morsetower;

namespace {
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::prime_field(2);
const CoefficientRing F3 = CoefficientRing::prime_field(3);

std::vector<Rational> int_grid(long lo, long hi) {
  std::vector<Rational> g;
  for (long v = lo; v <= hi; ++v) g.emplace_back(v);
  return g;
}

Integer pow2(unsigned e) {
  Integer r(1);
  for (unsigned i = 0; i < e; ++i) r *= 2;
  return r;
}
}  // namespace

TEST_CASE("a-tower of the intro family: dimensions 6..0") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, F2);
  auto tower = build_a_tower(t, Rational(0), int_grid(-6, 0), TowerLevel::Homology);
  REQUIRE(tower.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(tower.module_at(i).free_rank() == 6 - i);
}

TEST_CASE("a-tower of the appendix family: free rank 2 throughout") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 8, Z);
  auto tower = build_a_tower(t, Rational(0), int_grid(-6, -1), TowerLevel::Homology);
  for (std::size_t i = 0; i < tower.size(); ++i) {
    CHECK(tower.module_at(i).free_rank() == 2);
    CHECK(tower.module_at(i).invariant_factors().empty());
  }
}

TEST_CASE("single-index tower") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 4, Q);
  auto tower = build_a_tower(t, Rational(0), {Rational(-2)}, TowerLevel::Homology);
  REQUIRE(tower.size() == 1);
  auto lim = grid_inverse_limit(tower);
  CHECK(lim.module.same_normal_form(tower.module_at(0)));
  CHECK(lim.structure_maps[0].matrix().is_identity());
  CHECK(lim.truncation_tag == "grid_truncation");
}

TEST_CASE("grid inverse limit of the intro tower: dim 6, surjective projections") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, F2);
  auto tower = build_a_tower(t, Rational(0), int_grid(-6, 0), TowerLevel::Homology);
  auto lim = grid_inverse_limit(tower);
  CHECK(lim.module.free_rank() == 6);
  for (const auto& p : lim.structure_maps) CHECK(p.is_surjective());
  CHECK_THROWS(grid_direct_limit(tower));
}

TEST_CASE("grid direct limit of the intro b-tower: dim 3, early class dies") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, Q);
  auto tower = build_b_tower(t, Rational(-5, 2), int_grid(1, 5), TowerLevel::Homology);
  REQUIRE(tower.module_at(0).free_rank() == 1);  // [cund2] at b = 1
  auto lim = grid_direct_limit(tower);
  CHECK(lim.module.free_rank() == 3);  // [cbar3], [cbar4], [cbar5]
  CHECK(lim.structure_maps[0].is_zero_map());
  CHECK(lim.structure_maps.back().matrix().is_identity());
  CHECK_THROWS(grid_inverse_limit(tower));
}

TEST_CASE("constant tower with identity maps") {
  auto m = PresentedModule::free_module(Q, {"x", "y"});
  std::vector<PresentedModule> mods(4, m);
  std::vector<ModuleMap> ts(3, ModuleMap::identity(m));
  Tower tower(TowerDirection::TowardPlusInfinity, int_grid(0, 3), mods, ts);
  auto lim = grid_direct_limit(tower);
  CHECK(lim.module.same_normal_form(m));
  for (const auto& i : lim.structure_maps) CHECK(i.matrix().is_identity());
  CHECK(direct_limit_quotient(tower).same_normal_form(m));
}

TEST_CASE("direct limit quotient oracle on family and random towers") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, Q);
  auto tower = build_b_tower(t, Rational(-5, 2), int_grid(1, 5), TowerLevel::Homology);
  CHECK(direct_limit_quotient(tower).same_normal_form(grid_direct_limit(tower).module));

  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    for (const auto& ring : {F3, Q, Z}) {
      auto rt = random_triple(seed, 9, 3, ring);
      auto tw = build_b_tower(rt, Rational(-4), int_grid(-1, 2), TowerLevel::Homology);
      CHECK(direct_limit_quotient(tw).same_normal_form(grid_direct_limit(tw).module));
      auto tc = build_b_tower(rt, Rational(-4), int_grid(-1, 2), TowerLevel::Chain);
      CHECK(direct_limit_quotient(tc).same_normal_form(grid_direct_limit(tc).module));
    }
  }
}

TEST_CASE("eventual images: surjective intro tower is full everywhere") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, F2);
  auto tower = build_a_tower(t, Rational(0), int_grid(-6, 0), TowerLevel::Homology);
  auto rep = eventual_images(tower, 3);
  CHECK(rep.stabilized);
  for (const auto& lvl : rep.levels) {
    CHECK(lvl.monotone);
    for (const auto& img : lvl.images) CHECK(img.rank == lvl.images.back().rank);
  }
  auto ml = mittag_leffler(tower);
  CHECK(ml.kind == MlCertificateKind::SurjectiveCriterion);
}

TEST_CASE("eventual images: appendix over Z shrink as powers of two") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 14, Z);
  for (long n = 3; n <= 8; ++n) {
    auto tower = build_a_tower(t, Rational(0), int_grid(-n, -1), TowerLevel::Homology);
    auto rep = eventual_images(tower, 3);
    const auto& shallow = rep.levels.back();  // level a = -1
    CHECK(shallow.level == Rational(-1));
    const auto& deepest = shallow.images.front();  // image from a = -n
    CHECK(deepest.rank == 1);
    REQUIRE(deepest.elementary_divisors.size() == 1);
    CHECK(deepest.elementary_divisors[0] == pow2(static_cast<unsigned>(n - 2)));
    CHECK(!rep.stabilized);
    auto ml = mittag_leffler(tower);
    CHECK(ml.kind == MlCertificateKind::Indeterminate);
  }
}

TEST_CASE("eventual images: appendix over F2 stabilize at zero") {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 10, F2);
  auto tower = build_a_tower(t, Rational(0), int_grid(-8, -1), TowerLevel::Homology);
  auto rep = eventual_images(tower, 3);
  CHECK(rep.stabilized);
  const auto& shallow = rep.levels.back();
  CHECK(shallow.images.front().rank == 0);  // image from the deepest source
  auto ml = mittag_leffler(tower);
  CHECK(ml.kind == MlCertificateKind::FiniteDimCriterion);
  REQUIRE(ml.stabilization_depth.has_value());
  CHECK(*ml.stabilization_depth == 2);
}

TEST_CASE("lim1 vanishes on finite towers with constructive preimages") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 8, F2);
  auto tower = build_a_tower(t, Rational(0), int_grid(-6, 0), TowerLevel::Homology);
  auto rep = lim1(tower, 5, 12);
  CHECK(rep.module.is_trivial());
  CHECK(rep.certificate == "finite_truncation");
  CHECK(rep.full_tower_vanishing);  // surjective criterion
  CHECK(rep.preimage_checks == 12);

  auto tz = builtin_family(BuiltinFamily::AppendixZ, 8, Z);
  auto towerz = build_a_tower(tz, Rational(0), int_grid(-6, -1), TowerLevel::Homology);
  auto repz = lim1(towerz, 5, 12);
  CHECK(repz.module.is_trivial());
  CHECK(!repz.full_tower_vanishing);  // indeterminate ML over Z
  CHECK(repz.preimage_checks == 12);
}

TEST_CASE("lim1 on random towers, both levels") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto rt = random_triple(seed, 10, 3, F3);
    for (auto level : {TowerLevel::Chain, TowerLevel::Homology}) {
      auto tower = build_a_tower(rt, Rational(3), int_grid(-3, 1), level);
      auto rep = lim1(tower, seed, 5);
      CHECK(rep.module.is_trivial());
      CHECK(rep.preimage_checks == 5);
    }
  }
}

TEST_CASE("tower construction guards") {
  auto t = builtin_family(BuiltinFamily::IntroLines, 4, Q);
  CHECK_THROWS(build_a_tower(t, Rational(0), {Rational(-1), Rational(-1)}, TowerLevel::Chain));
  CHECK_THROWS(build_a_tower(t, Rational(0), {Rational(-1), Rational(1)}, TowerLevel::Chain));
  CHECK_THROWS(build_a_tower(t, Rational(0), {}, TowerLevel::Chain));
  CHECK_THROWS(build_b_tower(t, Rational(0), {Rational(-1), Rational(1)}, TowerLevel::Chain));
  auto tower = build_a_tower(t, Rational(0), int_grid(-3, 0), TowerLevel::Chain);
  CHECK_THROWS(eventual_images(tower, 1));
}
