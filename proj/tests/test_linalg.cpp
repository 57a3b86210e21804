#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "morsetower/linalg.hpp"
#include "test_oracles.hpp"

using namespace morsetower;

namespace {

ExactMatrix make(CoefficientRing ring, std::size_t r, std::size_t c,
                 std::initializer_list<int> vals) {
  ExactMatrix m(ring, r, c);
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, *it++);
  return m;
}

const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing F2 = CoefficientRing::prime_field(2);

}  // namespace

TEST_CASE("ring basics") {
  CHECK_THROWS(CoefficientRing::prime_field(4));
  CHECK(parse_ring("F 7").modulus() == 7);
  CHECK(parse_ring("F7") == parse_ring("F 7"));
  CHECK(F2.normalize(Rational(-3)) == 1);
  CHECK(F2.normalize(Rational(1, 3)) == 1);  // 3 = 1 mod 2
  CHECK_THROWS(Z.normalize(Rational(1, 2)));
  CHECK(parse_ring("F5").inv(Rational(2)) == 3);
}

TEST_CASE("reduce: identity over Q") {
  auto r = reduce(ExactMatrix::identity(Q, 3));
  CHECK(r.rank == 3);
  CHECK(r.kernel_basis.cols() == 0);
}

TEST_CASE("reduce: proportional rows over Q") {
  auto m = make(Q, 2, 2, {1, 2, 2, 4});
  auto r = reduce(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_basis.cols() == 1);
  // kernel spanned by (-2, 1)
  CHECK((m * r.kernel_basis).is_zero());
  CHECK(r.kernel_basis.at(0, 0) / r.kernel_basis.at(1, 0) == Rational(-2));
}

TEST_CASE("reduce: char-2 cancellation") {
  auto m = make(F2, 2, 2, {1, 1, 1, 1});
  auto r = reduce(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel_basis.cols() == 1);
  CHECK(r.kernel_basis.at(0, 0) == 1);
  CHECK(r.kernel_basis.at(1, 0) == 1);
}

TEST_CASE("reduce rejects Z") {
  CHECK_THROWS(reduce(ExactMatrix::identity(Z, 2)));
}

TEST_CASE("snf: diag(2,3) -> diag(1,6)") {
  auto m = make(Z, 2, 2, {2, 0, 0, 3});
  auto s = smith_normal_form(m);
  CHECK(s.diagonal == std::vector<Integer>{1, 6});
  CHECK(s.u * m * s.v == s.d);
  CHECK(test_oracles::snf_matches_minor_gcds(m, s.diagonal));
}

TEST_CASE("snf: zero matrix") {
  auto s = smith_normal_form(ExactMatrix::zero(Z, 2, 3));
  CHECK(s.rank == 0);
  CHECK(s.d.is_zero());
}

TEST_CASE("snf: [[2,4],[6,8]] -> diag(2,4)") {
  auto m = make(Z, 2, 2, {2, 4, 6, 8});
  auto s = smith_normal_form(m);
  CHECK(s.diagonal == std::vector<Integer>{2, 4});
  CHECK(s.u * m * s.v == s.d);
  CHECK(test_oracles::snf_matches_minor_gcds(m, s.diagonal));
}

TEST_CASE("snf properties on random matrices vs gcd-of-minors oracle") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    ExactMatrix m(Z, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, entry(rng));
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(test_oracles::det_is_unit(s.u));
    CHECK(test_oracles::det_is_unit(s.v));
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      CHECK(s.diagonal[i] >= 0);
      if (s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
      else CHECK(s.diagonal[i + 1] == 0);
    }
    CHECK(test_oracles::snf_matches_minor_gcds(m, s.diagonal));
  }
}

TEST_CASE("solve over Z, Q") {
  auto m = make(Z, 1, 1, {2});
  auto x = solve(m, {Rational(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK(!solve(m, {Rational(3)}).has_value());
  auto mq = make(Q, 1, 1, {2});
  auto xq = solve(mq, {Rational(3)});
  REQUIRE(xq.has_value());
  CHECK((*xq)[0] == Rational(3, 2));
}

TEST_CASE("solve reproduces target exactly on random systems") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> dim(1, 5), entry(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    CoefficientRing ring = trial % 3 == 0 ? Z : (trial % 3 == 1 ? Q : F2);
    std::size_t r = dim(rng), c = dim(rng);
    ExactMatrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, entry(rng));
    std::vector<Rational> t(r);
    for (auto& v : t) v = ring.normalize(Rational(entry(rng)));
    auto x = solve(m, t);
    if (x) {
      auto back = m.apply(*x);
      CHECK(back == t);
    }
    // Targets in the image must always be solvable.
    std::vector<Rational> w(c);
    for (auto& v : w) v = ring.normalize(Rational(entry(rng)));
    auto inside = m.apply(w);
    CHECK(solve(m, inside).has_value());
  }
}

TEST_CASE("kernel basis over Z is exact") {
  auto m = make(Z, 2, 3, {2, 4, 6, 1, 2, 3});
  auto k = kernel_basis_any(m);
  CHECK(k.cols() == 2);
  CHECK((m * k).is_zero());
}

TEST_CASE("present_quotient examples") {
  auto free2 = PresentedModule::free_module(Q, {"a", "b"});
  CHECK(free2.free_rank() == 2);

  auto rel = make(Z, 1, 1, {2});
  auto z2 = PresentedModule::present_quotient(Z, {"g"}, rel);
  CHECK(z2.free_rank() == 0);
  CHECK(z2.invariant_factors() == std::vector<Integer>{2});

  ExactMatrix rel3(Z, 3, 2);
  rel3.set(0, 0, 1);
  rel3.set(1, 1, 2);
  auto m = PresentedModule::present_quotient(Z, {"x", "y", "z"}, rel3);
  CHECK(m.free_rank() == 1);
  CHECK(m.invariant_factors() == std::vector<Integer>{2});
}

TEST_CASE("induced_map well-definedness") {
  auto zfree = PresentedModule::free_module(Z, {"g"});
  auto z2 = PresentedModule::present_quotient(Z, {"h"}, make(Z, 1, 1, {2}));
  auto one = ExactMatrix::identity(Z, 1);

  CHECK(induced_map(zfree, zfree, one)->matrix().is_identity());
  CHECK(induced_map(zfree, z2, one).has_value());  // Z -> Z/2
  NotWellDefined why{};
  auto bad = induced_map(z2, zfree, one, &why);  // Z/2 -> Z
  CHECK(!bad.has_value());
  CHECK(why.relation_index == 0);
}

TEST_CASE("map predicates and composition") {
  auto z2 = PresentedModule::present_quotient(Z, {"h"}, make(Z, 1, 1, {2}));
  auto zfree = PresentedModule::free_module(Z, {"g"});
  auto proj = *induced_map(zfree, z2, ExactMatrix::identity(Z, 1));
  CHECK(proj.is_surjective());
  CHECK(!proj.is_injective());  // kernel = 2Z
  auto dbl = *induced_map(zfree, zfree, make(Z, 1, 1, {2}));
  CHECK(dbl.is_injective());
  CHECK(!dbl.is_surjective());
  CHECK(dbl.cokernel().invariant_factors() == std::vector<Integer>{2});

  // matrix of (g o f) equals the product, well-definedness preserved
  auto comp = proj.compose_after(dbl);
  CHECK(comp.matrix() == proj.matrix() * dbl.matrix());
  CHECK(comp.is_zero_map());  // 2Z maps to 0 in Z/2
}

TEST_CASE("rank + kernel dim = cols, exactly (property)") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dim(1, 6), entry(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    CoefficientRing ring = trial % 2 ? Q : F2;
    std::size_t r = dim(rng), c = dim(rng);
    ExactMatrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, entry(rng));
    auto res = reduce(m);
    CHECK(res.rank + res.kernel_basis.cols() == c);
    CHECK((m * res.kernel_basis).is_zero());
    CHECK(reduce(res.image_basis).rank == res.rank);
  }
}
