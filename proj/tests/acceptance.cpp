// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <random>

#include "morsetower/bidirect.hpp"
#include "morsetower/novikov.hpp"
#include "test_oracles.hpp"

using namespace morsetower;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass) {
  std::printf("criterion %2d (%s): %s\n", idx, name, pass ? "pass" : "FAIL");
  if (!pass) ++g_failures;
}

const CoefficientRing Z = CoefficientRing::integers();
const CoefficientRing Q = CoefficientRing::rationals();
const CoefficientRing F2 = CoefficientRing::prime_field(2);
const CoefficientRing F3 = CoefficientRing::prime_field(3);

std::vector<Rational> gamma_chain(const WindowComplex& c, long n) {
  std::map<std::string, Rational> coeffs;
  Rational pw(1);
  for (long j = n; j >= 0; --j) {
    coeffs["cbar" + std::to_string(j)] = pw;
    pw *= 2;
  }
  return c.chain_from_coeffs(coeffs);
}

Integer floor_int(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// depth-two free-rank-two generating set test via a unimodular coordinate matrix
bool generates_rank_two(const HomologyGroup& h, const std::vector<Rational>& u,
                        const std::vector<Rational>& v) {
  if (h.module().free_rank() != 2 || !h.module().invariant_factors().empty()) return false;
  ExactMatrix coords(Z, 2, 2);
  auto cu = h.express(u);
  auto cv = h.express(v);
  for (std::size_t i = 0; i < 2; ++i) {
    coords.set(i, 0, cu[i]);
    coords.set(i, 1, cv[i]);
  }
  return test_oracles::det_is_unit(coords);
}

bool criterion1() {
  auto start = std::chrono::steady_clock::now();
  auto t = builtin_family(BuiltinFamily::AppendixZ, 12, Z);
  struct Case { Rational a; long k; };
  std::vector<Case> cases = {{Rational(-3, 2), 1}, {Rational(-2), 2},
                             {Rational(-7, 2), 3}, {Rational(-6), 6}};
  for (const auto& cs : cases) {
    WindowComplex c(t, Window(cs.a, Rational(0)));
    auto h = HomologyGroup::compute(c);
    if (!generates_rank_two(h, gamma_chain(c, cs.k - 1), gamma_chain(c, cs.k))) return false;
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  return elapsed < std::chrono::seconds(1);
}

bool criterion2() {
  auto t = builtin_family(BuiltinFamily::AppendixZ, 12, Z);
  for (long k = 0; k <= 5; ++k) {
    for (long l = 1; l <= 5; ++l) {
      auto proj = chain_projection(t, Rational(-k - l), Rational(-k), Rational(0));
      auto hs = HomologyGroup::compute(proj.source());
      auto ht = HomologyGroup::compute(proj.target());
      auto push = [&](long n) { return ht.express(proj.matrix().apply(gamma_chain(proj.source(), n))); };
      auto scaled = [&](long n, const Integer& factor) {
        auto coords = ht.express(gamma_chain(proj.target(), n));
        for (auto& x : coords) x *= Rational(factor);
        return coords;
      };
      Integer two_l(1), two_l1(1);
      for (long i = 0; i < l; ++i) two_l *= 2;
      for (long i = 0; i + 1 < l; ++i) two_l1 *= 2;
      if (push(k + l) != scaled(k, two_l)) return false;
      if (push(k + l - 1) != scaled(k, two_l1)) return false;
      (void)hs;
    }
  }
  return true;
}

bool criterion3() {
  std::mt19937_64 rng(2026);
  // windows straddle 0, as the formula's counting ranges presuppose
  std::uniform_int_distribution<long> neg(-60, 0), pos(0, 60), den(1, 6);
  for (const auto& ring : {F2, Q}) {
    auto t = builtin_family(BuiltinFamily::IntroLines, 6, ring);
    for (int i = 0; i < 20; ++i) {
      Rational x(neg(rng), den(rng)), y(pos(rng), den(rng));
      x.canonicalize();
      y.canonicalize();
      WindowComplex c(t, Window(x, y));
      auto h = HomologyGroup::compute(c);
      auto count = [](const Rational& lo, const Rational& hi) {
        Integer d = floor_int(hi) - floor_int(lo);
        return d > 0 ? d : Integer(0);
      };
      Integer expected = count(y, -x) + count(-x, y);
      if (Integer(h.module().free_rank()) != expected) return false;
    }
  }
  return true;
}

FloerTriple corpus_triple(std::uint64_t seed, const CoefficientRing& ring) {
  return random_triple(seed, 4 + seed % 9, 4, ring);
}

bool criterion4() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-12, 12), den(1, 4);
  const CoefficientRing rings[] = {F2, F3, Q};
  for (std::uint64_t s = 1; s <= 200; ++s) {
    auto t = corpus_triple(s, rings[s % 3]);
    Rational v[4];
    for (auto& x : v) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    std::sort(v, v + 4);
    const Rational &a1 = v[0], &a2 = v[1], &b1 = v[2], &b2 = v[3];
    auto cls = classify_square(chain_projection(t, a1, a2, b1),
                               chain_inclusion(t, a1, b1, b2),
                               chain_inclusion(t, a2, b1, b2),
                               chain_projection(t, a1, a2, b2));
    if (!cls.bicartesian) return false;
  }
  return true;
}

bool criterion5() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-10, 10);
  const CoefficientRing rings[] = {F2, F3, Q};
  for (std::uint64_t s = 1; s <= 30; ++s) {
    auto t = corpus_triple(s, rings[s % 3]);
    std::vector<Rational> levels;
    for (int i = 0; i < 5; ++i) levels.emplace_back(num(rng));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.size() < 2) continue;
    auto rep = check_identities(t, levels);
    if (!rep.all_pass()) return false;
    WindowComplex full(t, Window(levels.front(), levels.back()));
    if (!check_d_squared(full).pass) return false;
  }
  return true;
}

bool criterion6() {
  // surjective branch
  {
    auto t = builtin_family(BuiltinFamily::IntroLines, 8, Q);
    std::vector<Rational> grid;
    for (long a = -8; a <= -1; ++a) grid.emplace_back(a);
    auto cert = mittag_leffler(build_a_tower(t, Rational(0), grid, TowerLevel::Homology));
    if (cert.kind != MlCertificateKind::SurjectiveCriterion) return false;
  }
  // finite dimensional branch: image hits 0 within 3 steps
  {
    auto t = builtin_family(BuiltinFamily::AppendixZ, 10, F2);
    std::vector<Rational> grid;
    for (long a = -8; a <= -1; ++a) grid.emplace_back(a);
    auto tw = build_a_tower(t, Rational(0), grid, TowerLevel::Homology);
    auto cert = mittag_leffler(tw);
    if (cert.kind != MlCertificateKind::FiniteDimCriterion) return false;
    if (!cert.stabilization_depth || *cert.stabilization_depth > 3) return false;
    auto stab = eventual_images(tw);
    if (stab.levels.back().images.front().rank != 0) return false;
  }
  // non-stabilizing integer branch: image lattice 2^{N-2} Z [gamma_1] at a = -1
  auto t = builtin_family(BuiltinFamily::AppendixZ, 14, Z);
  for (long n = 3; n <= 12; ++n) {
    std::vector<Rational> grid;
    for (long a = -n; a <= -1; ++a) grid.emplace_back(a);
    auto tw = build_a_tower(t, Rational(0), grid, TowerLevel::Homology);
    Integer two_n2(1);
    for (long i = 0; i + 2 < n; ++i) two_n2 *= 2;
    auto stab = eventual_images(tw);
    const auto& deepest = stab.levels.back().images.front();
    if (deepest.rank != 1) return false;
    if (deepest.elementary_divisors != std::vector<Integer>{two_n2}) return false;
    // the image lattice is exactly the span of 2^{N-2} [gamma_1]
    auto composed = tw.composed(0, tw.size() - 1);
    WindowComplex shallow(t, Window(Rational(-1), Rational(0)));
    auto h = HomologyGroup::compute(shallow);
    auto coords = h.express(gamma_chain(shallow, 1));
    ExactMatrix gen(Z, coords.size(), 1);
    for (std::size_t i = 0; i < coords.size(); ++i)
      gen.set(i, 0, coords[i] * Rational(two_n2));
    if (!spans_equal(composed.matrix(), gen)) return false;
    if (mittag_leffler(tw).kind == MlCertificateKind::SurjectiveCriterion) return false;
  }
  return true;
}

bool criterion7() {
  auto schedule = canonical_schedule(8);
  for (auto fam : {BuiltinFamily::IntroLines, BuiltinFamily::AppendixZ}) {
    for (const auto& ring : {F2, Q}) {
      auto rep = theorem_a_harness(builtin_family(fam, 10, ring), schedule);
      if (!rep.certified) return false;
      for (const auto& g : rep.per_grid)
        if (!g.diagram_commutes || !g.rho_iso || !g.kappa_surjective) return false;
    }
  }
  auto rep = theorem_a_harness(builtin_family(BuiltinFamily::AppendixZ, 10, Z), schedule);
  if (rep.certified) return false;
  return rep.diagnostic.find("divisor") != std::string::npos;
}

bool criterion8() {
  auto start = std::chrono::steady_clock::now();
  auto seq = alternating_witness(40);
  if (!validate_witness(std::vector<int>(seq.a.begin(), seq.a.begin() + 30)).valid) return false;

  auto t = builtin_family(BuiltinFamily::AppendixZ, 34, Z);
  if (!cycle_check(t, xi_from_witness(t, seq, Rational(-32)))) return false;

  auto obstruction = boundary_obstruction(seq, 1000, 40);
  if (!obstruction.complete) return false;

  std::vector<int> ones(20, 1);
  if (validate_witness(ones).valid) return false;
  WitnessSequence ones_seq;
  ones_seq.a = ones;
  Integer s(0), pw(1);
  for (int v : ones) {
    s += pw * v;
    pw *= 2;
    ones_seq.partial_sums.push_back(s);
  }
  auto control = boundary_obstruction(ones_seq, 2, 20, /*validate=*/false);
  for (const auto& e : control.entries)
    if (e.b0 == -1 && e.depth.has_value()) return false;
  // the bounding chain eta = -(cbar_0 + ... + cbar_n) on each truncation
  for (long n = 4; n <= 10; ++n) {
    auto c = novikov_truncation(t, Rational(-n - 1));
    std::map<std::string, Rational> eta, xi;
    for (long j = 0; j <= n; ++j) eta["cbar" + std::to_string(j)] = -1;
    for (long j = 1; j <= n; ++j) xi["cund" + std::to_string(j)] = 1;
    if (c.boundary().apply(c.chain_from_coeffs(eta)) != c.chain_from_coeffs(xi)) return false;
  }
  return std::chrono::steady_clock::now() - start < std::chrono::seconds(10);
}

bool criterion9() {
  std::size_t preimages = 0;
  // field towers carry an ML certificate, so full-tower vanishing is asserted
  {
    auto t = builtin_family(BuiltinFamily::IntroLines, 8, F2);
    std::vector<Rational> grid;
    for (long a = -7; a <= -1; ++a) grid.emplace_back(a);
    auto rep = lim1(build_a_tower(t, Rational(0), grid, TowerLevel::Homology), 3, 10);
    if (!rep.module.is_trivial() || !rep.full_tower_vanishing) return false;
    preimages += rep.preimage_checks;
  }
  // the non-ML integer tower: coker Delta still 0, but no full-tower claim
  {
    auto t = builtin_family(BuiltinFamily::AppendixZ, 10, Z);
    std::vector<Rational> grid;
    for (long a = -8; a <= -1; ++a) grid.emplace_back(a);
    auto rep = lim1(build_a_tower(t, Rational(0), grid, TowerLevel::Homology), 4, 10);
    if (!rep.module.is_trivial() || rep.full_tower_vanishing) return false;
    preimages += rep.preimage_checks;
  }
  const CoefficientRing rings[] = {F2, F3, Q, Z};
  for (std::uint64_t s = 1; s <= 6; ++s) {
    auto t = corpus_triple(s, rings[s % 4]);
    std::vector<Rational> grid = {Rational(-9), Rational(-6), Rational(-3), Rational(0)};
    auto rep = lim1(build_a_tower(t, Rational(10), grid, TowerLevel::Homology), s, 5);
    if (!rep.module.is_trivial()) return false;
    preimages += rep.preimage_checks;
  }
  return preimages >= 50;
}

bool criterion10() {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> entry(-9, 9), dim(1, 4);
  for (int i = 0; i < 100; ++i) {
    std::size_t r = dim(rng), c = dim(rng);
    ExactMatrix m(Z, r, c);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) m.set(a, b, Rational(entry(rng)));
    auto snf = smith_normal_form(m);
    if (!test_oracles::snf_matches_minor_gcds(m, snf.diagonal)) return false;
  }
  const CoefficientRing rings[] = {F2, F3, Q, Z};
  for (std::uint64_t s = 1; s <= 50; ++s) {
    auto t = corpus_triple(s, rings[s % 4]);
    std::vector<Rational> grid = {Rational(-2), Rational(1), Rational(4), Rational(7)};
    auto level = s % 2 ? TowerLevel::Homology : TowerLevel::Chain;
    auto tw = build_b_tower(t, Rational(-10), grid, level);
    auto lim = grid_direct_limit(tw);
    if (!lim.module.same_normal_form(direct_limit_quotient(tw))) return false;
  }
  return true;
}

template <typename F>
bool guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "  exception: %s\n", e.what());
    return false;
  }
}

}  // namespace

int main() {
  report(1, "deep-window integer homology, explicit generating set", guarded(criterion1));
  report(2, "projection scaling on canonical generators", guarded(criterion2));
  report(3, "two-line family dimension formula", guarded(criterion3));
  report(4, "bicartesian projection/inclusion squares", guarded(criterion4));
  report(5, "structural identities and d squared", guarded(criterion5));
  report(6, "eventual-image trichotomy", guarded(criterion6));
  report(7, "grid certification harness", guarded(criterion7));
  report(8, "truncated completion counterexample certificate", guarded(criterion8));
  report(9, "first derived limit with constructive preimages", guarded(criterion9));
  report(10, "exact linear algebra oracles", guarded(criterion10));
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
