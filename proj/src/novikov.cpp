#include "morsetower/novikov.hpp"

#include <stdexcept>

namespace morsetower {

WindowComplex novikov_truncation(const FloerTriple& triple, const Rational& floor) {
  auto top = triple.max_action();
  if (!top) throw std::invalid_argument("empty triple has no action ceiling");
  if (floor > *top) return WindowComplex(triple, Window(floor, floor));
  return WindowComplex(triple, Window(floor, *top));
}

HomologyGroup truncated_novikov_homology(const FloerTriple& triple, const Rational& floor) {
  return HomologyGroup::compute(novikov_truncation(triple, floor));
}

ModuleMap novikov_floor_transition(const FloerTriple& triple, const Rational& deep_floor,
                                   const Rational& shallow_floor) {
  if (deep_floor > shallow_floor)
    throw std::invalid_argument("deep floor must lie below the shallow floor");
  auto top = triple.max_action();
  if (!top) throw std::invalid_argument("empty triple has no action ceiling");
  auto p = chain_projection(triple, deep_floor, shallow_floor, *top);
  return induced_hom_map(p, HomologyGroup::compute(p.source()),
                         HomologyGroup::compute(p.target()));
}

WitnessValidation validate_witness(const std::vector<int>& a) {
  WitnessValidation v;
  Integer s(0), pw(1);  // pw = 2^{k-1} entering step k
  for (std::size_t k = 1; k <= a.size(); ++k) {
    int entry = a[k - 1];
    if (entry != 0 && entry != 1) {
      v.valid = false;
      v.violation_k = k;
      v.reason = "entry outside {0,1}";
      return v;
    }
    s += pw * entry;
    pw *= 2;  // now 2^k
    if (s <= 0) {
      v.valid = false;
      v.violation_k = k;
      v.reason = "partial sum not positive";
      return v;
    }
    if (4 * s >= 3 * pw) {
      v.valid = false;
      v.violation_k = k;
      v.reason = "partial sum ratio reaches 3/4";
      return v;
    }
  }
  return v;
}

namespace {
WitnessSequence package(std::vector<int> a) {
  WitnessSequence seq;
  seq.a = std::move(a);
  Integer s(0), pw(1);
  for (int entry : seq.a) {
    s += pw * entry;
    pw *= 2;
    seq.partial_sums.push_back(s);
  }
  return seq;
}
}  // namespace

WitnessSequence alternating_witness(std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  std::vector<int> a(depth);
  for (std::size_t j = 0; j < depth; ++j) a[j] = (j % 2 == 0) ? 1 : 0;
  auto v = validate_witness(a);
  if (!v.valid) throw std::logic_error("alternating sequence failed validation");
  return package(std::move(a));
}

WitnessSequence custom_witness(const std::vector<int>& a) {
  if (a.empty()) throw std::invalid_argument("sequence must be nonempty");
  auto v = validate_witness(a);
  if (!v.valid)
    throw std::invalid_argument("bullet violation at k = " + std::to_string(v.violation_k) +
                                ": " + v.reason);
  return package(a);
}

NovikovChain xi_from_witness(const FloerTriple& triple, const WitnessSequence& seq,
                             const Rational& floor) {
  NovikovChain chain;
  chain.truncation_floor = floor;
  for (std::size_t j = 1; j <= seq.depth(); ++j) {
    if (seq.a[j - 1] == 0) continue;
    std::string name = "cund" + std::to_string(j);
    const CriticalPoint* p = triple.find(name);
    if (!p) break;  // past the triple's depth
    if (p->action < floor) continue;
    chain.coefficients[name] = seq.a[j - 1];
  }
  return chain;
}

bool cycle_check(const FloerTriple& triple, const NovikovChain& chain) {
  WindowComplex complex = novikov_truncation(triple, chain.truncation_floor);
  std::map<std::string, Rational> kept;
  for (const auto& [name, coeff] : chain.coefficients) {
    const CriticalPoint* p = triple.find(name);
    if (!p) throw std::invalid_argument("unknown critical point: " + name);
    if (p->action < chain.truncation_floor) continue;  // truncated away
    kept[name] = coeff;
  }
  auto vec = complex.chain_from_coeffs(kept);
  for (const auto& v : complex.boundary().apply(vec))
    if (v != 0) return false;
  return true;
}

const char* to_string(ObstructionMode mode) {
  switch (mode) {
    case ObstructionMode::NonIntegral: return "non_integral";
    case ObstructionMode::Interval: return "interval";
    case ObstructionMode::None: return "none";
  }
  return "none";
}

ObstructionReport boundary_obstruction(const WitnessSequence& seq, long b_bound,
                                       std::size_t depth_bound, bool validate) {
  if (validate) {
    auto v = validate_witness(seq.a);
    if (!v.valid)
      throw std::invalid_argument("sequence fails validation at k = " +
                                  std::to_string(v.violation_k));
  }
  std::size_t depth = std::min(depth_bound, seq.depth());
  ObstructionReport report;
  report.b_bound = b_bound;
  report.depth_bound = depth;
  report.complete = true;
  for (long b0 = -b_bound; b0 <= b_bound; ++b0) {
    ObstructionEntry entry;
    entry.b0 = b0;
    Integer pw(1);
    for (std::size_t k = 1; k <= depth; ++k) {
      pw *= 2;
      Integer num = Integer(b0) - seq.partial_sums[k - 1];
      Rational bk(num);
      bk /= Rational(pw);
      bk.canonicalize();
      entry.b_k = bk;
      if (bk.get_den() != 1) {
        entry.depth = k;
        entry.mode = (bk > -1 && bk < 0) ? ObstructionMode::Interval
                                         : ObstructionMode::NonIntegral;
        break;
      }
    }
    if (!entry.depth) report.complete = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace morsetower
