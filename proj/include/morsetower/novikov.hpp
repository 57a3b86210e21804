#ifndef MORSETOWER_NOVIKOV_HPP
#define MORSETOWER_NOVIKOV_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morsetower/window.hpp"

namespace morsetower {

/// Formal sum of critical points truncated below an action floor. Only the
/// points with action >= truncation_floor are carried; above any level there
/// are finitely many terms by construction.
struct NovikovChain {
  std::map<std::string, Rational> coefficients;
  Rational truncation_floor;
};

/// The truncated Novikov complex: the window [floor, max action]. Throws
/// when the triple has no points (no upper action bound to truncate at).
WindowComplex novikov_truncation(const FloerTriple& triple, const Rational& floor);

HomologyGroup truncated_novikov_homology(const FloerTriple& triple, const Rational& floor);

/// Homology-level projection from a deeper truncation floor to a shallower
/// one (the comparison map between truncations).
ModuleMap novikov_floor_transition(const FloerTriple& triple, const Rational& deep_floor,
                                   const Rational& shallow_floor);

/// 0/1 sequence a_1..a_K with partial weighted sums S_k = sum_{j<=k} 2^{j-1} a_j.
struct WitnessSequence {
  std::vector<int> a;              // a[j-1] = a_j
  std::vector<Integer> partial_sums;  // partial_sums[k-1] = S_k
  std::size_t depth() const { return a.size(); }
};

struct WitnessValidation {
  bool valid = true;
  std::size_t violation_k = 0;  // first k violating a bullet (1-based)
  std::string reason;
};

/// Checks the two bullet conditions: entries in {0,1} and
/// 0 < S_k / 2^k < 3/4 for every k up to the prefix length. The divergence
/// of S_k cannot be decided on a finite prefix; the bound check is the
/// finite shadow (all-zeros fails the lower bound immediately).
WitnessValidation validate_witness(const std::vector<int>& a);

/// The sequence 1,0,1,0,...; both bullets verified exactly.
WitnessSequence alternating_witness(std::size_t depth);

/// Validates and packages a caller-provided sequence; throws
/// std::invalid_argument naming the violating k otherwise.
WitnessSequence custom_witness(const std::vector<int>& a);

/// xi = sum a_j cund_j for the appendix family, truncated at the floor.
NovikovChain xi_from_witness(const FloerTriple& triple, const WitnessSequence& seq,
                             const Rational& floor);

/// Exact check that the chain is a cycle of the truncated complex.
bool cycle_check(const FloerTriple& triple, const NovikovChain& chain);

enum class ObstructionMode {
  NonIntegral,  // b_k fails to be an integer
  Interval,     // moreover b_k lies in (-1, 0)
  None,         // no obstruction found within the depth bound
};
const char* to_string(ObstructionMode mode);

struct ObstructionEntry {
  long b0 = 0;
  std::optional<std::size_t> depth;  // least k with b_k not an integer
  Rational b_k;                      // the offending (or final) value
  ObstructionMode mode = ObstructionMode::None;
};

/// For every integer |b0| <= b_bound, traces the recurrence
/// b_k = (b0 - S_k) / 2^k and reports the least k refuting integrality.
/// complete means every candidate b0 was obstructed within depth_bound.
struct ObstructionReport {
  std::vector<ObstructionEntry> entries;
  bool complete = false;
  long b_bound = 0;
  std::size_t depth_bound = 0;
};

ObstructionReport boundary_obstruction(const WitnessSequence& seq, long b_bound = 1000,
                                       std::size_t depth_bound = 40, bool validate = true);

}  // namespace morsetower

#endif
