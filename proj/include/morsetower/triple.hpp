#ifndef MORSETOWER_TRIPLE_HPP
#define MORSETOWER_TRIPLE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morsetower/matrix.hpp"

namespace morsetower {

struct CriticalPoint {
  std::string name;
  Rational action;
  std::optional<long> grading;
  bool operator==(const CriticalPoint& o) const {
    return name == o.name && action == o.action && grading == o.grading;
  }
};

using FlowKey = std::pair<std::string, std::string>;  // (from, to): value m(from, to)
using FlowMap = std::map<FlowKey, Rational>;

/// Points and flows of a triple restricted to a bounded action interval.
struct WindowData {
  std::vector<CriticalPoint> points;  // sorted by (action, name)
  FlowMap flows;                      // both endpoints inside the interval
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct WindowOrderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Axiomatic datum (C, f, m): named critical points with exact rational
/// actions and a sparse flow-count map over a coefficient ring. Immutable.
class FloerTriple {
 public:
  using LazyFamily = std::function<WindowData(const Rational& a, const Rational& b)>;

  FloerTriple(CoefficientRing ring, std::vector<CriticalPoint> points, FlowMap flows,
              LazyFamily lazy = nullptr);

  const CoefficientRing& ring() const { return ring_; }
  const std::vector<CriticalPoint>& points() const { return points_; }
  const FlowMap& flows() const { return flows_; }
  bool has_lazy_family() const { return static_cast<bool>(lazy_); }
  bool has_grading() const;

  const CriticalPoint* find(const std::string& name) const;
  Rational flow(const std::string& from, const std::string& to) const;

  /// Points/flows with action in [a,b] (or [a,b) when half_open_at_top),
  /// sorted by action then name; served by the lazy family when present.
  WindowData window_data(const Rational& a, const Rational& b, bool half_open_at_top = false) const;

  std::vector<CriticalPoint> points_in_window(const Rational& a, const Rational& b,
                                              bool half_open_at_top = false) const;

  /// Largest action of an explicit point; nullopt when the triple is empty.
  std::optional<Rational> max_action() const;
  std::optional<Rational> min_action() const;

  bool structurally_equal(const FloerTriple& o) const {
    return ring_ == o.ring_ && points_ == o.points_ && flows_ == o.flows_;
  }

 private:
  CoefficientRing ring_;
  std::vector<CriticalPoint> points_;
  FlowMap flows_;
  LazyFamily lazy_;
};

struct AxiomCheck {
  std::string axiom;  // "i", "ii", "iii", "grading"
  bool pass = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Checks axioms (i)-(iii); with morse_mode also the grading constraint
/// mu(c') = mu(c) - 1 on every flow. Failures are report entries.
ValidationReport validate(const FloerTriple& triple, bool morse_mode = false);

FloerTriple parse_floer(const std::string& text);
std::string serialize_floer(const FloerTriple& triple);

enum class BuiltinFamily { IntroLines, AppendixZ };
std::optional<BuiltinFamily> builtin_family_by_name(const std::string& name);

/// intro_lines: cbar_n (action n) / cund_n (action -n), one flow per pair.
/// appendix_z: cbar_n (action -n, 0<=n<=depth), cund_n (action -n-1,
/// 1<=n<=depth-1), flows m(cund_n, cbar_{n-1}) = 1, m(cund_n, cbar_n) = -2.
/// Both carry a lazy family serving arbitrary bounded intervals.
FloerTriple builtin_family(BuiltinFamily family, std::size_t depth, CoefficientRing ring);

/// Deterministic valid-by-construction random triple: a canonical square-zero
/// matrix (pair/singleton pattern) conjugated by a random action-filtered
/// unitriangular matrix.
FloerTriple random_triple(std::uint64_t seed, std::size_t point_count, long action_spread,
                          CoefficientRing ring);
FloerTriple random_triple_structured(std::uint64_t seed, std::size_t pairs,
                                     std::size_t singletons, long action_spread,
                                     CoefficientRing ring);

}  // namespace morsetower

#endif
