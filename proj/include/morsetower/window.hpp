#ifndef MORSETOWER_WINDOW_HPP
#define MORSETOWER_WINDOW_HPP

#include <string>
#include <vector>

#include "morsetower/linalg.hpp"
#include "morsetower/triple.hpp"

namespace morsetower {

struct Window {
  Rational a, b;
  Window(Rational lo, Rational hi) : a(std::move(lo)), b(std::move(hi)) {
    if (a > b) throw WindowOrderError("window requires a <= b");
  }
};

/// Chain group CM_a^b with its boundary matrix. Basis ordered by action
/// ascending then name; boundary entry (row c', col c) = m(c', c).
class WindowComplex {
 public:
  WindowComplex(const FloerTriple& triple, const Window& window);

  const Window& window() const { return window_; }
  const CoefficientRing& ring() const { return boundary_.ring(); }
  const std::vector<CriticalPoint>& basis() const { return basis_; }
  const ExactMatrix& boundary() const { return boundary_; }
  std::size_t dim() const { return basis_.size(); }

  int basis_index(const std::string& name) const;  // -1 when absent
  std::vector<Rational> chain_from_coeffs(const std::map<std::string, Rational>& coeffs) const;

 private:
  Window window_;
  std::vector<CriticalPoint> basis_;
  ExactMatrix boundary_;
};

struct DSquaredCheck {
  bool pass = true;
  std::string witness;  // offending basis column when failing
};
DSquaredCheck check_d_squared(const WindowComplex& complex);
DSquaredCheck check_d_squared(const ExactMatrix& boundary,
                              const std::vector<std::string>& labels);

/// ker d / im d with one chosen cycle representative per module generator.
class HomologyGroup {
 public:
  static HomologyGroup compute(const WindowComplex& complex);
  static HomologyGroup compute(const ExactMatrix& boundary);

  const PresentedModule& module() const { return module_; }
  /// Chain-coordinate representatives, one column per module generator.
  const ExactMatrix& representatives() const { return reps_; }

  /// Module coordinates of a cycle's class (throws when the vector is not a
  /// cycle). Over Z torsion coordinates are reduced into [0, d).
  std::vector<Rational> express(const std::vector<Rational>& cycle) const;

  /// Internal; use compute().
  HomologyGroup(PresentedModule m, ExactMatrix reps, ExactMatrix expr_basis,
                ExactMatrix basis_change, std::vector<Integer> diag)
      : module_(std::move(m)), reps_(std::move(reps)), expr_basis_(std::move(expr_basis)),
        basis_change_(std::move(basis_change)), diagonal_(std::move(diag)) {}

 private:
  PresentedModule module_;
  ExactMatrix reps_;
  ExactMatrix expr_basis_;   // field: [reps | image basis]; Z: kernel lattice basis
  ExactMatrix basis_change_; // Z: row transform from SNF of the relation matrix
  std::vector<Integer> diagonal_;  // Z: full SNF diagonal of the relation matrix
};

inline HomologyGroup homology(const WindowComplex& complex) {
  return HomologyGroup::compute(complex);
}

enum class ChainMapKind { Projection, Inclusion, Composite };

/// Chain map between window complexes; commutes with the boundaries
/// (verified at construction).
class ChainMap {
 public:
  ChainMap(WindowComplex source, WindowComplex target, ExactMatrix matrix, ChainMapKind kind);

  const WindowComplex& source() const { return source_; }
  const WindowComplex& target() const { return target_; }
  const ExactMatrix& matrix() const { return matrix_; }
  ChainMapKind kind() const { return kind_; }

  ChainMap compose_after(const ChainMap& inner) const;

 private:
  WindowComplex source_, target_;
  ExactMatrix matrix_;
  ChainMapKind kind_;
};

/// p^b_{a2,a1}: CM_{a1}^b -> CM_{a2}^b, kills actions in [a1, a2).
ChainMap chain_projection(const FloerTriple& triple, const Rational& a1, const Rational& a2,
                          const Rational& b);
/// i_a^{b2,b1}: CM_a^{b1} -> CM_a^{b2}, basis inclusion.
ChainMap chain_inclusion(const FloerTriple& triple, const Rational& a, const Rational& b1,
                         const Rational& b2);

/// Hphi on homology: representatives pushed through the chain matrix and
/// re-expressed in the target's homology coordinates.
ModuleMap induced_hom_map(const ChainMap& chain_map, const HomologyGroup& h_source,
                          const HomologyGroup& h_target);

struct SquareClassification {
  bool commutative = false;
  bool exact = false;
  bool cartesian = false;
  bool cocartesian = false;
  bool bicartesian = false;
};

/// Classification of the square A -> B, A -> C, B -> D, C -> D through the
/// associated two-step sequence A -> B + C -> D.
SquareClassification classify_square(const ModuleMap& phi_ba, const ModuleMap& phi_ca,
                                     const ModuleMap& phi_db, const ModuleMap& phi_dc);
SquareClassification classify_square(const ChainMap& phi_ba, const ChainMap& phi_ca,
                                     const ChainMap& phi_db, const ChainMap& phi_dc);

ModuleMap chain_map_as_module_map(const ChainMap& m);

struct IdentityCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  std::size_t samples = 0;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Verifies the chain-level and homology-level projection/inclusion
/// identities on parameter tuples drawn from the given action levels.
IdentityReport check_identities(const FloerTriple& triple, const std::vector<Rational>& levels,
                                std::size_t max_samples = 64);

}  // namespace morsetower

#endif
