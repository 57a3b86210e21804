#ifndef MORSETOWER_LINALG_HPP
#define MORSETOWER_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "morsetower/matrix.hpp"

namespace morsetower {

/// Row reduction over a field: rank, a basis of the kernel and a basis of
/// the column space (columns of the input at the pivot positions).
struct ReduceResult {
  std::size_t rank = 0;
  ExactMatrix kernel_basis;
  ExactMatrix image_basis;
  std::vector<std::size_t> pivot_cols;
  ReduceResult(CoefficientRing ring)
      : kernel_basis(ring, 0, 0), image_basis(ring, 0, 0) {}
};

ReduceResult reduce(const ExactMatrix& m);

/// U * M * V = D with D diagonal, d_i >= 0, d_i | d_{i+1}, det U, det V = +-1.
struct SnfResult {
  ExactMatrix u, d, v;
  std::vector<Integer> diagonal;  // min(rows, cols) entries, trailing zeros kept
  std::size_t rank = 0;           // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const ExactMatrix& m);

/// One exact solution of M x = target over the matrix ring, if any.
std::optional<std::vector<Rational>> solve(const ExactMatrix& m,
                                           const std::vector<Rational>& target);

/// X with A X = B over the ring of A, if every column of B is solvable.
std::optional<ExactMatrix> solve_matrix(const ExactMatrix& a, const ExactMatrix& b);

inline bool columns_in_span(const ExactMatrix& a, const ExactMatrix& b) {
  return solve_matrix(a, b).has_value();
}

/// Basis of {x : M x = 0} over the ring: over a field a vector-space basis,
/// over Z a basis of the (saturated) kernel lattice.
ExactMatrix kernel_basis_any(const ExactMatrix& m);

std::size_t rank_any(const ExactMatrix& m);

/// Equality of column spans (subspaces over a field, sublattices over Z).
inline bool spans_equal(const ExactMatrix& a, const ExactMatrix& b) {
  return columns_in_span(a, b) && columns_in_span(b, a);
}

/// Finitely presented module: generators with a column-relation matrix.
/// Over a field the normal form is a dimension; over Z a free rank plus the
/// invariant factors >= 2 (unit factors dropped).
class PresentedModule {
 public:
  static PresentedModule free_module(CoefficientRing ring, std::vector<std::string> generators);
  static PresentedModule present_quotient(CoefficientRing ring,
                                          std::vector<std::string> generators,
                                          const ExactMatrix& relations);

  const CoefficientRing& ring() const { return ring_; }
  const std::vector<std::string>& generators() const { return gens_; }
  std::size_t generator_count() const { return gens_.size(); }
  const ExactMatrix& relations() const { return relations_; }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return invariant_factors_; }
  bool is_trivial() const { return free_rank_ == 0 && invariant_factors_.empty(); }

  bool same_normal_form(const PresentedModule& o) const {
    return ring_ == o.ring_ && free_rank_ == o.free_rank_ &&
           invariant_factors_ == o.invariant_factors_;
  }

  std::string describe() const;

 private:
  PresentedModule(CoefficientRing ring, std::vector<std::string> gens, ExactMatrix rel)
      : ring_(ring), gens_(std::move(gens)), relations_(std::move(rel)) {}
  CoefficientRing ring_;
  std::vector<std::string> gens_;
  ExactMatrix relations_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> invariant_factors_;
};

struct NotWellDefined {
  std::size_t relation_index;
};

/// Homomorphism between presented modules, stored on generators.
/// Construction through induced_map certifies well-definedness.
class ModuleMap {
 public:
  static ModuleMap identity(const PresentedModule& m);
  /// Unchecked constructor for maps that are well defined by construction.
  ModuleMap(PresentedModule source, PresentedModule target, ExactMatrix matrix);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const ExactMatrix& matrix() const { return matrix_; }

  ModuleMap compose_after(const ModuleMap& inner) const;  // this o inner

  bool equals_as_map(const ModuleMap& o) const;
  bool is_zero_map() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

  PresentedModule cokernel() const;
  /// Generators (source coordinates) of {x : M x lies in the target relation span}.
  ExactMatrix kernel_generators() const;
  /// Image generators inside the target: the map's columns together with
  /// nothing else; compare images with image_spans_equal.
  const ExactMatrix& image_generators() const { return matrix_; }

 private:
  PresentedModule source_, target_;
  ExactMatrix matrix_;
};

/// Constructs the map and verifies each source relation lands in the span of
/// the target relations; reports the offending relation otherwise.
std::optional<ModuleMap> induced_map(const PresentedModule& source,
                                     const PresentedModule& target,
                                     const ExactMatrix& generator_matrix,
                                     NotWellDefined* failure = nullptr);

/// Equality of the images of two maps into a common target (modulo target
/// relations).
bool image_spans_equal(const ModuleMap& f, const ModuleMap& g);

/// Canonical data of a submodule of the target generated by the columns of
/// gens, taken modulo the target relations: rank and elementary divisors of
/// the sublattice/subspace.
struct ImagePresentation {
  std::size_t rank = 0;
  std::vector<Integer> elementary_divisors;  // Z only; divisors of the image lattice
  bool operator==(const ImagePresentation&) const = default;
};

ImagePresentation image_presentation(const ExactMatrix& gens, const ExactMatrix& target_relations);

}  // namespace morsetower

#endif
