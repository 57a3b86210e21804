#ifndef MORSETOWER_TOWER_HPP
#define MORSETOWER_TOWER_HPP

#include <optional>
#include <string>
#include <vector>

#include "morsetower/window.hpp"

namespace morsetower {

/// Direction of the varying index. TowardMinusInfinity: the action floor a
/// decreases and the transitions are the projections p (inverse-limit side).
/// TowardPlusInfinity: the ceiling b increases and the transitions are the
/// inclusions i (direct-limit side).
enum class TowerDirection { TowardMinusInfinity, TowardPlusInfinity };

enum class TowerLevel { Chain, Homology };

/// One-parameter system of modules over a finite strictly increasing grid.
/// transitions[j] maps modules[j] to modules[j+1]; on the inverse-limit side
/// index 0 is the deepest level (smallest a), on the direct-limit side the
/// last index is the deepest (largest b).
class Tower {
 public:
  Tower(TowerDirection direction, std::vector<Rational> grid,
        std::vector<PresentedModule> modules, std::vector<ModuleMap> transitions);

  TowerDirection direction() const { return direction_; }
  const std::vector<Rational>& grid() const { return grid_; }
  std::size_t size() const { return modules_.size(); }
  const PresentedModule& module_at(std::size_t i) const { return modules_[i]; }
  const ModuleMap& transition(std::size_t j) const { return transitions_[j]; }
  const CoefficientRing& ring() const { return modules_.front().ring(); }

  /// Composite transition modules[i] -> modules[j], i <= j.
  ModuleMap composed(std::size_t i, std::size_t j) const;

 private:
  TowerDirection direction_;
  std::vector<Rational> grid_;
  std::vector<PresentedModule> modules_;
  std::vector<ModuleMap> transitions_;
};

/// Tower of CM_a^b (or HM_a^b) at fixed b over a strictly increasing a-grid;
/// transitions are the projections from deep to shallow.
Tower build_a_tower(const FloerTriple& triple, const Rational& b,
                    const std::vector<Rational>& a_grid, TowerLevel level);

/// Tower at fixed a over a strictly increasing b-grid; transitions are the
/// inclusions.
Tower build_b_tower(const FloerTriple& triple, const Rational& a,
                    const std::vector<Rational>& b_grid, TowerLevel level);

/// A limit computed on a finite grid. Always a truncation of the real-indexed
/// limit; the tag says so and the structure maps realize every grid index.
struct GridLimit {
  PresentedModule module;
  std::vector<ModuleMap> structure_maps;  // one per grid index, pi_a or iota^b
  std::string truncation_tag;             // "grid_truncation"
};

/// Compatible families over a finite chain collapse to the deepest module
/// (smallest grid index); pi_a are the composite transitions out of it.
GridLimit grid_inverse_limit(const Tower& tower);

/// Colimit of a finite chain is the module at the largest index; iota^b are
/// the composites into it.
GridLimit grid_direct_limit(const Tower& tower);

/// Brute-force colimit: (direct sum of all modules) / (relations
/// lambda_{j+1}(T x) - lambda_j(x)). Oracle for grid_direct_limit.
PresentedModule direct_limit_quotient(const Tower& tower);

/// Images im pi_{a,a'} at a fixed level a, for the level itself and every
/// deeper grid index a' <= a, listed deepest first.
struct LevelImages {
  Rational level;
  std::vector<ImagePresentation> images;  // deepest source first
  bool monotone = true;    // chain is non-increasing (deeper inside shallower)
  bool stabilized = false; // deepest `window` images coincide as submodules
};

struct StabilizationReport {
  std::vector<LevelImages> levels;
  std::size_t window = 3;
  bool stabilized = false;  // every level stabilized
};

StabilizationReport eventual_images(const Tower& tower, std::size_t window = 3);

enum class MlCertificateKind {
  SurjectiveCriterion,
  FiniteDimCriterion,
  EmpiricalAtDepth,
  Indeterminate,
};
const char* to_string(MlCertificateKind kind);

struct MlCertificate {
  MlCertificateKind kind = MlCertificateKind::Indeterminate;
  /// Grid steps after which all images had stabilized, when observed.
  std::optional<std::size_t> stabilization_depth;
  std::string note;
};

MlCertificate mittag_leffler(const Tower& tower, std::size_t window = 3);

struct Lim1Report {
  PresentedModule module;           // coker Delta
  std::string certificate;          // "finite_truncation"
  bool full_tower_vanishing = false;  // backed by the ML certificate
  MlCertificate ml;
  std::size_t preimage_checks = 0;  // constructive surjectivity witnesses
};

/// lim^1 of the truncated tower via the Delta map x |-> x - T(x_deeper) on
/// the finite product. Delta is onto by back-substitution, so the module is
/// always 0; sampled targets get explicit verified preimages.
Lim1Report lim1(const Tower& tower, std::uint64_t seed = 1, std::size_t samples = 10);

}  // namespace morsetower

#endif
