#ifndef MORSETOWER_BIDIRECT_HPP
#define MORSETOWER_BIDIRECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "morsetower/tower.hpp"

namespace morsetower {

/// Two-parameter grid of window homology groups with both transition
/// families: projections hp along a (deep to shallow) and inclusions hi
/// along b. Adjacent squares are checked to commute at construction.
class BidirectGrid {
 public:
  BidirectGrid(const FloerTriple& triple, std::vector<Rational> a_grid,
               std::vector<Rational> b_grid);

  const FloerTriple& triple() const { return *triple_; }
  const CoefficientRing& ring() const;
  const std::vector<Rational>& a_grid() const { return a_grid_; }
  const std::vector<Rational>& b_grid() const { return b_grid_; }
  std::size_t a_size() const { return a_grid_.size(); }
  std::size_t b_size() const { return b_grid_.size(); }

  const WindowComplex& complex_at(std::size_t ai, std::size_t bi) const;
  const HomologyGroup& group(std::size_t ai, std::size_t bi) const;
  /// hp(ai, bi): H(a_i, b) -> H(a_{i+1}, b).
  const ModuleMap& hp(std::size_t ai, std::size_t bi) const;
  /// hi(ai, bi): H(a, b_i) -> H(a, b_{i+1}).
  const ModuleMap& hi(std::size_t ai, std::size_t bi) const;

  ModuleMap composed_hp(std::size_t a_from, std::size_t a_to, std::size_t bi) const;
  ModuleMap composed_hi(std::size_t ai, std::size_t b_from, std::size_t b_to) const;

  /// Induced map of the one-step chain projection/inclusion spanning a
  /// non-adjacent pair; equals the composite of adjacents (functoriality).
  ModuleMap direct_hp(std::size_t a_from, std::size_t a_to, std::size_t bi) const;
  ModuleMap direct_hi(std::size_t ai, std::size_t b_from, std::size_t b_to) const;

  /// Homology tower along a at fixed b (toward -infinity), sharing this
  /// grid's groups and maps.
  Tower a_tower(std::size_t bi) const;
  /// Homology tower along b at fixed a (toward +infinity).
  Tower b_tower(std::size_t ai) const;

 private:
  const FloerTriple* triple_;
  std::vector<Rational> a_grid_, b_grid_;
  std::vector<std::vector<WindowComplex>> complexes_;  // [ai][bi]
  std::vector<std::vector<HomologyGroup>> groups_;
  std::vector<std::vector<ModuleMap>> hp_;  // [ai][bi], ai adjacent
  std::vector<std::vector<ModuleMap>> hi_;  // [ai][bi], bi adjacent
};

/// kappa and the per-b maps kappa^b on grid-limit carriers. On a finite grid
/// both double limits are the corner group at (a_min, b_max); kappa^b is the
/// composite inclusion out of the inverse-limit carrier of the b-slice.
struct KappaReport {
  std::vector<ModuleMap> kappa_b;  // one per b index
  std::optional<ModuleMap> kappa;
  bool defining_identity = false;  // iota_{a2} pi_{a2} = pi_{a2,a1} iota_{a1} pi_{a1}
  bool diagram_commutes = false;   // pi_a kappa^b = iota^b_a pi^b_a for all (a,b)
  bool compatible = false;         // kappa^{b2} iota^{b2,b1} = kappa^{b1}
  bool unique = false;             // the compatibility system pins kappa down
  bool all_pass() const {
    return defining_identity && diagram_commutes && compatible && unique;
  }
};

KappaReport canonical_kappa(const BidirectGrid& grid);

/// Comparison maps between homology-of-limit and limit-of-homology on the
/// grid carriers, with the characterizing triangles verified against the
/// directly induced one-step maps.
struct TamenessReport {
  std::vector<ModuleMap> mu_a;  // lim_b HC_a -> H(lim_b C_a), per a
  std::vector<ModuleMap> nu_b;  // H(lim_a C^b) -> lim_a HC^b, per b
  std::optional<ModuleMap> mu;      // lim_b H(lim_a C) -> H(lim_b lim_a C)
  std::optional<ModuleMap> nu;      // H(lim_a lim_b C) -> lim_a H(lim_b C)
  std::optional<ModuleMap> lim_nu, lim_mu;
  std::optional<ModuleMap> rho;     // (lim nu) o mu^{-1}
  std::optional<ModuleMap> sigma;   // (lim mu)^{-1} o nu
  bool characterizations_hold = false;
  bool mu_a_iso = false, nu_b_iso = false, mu_iso = false;
  bool nu_surjective = false;
  bool tame = false;  // mu_a, nu_b, mu all isomorphisms
};

TamenessReport tameness_maps(const BidirectGrid& grid);

struct TheoremAGridResult {
  std::vector<Rational> a_grid, b_grid;
  bool k_iso = false;   // the two double-limit complexes coincide
  bool hk_iso = false;
  bool diagram_commutes = false;  // kappa o rho = sigma o Hk
  bool rho_iso = false;
  bool kappa_surjective = false;
  bool tame = false;
  bool images_stabilized = false;  // a-tower at b_max
  MlCertificate ml;
  /// Elementary divisors of the deepest eventual image at the shallowest
  /// a-level (the integer failure signature when nontrivial).
  std::vector<Integer> shallow_image_divisors;
};

struct TheoremAReport {
  std::string ring;
  std::vector<TheoremAGridResult> per_grid;
  bool certified = false;  // field coefficients and every grid passed
  std::string diagnostic;  // integer-coefficient failure signature
};

using GridSchedule = std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>>;

/// Deepening square grids a = {-d..-1}, b = {1..d} for d = 2..max_depth.
GridSchedule canonical_schedule(std::size_t max_depth);

TheoremAReport theorem_a_harness(const FloerTriple& triple, const GridSchedule& schedule);

}  // namespace morsetower

#endif
