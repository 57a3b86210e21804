#include "morsetower/tower.hpp"

#include <random>
#include <stdexcept>

namespace morsetower {

namespace {

void require_strictly_increasing(const std::vector<Rational>& grid) {
  if (grid.empty()) throw std::invalid_argument("tower grid must be nonempty");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("tower grid must be strictly increasing");
}

std::vector<std::string> basis_names(const WindowComplex& c) {
  std::vector<std::string> names;
  names.reserve(c.dim());
  for (const auto& p : c.basis()) names.push_back(p.name);
  return names;
}

/// Shared state for a tower built from a triple: per-index complexes and
/// homology groups, so induced maps can be compared against composites.
Tower build_from_chain_maps(TowerDirection direction, const std::vector<Rational>& grid,
                            std::vector<WindowComplex> complexes,
                            std::vector<ChainMap> adjacent, const ChainMap* full_span,
                            TowerLevel level) {
  const CoefficientRing& ring = complexes.front().ring();
  std::vector<PresentedModule> modules;
  std::vector<ModuleMap> transitions;
  if (level == TowerLevel::Chain) {
    for (const auto& c : complexes)
      modules.push_back(PresentedModule::free_module(ring, basis_names(c)));
    for (std::size_t j = 0; j < adjacent.size(); ++j)
      transitions.emplace_back(modules[j], modules[j + 1], adjacent[j].matrix());
    if (full_span && !adjacent.empty()) {
      ExactMatrix acc = adjacent.front().matrix();
      for (std::size_t j = 1; j < adjacent.size(); ++j) acc = adjacent[j].matrix() * acc;
      if (acc != full_span->matrix())
        throw std::logic_error("tower transitions fail the composition identity");
    }
  } else {
    std::vector<HomologyGroup> groups;
    groups.reserve(complexes.size());
    for (const auto& c : complexes) groups.push_back(HomologyGroup::compute(c));
    for (auto& g : groups) modules.push_back(g.module());
    for (std::size_t j = 0; j < adjacent.size(); ++j)
      transitions.push_back(induced_hom_map(adjacent[j], groups[j], groups[j + 1]));
    if (full_span && !adjacent.empty()) {
      ModuleMap acc = transitions.front();
      for (std::size_t j = 1; j < transitions.size(); ++j)
        acc = transitions[j].compose_after(acc);
      ModuleMap direct = induced_hom_map(*full_span, groups.front(), groups.back());
      if (!acc.equals_as_map(direct))
        throw std::logic_error("tower transitions fail the composition identity");
    }
  }
  return Tower(direction, grid, std::move(modules), std::move(transitions));
}

bool submodules_equal(const ExactMatrix& gens_a, const ExactMatrix& gens_b,
                      const ExactMatrix& relations) {
  return columns_in_span(gens_b.hstack(relations), gens_a) &&
         columns_in_span(gens_a.hstack(relations), gens_b);
}

bool submodule_contained(const ExactMatrix& inner, const ExactMatrix& outer,
                         const ExactMatrix& relations) {
  return columns_in_span(outer.hstack(relations), inner);
}

/// Per-level generator matrices of im pi_{a, a'}, deepest source first.
struct ImageChains {
  std::vector<std::vector<ExactMatrix>> gens;  // [level][source depth]
};

ImageChains image_chains(const Tower& tower) {
  ImageChains out;
  out.gens.resize(tower.size());
  for (std::size_t i = 0; i < tower.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      out.gens[i].push_back(tower.composed(j, i).matrix());
  return out;
}

/// Steps below the level needed before the image chain becomes constant
/// (equal to the deepest image); nullopt when the chain never settles or is
/// too short to tell within the window.
std::optional<std::size_t> level_stabilization(const std::vector<ExactMatrix>& chain,
                                               const ExactMatrix& relations,
                                               std::size_t window) {
  if (chain.size() < window) return std::nullopt;
  std::size_t constant_prefix = 1;  // chain[0] trivially equals itself
  while (constant_prefix < chain.size() &&
         submodules_equal(chain[constant_prefix], chain[0], relations))
    ++constant_prefix;
  if (constant_prefix < window) return std::nullopt;
  return chain.size() - constant_prefix;
}

}  // namespace

Tower::Tower(TowerDirection direction, std::vector<Rational> grid,
             std::vector<PresentedModule> modules, std::vector<ModuleMap> transitions)
    : direction_(direction), grid_(std::move(grid)), modules_(std::move(modules)),
      transitions_(std::move(transitions)) {
  require_strictly_increasing(grid_);
  if (modules_.size() != grid_.size())
    throw std::invalid_argument("one module per grid index required");
  if (transitions_.size() + 1 != modules_.size() && !(modules_.size() == 1 && transitions_.empty()))
    throw std::invalid_argument("one transition per adjacent pair required");
  for (std::size_t j = 0; j < transitions_.size(); ++j) {
    if (transitions_[j].source().generator_count() != modules_[j].generator_count() ||
        transitions_[j].target().generator_count() != modules_[j + 1].generator_count())
      throw std::invalid_argument("transition endpoints do not match the modules");
  }
}

ModuleMap Tower::composed(std::size_t i, std::size_t j) const {
  if (i > j || j >= modules_.size()) throw std::out_of_range("bad tower indices");
  ModuleMap acc = ModuleMap::identity(modules_[i]);
  for (std::size_t k = i; k < j; ++k) acc = transitions_[k].compose_after(acc);
  return acc;
}

Tower build_a_tower(const FloerTriple& triple, const Rational& b,
                    const std::vector<Rational>& a_grid, TowerLevel level) {
  require_strictly_increasing(a_grid);
  if (a_grid.back() > b) throw WindowOrderError("a-grid exceeds the fixed ceiling b");
  std::vector<WindowComplex> complexes;
  for (const auto& a : a_grid) complexes.emplace_back(triple, Window(a, b));
  std::vector<ChainMap> adjacent;
  for (std::size_t j = 0; j + 1 < a_grid.size(); ++j)
    adjacent.push_back(chain_projection(triple, a_grid[j], a_grid[j + 1], b));
  std::optional<ChainMap> full;
  if (a_grid.size() > 1)
    full = chain_projection(triple, a_grid.front(), a_grid.back(), b);
  return build_from_chain_maps(TowerDirection::TowardMinusInfinity, a_grid,
                               std::move(complexes), std::move(adjacent),
                               full ? &*full : nullptr, level);
}

Tower build_b_tower(const FloerTriple& triple, const Rational& a,
                    const std::vector<Rational>& b_grid, TowerLevel level) {
  require_strictly_increasing(b_grid);
  if (b_grid.front() < a) throw WindowOrderError("b-grid falls below the fixed floor a");
  std::vector<WindowComplex> complexes;
  for (const auto& b : b_grid) complexes.emplace_back(triple, Window(a, b));
  std::vector<ChainMap> adjacent;
  for (std::size_t j = 0; j + 1 < b_grid.size(); ++j)
    adjacent.push_back(chain_inclusion(triple, a, b_grid[j], b_grid[j + 1]));
  std::optional<ChainMap> full;
  if (b_grid.size() > 1)
    full = chain_inclusion(triple, a, b_grid.front(), b_grid.back());
  return build_from_chain_maps(TowerDirection::TowardPlusInfinity, b_grid,
                               std::move(complexes), std::move(adjacent),
                               full ? &*full : nullptr, level);
}

GridLimit grid_inverse_limit(const Tower& tower) {
  if (tower.direction() != TowerDirection::TowardMinusInfinity)
    throw std::invalid_argument("inverse limit needs a tower toward -infinity");
  GridLimit out{tower.module_at(0), {}, "grid_truncation"};
  for (std::size_t i = 0; i < tower.size(); ++i)
    out.structure_maps.push_back(tower.composed(0, i));
  for (std::size_t i = 1; i < tower.size(); ++i) {
    ModuleMap via = tower.transition(i - 1).compose_after(out.structure_maps[i - 1]);
    if (!via.equals_as_map(out.structure_maps[i]))
      throw std::logic_error("projections fail compatibility");
  }
  return out;
}

GridLimit grid_direct_limit(const Tower& tower) {
  if (tower.direction() != TowerDirection::TowardPlusInfinity)
    throw std::invalid_argument("direct limit needs a tower toward +infinity");
  std::size_t last = tower.size() - 1;
  GridLimit out{tower.module_at(last), {}, "grid_truncation"};
  for (std::size_t i = 0; i < tower.size(); ++i)
    out.structure_maps.push_back(tower.composed(i, last));
  return out;
}

PresentedModule direct_limit_quotient(const Tower& tower) {
  const CoefficientRing& ring = tower.ring();
  std::vector<std::string> gens;
  std::vector<std::size_t> offsets;
  for (std::size_t j = 0; j < tower.size(); ++j) {
    offsets.push_back(gens.size());
    for (const auto& g : tower.module_at(j).generators())
      gens.push_back("b" + std::to_string(j) + ":" + g);
  }
  std::size_t total = gens.size();

  ExactMatrix relations(ring, total, 0);
  for (std::size_t j = 0; j < tower.size(); ++j) {
    const ExactMatrix& r = tower.module_at(j).relations();
    ExactMatrix block(ring, total, r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t c = 0; c < r.cols(); ++c) block.set(offsets[j] + i, c, r.at(i, c));
    relations = relations.hstack(block);
  }
  for (std::size_t j = 0; j + 1 < tower.size(); ++j) {
    const ExactMatrix& t = tower.transition(j).matrix();
    ExactMatrix block(ring, total, t.cols());
    for (std::size_t x = 0; x < t.cols(); ++x) {
      block.set(offsets[j] + x, x, Rational(-1));
      for (std::size_t i = 0; i < t.rows(); ++i) {
        Rational v = block.at(offsets[j + 1] + i, x) + t.at(i, x);
        block.set(offsets[j + 1] + i, x, v);
      }
    }
    relations = relations.hstack(block);
  }
  return PresentedModule::present_quotient(ring, std::move(gens), relations);
}

StabilizationReport eventual_images(const Tower& tower, std::size_t window) {
  if (tower.direction() != TowerDirection::TowardMinusInfinity)
    throw std::invalid_argument("eventual images need a tower toward -infinity");
  if (window < 2) throw std::invalid_argument("stabilization window must be >= 2");
  auto chains = image_chains(tower);
  StabilizationReport report;
  report.window = window;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    const auto& chain = chains.gens[i];
    const ExactMatrix& rel = tower.module_at(i).relations();
    LevelImages li;
    li.level = tower.grid()[i];
    for (const auto& g : chain) li.images.push_back(image_presentation(g, rel));
    for (std::size_t j = 0; j + 1 < chain.size(); ++j)
      if (!submodule_contained(chain[j], chain[j + 1], rel)) li.monotone = false;
    if (!li.monotone) throw std::logic_error("image chain fails monotonicity");
    if (chain.size() >= window)
      li.stabilized = level_stabilization(chain, rel, window).has_value();
    report.levels.push_back(std::move(li));
  }
  // Mid-grid levels see only short chains; the verdict comes from the
  // shallowest level, whose chain spans the whole grid.
  report.stabilized = report.levels.back().stabilized;
  return report;
}

const char* to_string(MlCertificateKind kind) {
  switch (kind) {
    case MlCertificateKind::SurjectiveCriterion: return "surjective_criterion";
    case MlCertificateKind::FiniteDimCriterion: return "finite_dim_criterion";
    case MlCertificateKind::EmpiricalAtDepth: return "empirical_at_depth";
    case MlCertificateKind::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

MlCertificate mittag_leffler(const Tower& tower, std::size_t window) {
  if (tower.direction() != TowerDirection::TowardMinusInfinity)
    throw std::invalid_argument("Mittag-Leffler needs a tower toward -infinity");
  MlCertificate cert;

  bool all_surjective = true;
  for (std::size_t j = 0; j + 1 < tower.size(); ++j)
    if (!tower.transition(j).is_surjective()) {
      all_surjective = false;
      break;
    }
  if (all_surjective && tower.size() > 1) {
    cert.kind = MlCertificateKind::SurjectiveCriterion;
    cert.stabilization_depth = 0;
    cert.note = "every transition is surjective";
    return cert;
  }

  auto chains = image_chains(tower);
  std::optional<std::size_t> observed_depth;
  if (chains.gens.back().size() >= window)
    observed_depth = level_stabilization(chains.gens.back(),
                                         tower.module_at(tower.size() - 1).relations(), window);

  if (tower.ring().is_field()) {
    // every module here is finite dimensional, so the condition holds for
    // the full tower; the grid observation is attached as evidence
    cert.kind = MlCertificateKind::FiniteDimCriterion;
    cert.stabilization_depth = observed_depth;
    cert.note = observed_depth
                    ? "finite dimensional over a field; images settled on the grid"
                    : "finite dimensional over a field; grid too shallow to watch settling";
    return cert;
  }
  if (observed_depth) {
    cert.kind = MlCertificateKind::EmpiricalAtDepth;
    cert.stabilization_depth = observed_depth;
    cert.note = "images settled on the grid; no abstract criterion applies";
    return cert;
  }
  cert.kind = MlCertificateKind::Indeterminate;
  cert.note = "images still shrinking at the deepest grid level";
  return cert;
}

Lim1Report lim1(const Tower& tower, std::uint64_t seed, std::size_t samples) {
  if (tower.direction() != TowerDirection::TowardMinusInfinity)
    throw std::invalid_argument("lim1 needs a tower toward -infinity");
  const CoefficientRing& ring = tower.ring();

  std::vector<std::string> gens;
  std::vector<std::size_t> offsets;
  for (std::size_t j = 0; j < tower.size(); ++j) {
    offsets.push_back(gens.size());
    for (const auto& g : tower.module_at(j).generators())
      gens.push_back("a" + std::to_string(j) + ":" + g);
  }
  std::size_t total = gens.size();

  ExactMatrix relations(ring, total, 0);
  for (std::size_t j = 0; j < tower.size(); ++j) {
    const ExactMatrix& r = tower.module_at(j).relations();
    ExactMatrix block(ring, total, r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t c = 0; c < r.cols(); ++c) block.set(offsets[j] + i, c, r.at(i, c));
    relations = relations.hstack(block);
  }
  PresentedModule product = PresentedModule::present_quotient(ring, gens, relations);

  // Delta(x)_j = x_j - T_{j-1}(x_{j-1}); the deepest component is x_0 alone.
  ExactMatrix delta = ExactMatrix::identity(ring, total);
  for (std::size_t j = 1; j < tower.size(); ++j) {
    const ExactMatrix& t = tower.transition(j - 1).matrix();
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t c = 0; c < t.cols(); ++c)
        delta.set(offsets[j] + i, offsets[j - 1] + c, -t.at(i, c));
  }
  ModuleMap delta_map(product, product, delta);

  Lim1Report report{delta_map.cokernel(), "finite_truncation", false,
                    mittag_leffler(tower), 0};
  report.full_tower_vanishing = report.ml.kind != MlCertificateKind::Indeterminate;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-4, 4);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Rational> y(total, Rational(0));
    for (auto& v : y) v = ring.normalize(Rational(small(rng)));
    // back-substitution: x_0 = y_0, x_j = y_j + T_{j-1}(x_{j-1})
    std::vector<Rational> x(total, Rational(0));
    for (std::size_t j = 0; j < tower.size(); ++j) {
      std::size_t n_j = tower.module_at(j).generator_count();
      for (std::size_t i = 0; i < n_j; ++i) x[offsets[j] + i] = y[offsets[j] + i];
      if (j > 0) {
        const ExactMatrix& t = tower.transition(j - 1).matrix();
        std::size_t n_prev = tower.module_at(j - 1).generator_count();
        for (std::size_t i = 0; i < t.rows(); ++i) {
          Rational acc = x[offsets[j] + i];
          for (std::size_t c = 0; c < n_prev; ++c) acc += t.at(i, c) * x[offsets[j - 1] + c];
          x[offsets[j] + i] = ring.normalize(acc);
        }
      }
    }
    auto image = delta.apply(x);
    for (std::size_t i = 0; i < total; ++i)
      if (ring.normalize(image[i] - y[i]) != 0)
        throw std::logic_error("lim1 preimage verification failed");
    ++report.preimage_checks;
  }
  return report;
}

}  // namespace morsetower
