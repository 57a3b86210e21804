#include "morsetower/report.hpp"

#include <sstream>

namespace morsetower {

Json json_of(const Rational& x) { return rational_to_string(x); }

Json json_of(const Integer& x) { return x.get_str(); }

Json json_of(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(json_of(x));
  return a;
}

Json json_of(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(json_of(x));
  return a;
}

Json json_of(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Json json_of(const PresentedModule& m) {
  return Json{{"ring", m.ring().to_string()},
              {"rank", m.free_rank()},
              {"invariant_factors", json_of(m.invariant_factors())},
              {"generators", m.generators()},
              {"description", m.describe()}};
}

Json json_of(const ModuleMap& f) {
  return Json{{"source", json_of(f.source())},
              {"target", json_of(f.target())},
              {"matrix", json_of(f.matrix())}};
}

Json json_of(const ImagePresentation& im) {
  return Json{{"rank", im.rank},
              {"elementary_divisors", json_of(im.elementary_divisors)}};
}

Json json_of(const CriticalPoint& p) {
  Json j{{"name", p.name}, {"action", json_of(p.action)}};
  if (p.grading) j["grading"] = *p.grading;
  return j;
}

Json json_of(const FloerTriple& t) {
  Json points = Json::array();
  for (const auto& p : t.points()) points.push_back(json_of(p));
  Json flows = Json::array();
  for (const auto& [key, value] : t.flows())
    flows.push_back(Json{{"from", key.first}, {"to", key.second}, {"count", json_of(value)}});
  return Json{{"ring", t.ring().to_string()},
              {"points", std::move(points)},
              {"flows", std::move(flows)}};
}

Json json_of(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"axiom", c.axiom}, {"pass", c.pass}, {"witness", c.witness}});
  return Json{{"checks", std::move(checks)}, {"all_pass", r.all_pass()}};
}

Json json_of(const Window& w) {
  return Json{{"a", json_of(w.a)}, {"b", json_of(w.b)}};
}

Json json_of(const WindowComplex& c) {
  Json basis = Json::array();
  for (const auto& p : c.basis()) basis.push_back(json_of(p));
  return Json{{"window", json_of(c.window())},
              {"ring", c.ring().to_string()},
              {"dim", c.dim()},
              {"basis", std::move(basis)},
              {"boundary", json_of(c.boundary())}};
}

Json json_of(const HomologyGroup& h) {
  return Json{{"rank", h.module().free_rank()},
              {"invariant_factors", json_of(h.module().invariant_factors())},
              {"module", json_of(h.module())},
              {"representatives", json_of(h.representatives())}};
}

Json json_of(const SquareClassification& s) {
  return Json{{"commutative", s.commutative},
              {"exact", s.exact},
              {"cartesian", s.cartesian},
              {"cocartesian", s.cocartesian},
              {"bicartesian", s.bicartesian}};
}

Json json_of(const IdentityReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return Json{{"checks", std::move(checks)},
              {"samples", r.samples},
              {"all_pass", r.all_pass()}};
}

Json json_of(const Tower& t) {
  Json modules = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) modules.push_back(json_of(t.module_at(i)));
  Json transitions = Json::array();
  for (std::size_t j = 0; j + 1 < t.size(); ++j)
    transitions.push_back(json_of(t.transition(j).matrix()));
  return Json{{"direction", t.direction() == TowerDirection::TowardMinusInfinity
                                ? "toward_minus_infinity"
                                : "toward_plus_infinity"},
              {"grid", json_of(t.grid())},
              {"modules", std::move(modules)},
              {"transitions", std::move(transitions)}};
}

Json json_of(const GridLimit& l) {
  Json maps = Json::array();
  for (const auto& m : l.structure_maps) maps.push_back(json_of(m.matrix()));
  return Json{{"module", json_of(l.module)},
              {"structure_maps", std::move(maps)},
              {"truncation", l.truncation_tag}};
}

Json json_of(const LevelImages& l) {
  Json images = Json::array();
  for (const auto& im : l.images) images.push_back(json_of(im));
  return Json{{"level", json_of(l.level)},
              {"images", std::move(images)},
              {"monotone", l.monotone},
              {"stabilized", l.stabilized}};
}

Json json_of(const StabilizationReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(json_of(l));
  return Json{{"levels", std::move(levels)},
              {"window", r.window},
              {"stabilized", r.stabilized}};
}

Json json_of(const MlCertificate& c) {
  Json j{{"kind", to_string(c.kind)}, {"note", c.note}};
  j["stabilization_depth"] =
      c.stabilization_depth ? Json(*c.stabilization_depth) : Json(nullptr);
  return j;
}

Json json_of(const Lim1Report& r) {
  return Json{{"module", json_of(r.module)},
              {"certificate", r.certificate},
              {"full_tower_vanishing", r.full_tower_vanishing},
              {"ml", json_of(r.ml)},
              {"preimage_checks", r.preimage_checks}};
}

Json json_of(const KappaReport& r) {
  Json per_b = Json::array();
  for (const auto& m : r.kappa_b) per_b.push_back(json_of(m.matrix()));
  Json j{{"kappa_b", std::move(per_b)},
         {"defining_identity", r.defining_identity},
         {"diagram_commutes", r.diagram_commutes},
         {"compatible", r.compatible},
         {"unique", r.unique},
         {"all_pass", r.all_pass()}};
  j["kappa"] = r.kappa ? json_of(*r.kappa) : Json(nullptr);
  return j;
}

Json json_of(const TamenessReport& r) {
  auto opt = [](const std::optional<ModuleMap>& m) {
    return m ? json_of(m->matrix()) : Json(nullptr);
  };
  Json mu_a = Json::array(), nu_b = Json::array();
  for (const auto& m : r.mu_a) mu_a.push_back(json_of(m.matrix()));
  for (const auto& m : r.nu_b) nu_b.push_back(json_of(m.matrix()));
  return Json{{"mu_a", std::move(mu_a)},
              {"nu_b", std::move(nu_b)},
              {"mu", opt(r.mu)},
              {"nu", opt(r.nu)},
              {"rho", opt(r.rho)},
              {"sigma", opt(r.sigma)},
              {"characterizations_hold", r.characterizations_hold},
              {"mu_a_iso", r.mu_a_iso},
              {"nu_b_iso", r.nu_b_iso},
              {"mu_iso", r.mu_iso},
              {"nu_surjective", r.nu_surjective},
              {"tame", r.tame}};
}

Json json_of(const TheoremAGridResult& r) {
  return Json{{"a_grid", json_of(r.a_grid)},
              {"b_grid", json_of(r.b_grid)},
              {"k_iso", r.k_iso},
              {"hk_iso", r.hk_iso},
              {"diagram_commutes", r.diagram_commutes},
              {"rho_iso", r.rho_iso},
              {"kappa_surjective", r.kappa_surjective},
              {"tame", r.tame},
              {"images_stabilized", r.images_stabilized},
              {"ml", json_of(r.ml)},
              {"shallow_image_divisors", json_of(r.shallow_image_divisors)}};
}

Json json_of(const TheoremAReport& r) {
  Json per_grid = Json::array();
  for (const auto& g : r.per_grid) per_grid.push_back(json_of(g));
  return Json{{"ring", r.ring},
              {"per_grid", std::move(per_grid)},
              {"certified", r.certified},
              {"diagnostic", r.diagnostic}};
}

Json json_of(const WitnessSequence& s) {
  return Json{{"a", s.a}, {"partial_sums", json_of(s.partial_sums)}};
}

Json json_of(const WitnessValidation& v) {
  return Json{{"valid", v.valid}, {"violation_k", v.violation_k}, {"reason", v.reason}};
}

Json json_of(const ObstructionEntry& e) {
  Json j{{"b0", e.b0},
         {"b_k", json_of(e.b_k)},
         {"mode", to_string(e.mode)}};
  j["obstruction_depth"] = e.depth ? Json(*e.depth) : Json(nullptr);
  return j;
}

Json json_of(const ObstructionReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back(json_of(e));
  return Json{{"entries", std::move(entries)},
              {"complete", r.complete},
              {"b_bound", r.b_bound},
              {"depth_bound", r.depth_bound}};
}

namespace {
void render_lines(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      render_lines(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) {
      render_lines(value, path + "[" + std::to_string(i) + "]", out);
      ++i;
    }
    if (j.empty()) out << path << ": []\n";
  } else {
    out << path << ": ";
    if (j.is_string())
      out << j.get<std::string>();
    else if (j.is_null())
      out << "null";
    else
      out << j.dump();
    out << "\n";
  }
}
}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream out;
  render_lines(j, "", out);
  return out.str();
}

}  // namespace morsetower
