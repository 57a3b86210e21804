#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "morsetower/report.hpp"

namespace py = pybind11;
using namespace morsetower;

namespace {

py::object to_py(const Json& j) {
  auto loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

std::vector<Rational> levels(const std::vector<std::string>& tokens) {
  std::vector<Rational> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_rational(t));
  return out;
}

FloerTriple make_builtin(const std::string& name, std::size_t depth, const std::string& ring) {
  auto fam = builtin_family_by_name(name);
  if (!fam) throw std::invalid_argument("unknown builtin: " + name);
  return builtin_family(*fam, depth, parse_ring(ring));
}

}  // namespace

PYBIND11_MODULE(morsetower, m) {
  m.doc() = "exact action-window homology and limit diagnostics";

  py::class_<FloerTriple>(m, "Triple")
      .def_property_readonly("ring", [](const FloerTriple& t) { return t.ring().to_string(); })
      .def_property_readonly("point_count",
                             [](const FloerTriple& t) { return t.points().size(); })
      .def("__repr__", [](const FloerTriple& t) {
        return "<Triple " + t.ring().to_string() + ", " +
               std::to_string(t.points().size()) + " points>";
      });

  m.def("builtin", &make_builtin, py::arg("name"), py::arg("depth") = 6,
        py::arg("ring") = "Q");
  m.def("parse", &parse_floer, py::arg("text"));
  m.def("serialize", &serialize_floer, py::arg("triple"));
  m.def(
      "random",
      [](std::uint64_t seed, std::size_t points, long spread, const std::string& ring) {
        return random_triple(seed, points, spread, parse_ring(ring));
      },
      py::arg("seed"), py::arg("points") = 10, py::arg("spread") = 4, py::arg("ring") = "Q");

  m.def(
      "validate",
      [](const FloerTriple& t, bool morse) { return to_py(json_of(validate(t, morse))); },
      py::arg("triple"), py::arg("morse") = false);

  m.def(
      "homology",
      [](const FloerTriple& t, const std::string& a, const std::string& b) {
        WindowComplex c(t, Window(parse_rational(a), parse_rational(b)));
        Json j = json_of(HomologyGroup::compute(c));
        j["window"] = json_of(c.window());
        j["dim"] = c.dim();
        return to_py(j);
      },
      py::arg("triple"), py::arg("a"), py::arg("b"));

  m.def(
      "induced_map",
      [](const FloerTriple& t, const std::string& fa, const std::string& fb,
         const std::string& ta, const std::string& tb) {
        Rational ra = parse_rational(fa), rb = parse_rational(fb);
        Rational sa = parse_rational(ta), sb = parse_rational(tb);
        ChainMap proj = chain_projection(t, ra, sa, rb);
        ChainMap incl = chain_inclusion(t, sa, rb, sb);
        ChainMap chain = incl.compose_after(proj);
        auto f = induced_hom_map(chain, HomologyGroup::compute(chain.source()),
                                 HomologyGroup::compute(chain.target()));
        Json j = json_of(f);
        j["injective"] = f.is_injective();
        j["surjective"] = f.is_surjective();
        j["isomorphism"] = f.is_isomorphism();
        return to_py(j);
      },
      py::arg("triple"), py::arg("from_a"), py::arg("from_b"), py::arg("to_a"),
      py::arg("to_b"));

  m.def(
      "tower",
      [](const FloerTriple& t, const std::string& b, const std::vector<std::string>& a_grid,
         std::size_t window) {
        Tower tw = build_a_tower(t, parse_rational(b), levels(a_grid), TowerLevel::Homology);
        Json j = json_of(tw);
        j["stabilization"] = json_of(eventual_images(tw, window));
        j["inverse_limit"] = json_of(grid_inverse_limit(tw));
        return to_py(j);
      },
      py::arg("triple"), py::arg("b"), py::arg("a_grid"), py::arg("window") = 3);

  m.def(
      "mittag_leffler",
      [](const FloerTriple& t, const std::string& b, const std::vector<std::string>& a_grid,
         std::size_t window) {
        Tower tw = build_a_tower(t, parse_rational(b), levels(a_grid), TowerLevel::Homology);
        return to_py(json_of(mittag_leffler(tw, window)));
      },
      py::arg("triple"), py::arg("b"), py::arg("a_grid"), py::arg("window") = 3);

  m.def(
      "lim1",
      [](const FloerTriple& t, const std::string& b, const std::vector<std::string>& a_grid,
         std::uint64_t seed, std::size_t samples) {
        Tower tw = build_a_tower(t, parse_rational(b), levels(a_grid), TowerLevel::Homology);
        return to_py(json_of(lim1(tw, seed, samples)));
      },
      py::arg("triple"), py::arg("b"), py::arg("a_grid"), py::arg("seed") = 1,
      py::arg("samples") = 10);

  m.def(
      "square",
      [](const FloerTriple& t, const std::string& a1, const std::string& a2,
         const std::string& b1, const std::string& b2) {
        Rational ra1 = parse_rational(a1), ra2 = parse_rational(a2);
        Rational rb1 = parse_rational(b1), rb2 = parse_rational(b2);
        auto cls = classify_square(chain_projection(t, ra1, ra2, rb1),
                                   chain_inclusion(t, ra1, rb1, rb2),
                                   chain_inclusion(t, ra2, rb1, rb2),
                                   chain_projection(t, ra1, ra2, rb2));
        return to_py(json_of(cls));
      },
      py::arg("triple"), py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"));

  m.def(
      "grid",
      [](const FloerTriple& t, const std::vector<std::string>& a_grid,
         const std::vector<std::string>& b_grid) {
        BidirectGrid grid(t, levels(a_grid), levels(b_grid));
        Json groups = Json::array();
        for (std::size_t ai = 0; ai < grid.a_size(); ++ai) {
          Json row = Json::array();
          for (std::size_t bi = 0; bi < grid.b_size(); ++bi)
            row.push_back(json_of(grid.group(ai, bi).module()));
          groups.push_back(std::move(row));
        }
        Json j{{"groups", std::move(groups)},
               {"kappa", json_of(canonical_kappa(grid))},
               {"tameness", json_of(tameness_maps(grid))}};
        return to_py(j);
      },
      py::arg("triple"), py::arg("a_grid"), py::arg("b_grid"));

  m.def(
      "theorem_a",
      [](const FloerTriple& t, std::size_t max_depth) {
        return to_py(json_of(theorem_a_harness(t, canonical_schedule(max_depth))));
      },
      py::arg("triple"), py::arg("max_depth") = 4);

  m.def(
      "novikov",
      [](const FloerTriple& t, const std::string& floor, long b_bound,
         std::size_t depth_bound) {
        Rational f = parse_rational(floor);
        auto seq = alternating_witness(depth_bound);
        auto xi = xi_from_witness(t, seq, f);
        Json j{{"floor", json_of(f)},
               {"homology", json_of(truncated_novikov_homology(t, f))},
               {"witness", json_of(seq)},
               {"xi_is_cycle", cycle_check(t, xi)},
               {"obstruction", json_of(boundary_obstruction(seq, b_bound, depth_bound))}};
        return to_py(j);
      },
      py::arg("triple"), py::arg("floor"), py::arg("b_bound") = 1000,
      py::arg("depth_bound") = 40);
}
