#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "morsetower/report.hpp"

using namespace morsetower;

namespace {

// Accepts "p/q", integers, and decimal literals like -3.5.
Rational parse_level(const std::string& token) {
  auto dot = token.find('.');
  if (dot == std::string::npos) return parse_rational(token);
  std::string digits = token.substr(0, dot) + token.substr(dot + 1);
  std::string denom = "1" + std::string(token.size() - dot - 1, '0');
  return parse_rational(digits + "/" + denom);
}

std::vector<Rational> parse_grid(const std::string& csv) {
  std::vector<Rational> grid;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(parse_level(item));
  }
  if (grid.empty()) throw CLI::ValidationError("grid", "empty grid");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw CLI::ValidationError("grid", "grid must be strictly increasing");
  return grid;
}

struct CommonOpts {
  std::string input_path;
  std::string builtin;
  std::size_t depth = 6;
  std::string ring = "Q";
  std::string format = "text";
  std::string output_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input) {
    auto* pos = cmd->add_option("input", o.input_path, "path to a .floer file");
    auto* bi = cmd->add_option("--builtin", o.builtin, "builtin family name");
    pos->excludes(bi);
    cmd->add_option("--depth", o.depth, "builtin family depth");
    cmd->add_option("--ring", o.ring, "coefficient ring: Q, Z, or Fp");
  }
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", o.output_path, "write the report to this path");
}

FloerTriple load_triple(const CommonOpts& o) {
  if (!o.input_path.empty()) {
    std::ifstream in(o.input_path);
    if (!in) throw CLI::ValidationError("input", "cannot open " + o.input_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_floer(buf.str());
  }
  if (o.builtin.empty())
    throw CLI::ValidationError("input", "provide an input file or --builtin");
  auto fam = builtin_family_by_name(o.builtin);
  if (!fam) throw CLI::ValidationError("builtin", "unknown builtin: " + o.builtin);
  return builtin_family(*fam, o.depth, parse_ring(o.ring));
}

int emit(const Json& report, const CommonOpts& o, int code) {
  std::string text = o.format == "json" ? report.dump(2) + "\n" : render_text(report);
  if (o.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output_path);
    if (!out) {
      std::cerr << "cannot write " << o.output_path << "\n";
      return 2;
    }
    out << text;
  }
  return code;
}

Tower tower_from_flags(const FloerTriple& t, const std::string& a_grid,
                       const std::string& b_grid, const std::string& fixed_a,
                       const std::string& fixed_b, const std::string& level) {
  TowerLevel lv = level == "chain" ? TowerLevel::Chain : TowerLevel::Homology;
  if (!a_grid.empty()) {
    if (fixed_b.empty())
      throw CLI::ValidationError("tower", "--a-grid requires --b");
    return build_a_tower(t, parse_level(fixed_b), parse_grid(a_grid), lv);
  }
  if (!b_grid.empty()) {
    if (fixed_a.empty())
      throw CLI::ValidationError("tower", "--b-grid requires --a");
    return build_b_tower(t, parse_level(fixed_a), parse_grid(b_grid), lv);
  }
  throw CLI::ValidationError("tower", "provide --a-grid with --b, or --b-grid with --a");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact action-window homology and limit diagnostics"};
  app.require_subcommand(1);

  CommonOpts o;
  bool morse_mode = false;
  std::string window_a, window_b;
  std::string from_a, from_b, to_a, to_b;
  std::string a_grid, b_grid, fixed_a, fixed_b, level = "homology";
  std::size_t stab_window = 3;
  std::uint64_t seed = 1;
  std::size_t samples = 10;
  std::string a_levels, b_levels;
  std::size_t grids = 0;
  std::string floor_s;
  long b_bound = 1000;
  std::size_t depth_bound = 40;
  std::string witness_csv;
  std::string example_name, example_path;
  std::size_t example_depth = 4;

  auto* c_validate = app.add_subcommand("validate", "check the axioms");
  add_common(c_validate, o);
  c_validate->add_flag("--morse", morse_mode, "also check the grading constraint");

  auto* c_homology = app.add_subcommand("homology", "homology of one action window");
  add_common(c_homology, o);
  std::vector<std::string> window_vals;
  c_homology->add_option("--window", window_vals, "window floor and ceiling")->expected(2);
  c_homology->add_option("--a", window_a, "window floor a");
  c_homology->add_option("--b", window_b, "window ceiling b");

  auto* c_map = app.add_subcommand("map", "induced map between two windows");
  add_common(c_map, o);
  c_map->add_option("--from-a", from_a)->required();
  c_map->add_option("--from-b", from_b)->required();
  c_map->add_option("--to-a", to_a)->required();
  c_map->add_option("--to-b", to_b)->required();

  auto* c_tower = app.add_subcommand("tower", "one-parameter tower with limits");
  auto* c_ml = app.add_subcommand("ml", "Mittag-Leffler certificate for a tower");
  auto* c_lim1 = app.add_subcommand("lim1", "first derived limit of a tower");
  for (auto* cmd : {c_tower, c_ml, c_lim1}) {
    add_common(cmd, o);
    cmd->add_option("--a-grid", a_grid, "comma-separated floors (with --b)");
    cmd->add_option("--b-grid", b_grid, "comma-separated ceilings (with --a)");
    cmd->add_option("--a", fixed_a, "fixed floor for --b-grid");
    cmd->add_option("--b", fixed_b, "fixed ceiling for --a-grid");
    cmd->add_option("--level", level)->check(CLI::IsMember({"chain", "homology"}));
    cmd->add_option("-w,--stab-window", stab_window, "stabilization window");
  }
  c_lim1->add_option("--seed", seed);
  c_lim1->add_option("--samples", samples);

  auto* c_square = app.add_subcommand("square", "classify a projection/inclusion square");
  add_common(c_square, o);
  c_square->add_option("--a-levels", a_levels, "a1,a2")->required();
  c_square->add_option("--b-levels", b_levels, "b1,b2")->required();

  auto* c_grid = app.add_subcommand("grid", "bidirected grid with kappa and tameness");
  add_common(c_grid, o);
  c_grid->add_option("--a-grid", a_grid)->required();
  c_grid->add_option("--b-grid", b_grid)->required();

  auto* c_ta = app.add_subcommand("theorem-a", "deepening-grid certification harness");
  add_common(c_ta, o);
  c_ta->add_option("--grids", grids, "canonical schedule up to this depth");
  c_ta->add_option("--a-grid", a_grid, "explicit floors (single grid)");
  c_ta->add_option("--b-grid", b_grid, "explicit ceilings (single grid)");

  auto* c_nov = app.add_subcommand("novikov", "truncated completion diagnostics");
  add_common(c_nov, o);
  c_nov->add_option("--floor", floor_s, "truncation floor")->required();
  c_nov->add_option("-B,--b-bound", b_bound, "candidate bound for b0");
  c_nov->add_option("-K,--depth-bound", depth_bound, "recurrence depth bound");
  c_nov->add_option("--witness", witness_csv, "comma-separated 0/1 sequence");

  auto* c_ex = app.add_subcommand("example", "write a builtin family to a .floer file");
  add_common(c_ex, o, /*with_input=*/false);
  c_ex->add_option("name", example_name, "builtin family name")->required();
  c_ex->add_option("path", example_path, "output file")->required();
  c_ex->add_option("--depth", example_depth, "family depth");
  c_ex->add_option("--ring", o.ring, "coefficient ring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_validate)) {
      auto t = load_triple(o);
      auto report = validate(t, morse_mode);
      Json j = json_of(report);
      return emit(j, o, report.all_pass() ? 0 : 1);
    }

    if (app.got_subcommand(c_homology)) {
      if (window_vals.size() == 2) {
        window_a = window_vals[0];
        window_b = window_vals[1];
      }
      if (window_a.empty() || window_b.empty())
        throw CLI::ValidationError("window", "provide --window A B");
      auto t = load_triple(o);
      Window w(parse_level(window_a), parse_level(window_b));
      WindowComplex c(t, w);
      auto dsq = check_d_squared(c);
      auto h = HomologyGroup::compute(c);
      Json j = json_of(h);
      j["window"] = json_of(w);
      j["dim"] = c.dim();
      j["d_squared_zero"] = dsq.pass;
      return emit(j, o, dsq.pass ? 0 : 1);
    }

    if (app.got_subcommand(c_map)) {
      auto t = load_triple(o);
      Rational fa = parse_level(from_a), fb = parse_level(from_b);
      Rational ta = parse_level(to_a), tb = parse_level(to_b);
      if (ta < fa || tb < fb)
        throw CLI::ValidationError("map", "target window must be shallower: to-a >= from-a, to-b >= from-b");
      // projection deepening the floor, then inclusion raising the ceiling
      ChainMap proj = chain_projection(t, fa, ta, fb);
      ChainMap incl = chain_inclusion(t, ta, fb, tb);
      ChainMap chain = incl.compose_after(proj);
      auto hs = HomologyGroup::compute(chain.source());
      auto ht = HomologyGroup::compute(chain.target());
      auto f = induced_hom_map(chain, hs, ht);
      Json j = json_of(f);
      j["from"] = Json{{"a", json_of(fa)}, {"b", json_of(fb)}};
      j["to"] = Json{{"a", json_of(ta)}, {"b", json_of(tb)}};
      j["injective"] = f.is_injective();
      j["surjective"] = f.is_surjective();
      j["isomorphism"] = f.is_isomorphism();
      return emit(j, o, 0);
    }

    if (app.got_subcommand(c_tower) || app.got_subcommand(c_ml) ||
        app.got_subcommand(c_lim1)) {
      auto t = load_triple(o);
      Tower tw = tower_from_flags(t, a_grid, b_grid, fixed_a, fixed_b, level);
      if ((app.got_subcommand(c_ml) || app.got_subcommand(c_lim1)) &&
          tw.direction() != TowerDirection::TowardMinusInfinity)
        throw CLI::ValidationError("tower", "ml and lim1 apply to inverse towers: use --a-grid with --b");
      if (app.got_subcommand(c_ml)) {
        auto cert = mittag_leffler(tw, stab_window);
        return emit(json_of(cert), o, 0);
      }
      if (app.got_subcommand(c_lim1)) {
        auto rep = lim1(tw, seed, samples);
        return emit(json_of(rep), o, 0);
      }
      Json j = json_of(tw);
      if (tw.direction() == TowerDirection::TowardMinusInfinity) {
        j["stabilization"] = json_of(eventual_images(tw, stab_window));
        j["inverse_limit"] = json_of(grid_inverse_limit(tw));
      } else {
        j["direct_limit"] = json_of(grid_direct_limit(tw));
      }
      return emit(j, o, 0);
    }

    if (app.got_subcommand(c_square)) {
      auto t = load_triple(o);
      auto as = parse_grid(a_levels);
      auto bs = parse_grid(b_levels);
      if (as.size() != 2 || bs.size() != 2)
        throw CLI::ValidationError("square", "need exactly two a-levels and two b-levels");
      auto phi_ba = chain_projection(t, as[0], as[1], bs[0]);
      auto phi_ca = chain_inclusion(t, as[0], bs[0], bs[1]);
      auto phi_db = chain_inclusion(t, as[1], bs[0], bs[1]);
      auto phi_dc = chain_projection(t, as[0], as[1], bs[1]);
      auto cls = classify_square(phi_ba, phi_ca, phi_db, phi_dc);
      Json j = json_of(cls);
      j["a_levels"] = json_of(as);
      j["b_levels"] = json_of(bs);
      return emit(j, o, cls.bicartesian ? 0 : 1);
    }

    if (app.got_subcommand(c_grid)) {
      auto t = load_triple(o);
      BidirectGrid grid(t, parse_grid(a_grid), parse_grid(b_grid));
      Json dims = Json::array();
      for (std::size_t ai = 0; ai < grid.a_size(); ++ai) {
        Json row = Json::array();
        for (std::size_t bi = 0; bi < grid.b_size(); ++bi)
          row.push_back(json_of(grid.group(ai, bi).module()));
        dims.push_back(std::move(row));
      }
      auto kap = canonical_kappa(grid);
      auto tam = tameness_maps(grid);
      Json j{{"a_grid", json_of(grid.a_grid())},
             {"b_grid", json_of(grid.b_grid())},
             {"groups", std::move(dims)},
             {"kappa", json_of(kap)},
             {"tameness", json_of(tam)}};
      return emit(j, o, kap.all_pass() && tam.characterizations_hold ? 0 : 1);
    }

    if (app.got_subcommand(c_ta)) {
      auto t = load_triple(o);
      GridSchedule schedule;
      if (grids > 0) {
        schedule = canonical_schedule(grids);
      } else if (!a_grid.empty() && !b_grid.empty()) {
        schedule.emplace_back(parse_grid(a_grid), parse_grid(b_grid));
      } else {
        throw CLI::ValidationError("theorem-a", "provide --grids or both --a-grid and --b-grid");
      }
      auto report = theorem_a_harness(t, schedule);
      return emit(json_of(report), o, report.certified ? 0 : 1);
    }

    if (app.got_subcommand(c_nov)) {
      auto t = load_triple(o);
      Rational floor = parse_level(floor_s);
      auto h = truncated_novikov_homology(t, floor);
      WitnessSequence seq;
      if (witness_csv.empty()) {
        seq = alternating_witness(depth_bound);
      } else {
        std::vector<int> a;
        std::stringstream ss(witness_csv);
        std::string item;
        while (std::getline(ss, item, ',')) a.push_back(std::stoi(item));
        seq = custom_witness(a);
      }
      auto obstruction = boundary_obstruction(seq, b_bound, depth_bound);
      auto xi = xi_from_witness(t, seq, floor);
      Json j{{"floor", json_of(floor)},
             {"homology", json_of(h)},
             {"witness", json_of(seq)},
             {"xi_is_cycle", cycle_check(t, xi)},
             {"obstruction", json_of(obstruction)}};
      return emit(j, o, obstruction.complete ? 0 : 1);
    }

    if (app.got_subcommand(c_ex)) {
      auto fam = builtin_family_by_name(example_name);
      if (!fam) {
        std::cerr << "unknown builtin: " << example_name << "\n";
        return 2;
      }
      auto t = builtin_family(*fam, example_depth, parse_ring(o.ring));
      std::string text = serialize_floer(t);
      std::ofstream out(example_path);
      if (!out) {
        std::cerr << "cannot write " << example_path << "\n";
        return 2;
      }
      out << text;
      out.close();
      auto back = parse_floer(text);
      if (!back.structurally_equal(t)) {
        std::cerr << "round trip mismatch\n";
        return 1;
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const WindowOrderError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
