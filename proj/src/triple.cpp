#include "morsetower/triple.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace morsetower {

namespace {

long floor_long(const Rational& x) {
  Rational y = x;
  y.canonicalize();
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
  return mpz_get_si(q.get_mpz_t());
}

bool point_order(const CriticalPoint& x, const CriticalPoint& y) {
  if (x.action != y.action) return x.action < y.action;
  return x.name < y.name;
}

}  // namespace

FloerTriple::FloerTriple(CoefficientRing ring, std::vector<CriticalPoint> points, FlowMap flows,
                         LazyFamily lazy)
    : ring_(ring), points_(std::move(points)), flows_(std::move(flows)), lazy_(std::move(lazy)) {
  std::sort(points_.begin(), points_.end(), point_order);
  for (auto& [key, value] : flows_) value = ring_.normalize(value);
}

bool FloerTriple::has_grading() const {
  for (const auto& p : points_)
    if (p.grading) return true;
  return false;
}

const CriticalPoint* FloerTriple::find(const std::string& name) const {
  for (const auto& p : points_)
    if (p.name == name) return &p;
  return nullptr;
}

Rational FloerTriple::flow(const std::string& from, const std::string& to) const {
  auto it = flows_.find({from, to});
  return it == flows_.end() ? Rational(0) : it->second;
}

WindowData FloerTriple::window_data(const Rational& a, const Rational& b,
                                    bool half_open_at_top) const {
  if (a > b) throw WindowOrderError("empty window: a > b");
  WindowData w;
  if (lazy_) {
    w = lazy_(a, b);
  } else {
    w.points = points_;
    w.flows = flows_;
  }
  auto inside = [&](const Rational& f) {
    return a <= f && (half_open_at_top ? f < b : f <= b);
  };
  std::vector<CriticalPoint> kept;
  for (const auto& p : w.points)
    if (inside(p.action)) kept.push_back(p);
  std::sort(kept.begin(), kept.end(), point_order);
  std::map<std::string, Rational> action_of;
  for (const auto& p : kept) action_of[p.name] = p.action;
  FlowMap flows;
  for (const auto& [key, value] : w.flows) {
    if (value == 0) continue;
    if (action_of.count(key.first) && action_of.count(key.second))
      flows[key] = ring_.normalize(value);
  }
  w.points = std::move(kept);
  w.flows = std::move(flows);
  return w;
}

std::vector<CriticalPoint> FloerTriple::points_in_window(const Rational& a, const Rational& b,
                                                         bool half_open_at_top) const {
  return window_data(a, b, half_open_at_top).points;
}

std::optional<Rational> FloerTriple::max_action() const {
  if (points_.empty()) return std::nullopt;
  return points_.back().action;
}

std::optional<Rational> FloerTriple::min_action() const {
  if (points_.empty()) return std::nullopt;
  return points_.front().action;
}

ValidationReport validate(const FloerTriple& triple, bool morse_mode) {
  ValidationReport report;
  const auto& points = triple.points();

  AxiomCheck uniq{"names", true, ""};
  {
    std::map<std::string, int> seen;
    for (const auto& p : points)
      if (++seen[p.name] == 2) {
        uniq.pass = false;
        uniq.witness = "duplicate point name " + p.name;
      }
  }
  report.checks.push_back(uniq);

  // Axiom (i): automatic for explicit point lists; lazy families carry the
  // finiteness contract per bounded interval.
  report.checks.push_back({"i", true, triple.has_lazy_family()
                                          ? "finite per bounded interval (lazy-family contract)"
                                          : "explicit finite point list"});

  AxiomCheck a2{"ii", true, ""};
  for (const auto& [key, value] : triple.flows()) {
    if (value == 0) continue;
    const CriticalPoint* from = triple.find(key.first);
    const CriticalPoint* to = triple.find(key.second);
    if (!from || !to) {
      a2.pass = false;
      a2.witness = "flow references unknown point (" + key.first + ", " + key.second + ")";
      break;
    }
    if (!(from->action < to->action)) {
      a2.pass = false;
      a2.witness = "m(" + key.first + ", " + key.second + ") != 0 but f(" + key.first +
                   ") >= f(" + key.second + ")";
      break;
    }
  }
  report.checks.push_back(a2);

  AxiomCheck a3{"iii", true, ""};
  if (a2.pass) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < points.size(); ++i) idx[points[i].name] = i;
    ExactMatrix m(triple.ring(), points.size(), points.size());
    for (const auto& [key, value] : triple.flows())
      m.set(idx[key.first], idx[key.second], value);
    ExactMatrix sq = m * m;
    for (std::size_t i = 0; i < points.size() && a3.pass; ++i)
      for (std::size_t j = 0; j < points.size(); ++j)
        if (sq.at(i, j) != 0) {
          a3.pass = false;
          a3.witness = "sum over c2 of m(" + points[i].name + ",c2) m(c2," + points[j].name +
                       ") = " + rational_to_string(sq.at(i, j));
          break;
        }
  } else {
    a3.witness = "skipped: axiom (ii) failed";
  }
  report.checks.push_back(a3);

  if (morse_mode && triple.has_grading()) {
    AxiomCheck g{"grading", true, ""};
    for (const auto& [key, value] : triple.flows()) {
      if (value == 0) continue;
      const CriticalPoint* from = triple.find(key.first);
      const CriticalPoint* to = triple.find(key.second);
      if (!from || !to || !from->grading || !to->grading) continue;
      if (*from->grading != *to->grading - 1) {
        g.pass = false;
        g.witness = "flow (" + key.first + ", " + key.second + ") violates mu(c') = mu(c) - 1";
        break;
      }
    }
    report.checks.push_back(g);
  }
  return report;
}

FloerTriple parse_floer(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<CoefficientRing> ring;
  std::vector<CriticalPoint> points;
  std::map<std::string, std::size_t> index;
  std::map<std::string, long> gradings;
  FlowMap flows;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    try {
      if (word == "ring") {
        std::string spec, extra;
        if (!(ls >> spec)) throw std::invalid_argument("missing ring");
        if (ls >> extra) spec += extra;
        ring = parse_ring(spec);
      } else if (word == "point") {
        std::string name, action;
        if (!(ls >> name >> action)) throw std::invalid_argument("point needs name and action");
        if (index.count(name)) throw std::invalid_argument("duplicate point name " + name);
        index[name] = points.size();
        points.push_back({name, parse_rational(action), std::nullopt});
      } else if (word == "grading") {
        std::string name;
        long mu;
        if (!(ls >> name >> mu)) throw std::invalid_argument("grading needs name and integer");
        if (!index.count(name)) throw std::invalid_argument("grading for unknown point " + name);
        gradings[name] = mu;
      } else if (word == "flow") {
        std::string from, to, coeff;
        if (!(ls >> from >> to >> coeff))
          throw std::invalid_argument("flow needs from, to, coefficient");
        if (!index.count(from)) throw std::invalid_argument("flow references unknown point " + from);
        if (!index.count(to)) throw std::invalid_argument("flow references unknown point " + to);
        if (flows.count({from, to}))
          throw std::invalid_argument("duplicate flow line for (" + from + ", " + to + ")");
        if (!ring) throw std::invalid_argument("flow before ring declaration");
        Rational value = ring->normalize(parse_rational(coeff));
        if (value == 0)
          throw std::invalid_argument("flow coefficient reduces to zero in " + ring->to_string());
        flows[{from, to}] = value;
      } else {
        throw std::invalid_argument("unknown directive " + word);
      }
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!ring) throw ParseError(lineno, "missing ring declaration");
  for (auto& p : points) {
    auto it = gradings.find(p.name);
    if (it != gradings.end()) p.grading = it->second;
  }
  return FloerTriple(*ring, std::move(points), std::move(flows));
}

std::string serialize_floer(const FloerTriple& triple) {
  std::ostringstream os;
  const auto& ring = triple.ring();
  if (ring.kind() == CoefficientRing::Kind::PrimeField)
    os << "ring F " << ring.modulus().get_str() << "\n";
  else
    os << "ring " << ring.to_string() << "\n";
  for (const auto& p : triple.points())
    os << "point " << p.name << " " << rational_to_string(p.action) << "\n";
  for (const auto& p : triple.points())
    if (p.grading) os << "grading " << p.name << " " << *p.grading << "\n";
  for (const auto& [key, value] : triple.flows())
    os << "flow " << key.first << " " << key.second << " " << rational_to_string(value) << "\n";
  return os.str();
}

std::optional<BuiltinFamily> builtin_family_by_name(const std::string& name) {
  if (name == "intro_lines") return BuiltinFamily::IntroLines;
  if (name == "appendix_z") return BuiltinFamily::AppendixZ;
  return std::nullopt;
}

namespace {

WindowData intro_lines_window(const CoefficientRing& ring, const Rational& a, const Rational& b) {
  WindowData w;
  // cbar_n at action n, cund_n at action -n, n >= 1; flow m(cund_n, cbar_n) = 1.
  long n_hi_bar = b >= 1 ? floor_long(b) : 0;
  long n_hi_und = a <= -1 ? floor_long(-a) : 0;
  for (long n = 1; n <= n_hi_bar; ++n)
    if (Rational(n) >= a) w.points.push_back({"cbar" + std::to_string(n), Rational(n), 1});
  for (long n = 1; n <= n_hi_und; ++n)
    if (Rational(-n) <= b) w.points.push_back({"cund" + std::to_string(n), Rational(-n), 0});
  for (long n = 1; n <= std::min(n_hi_bar, n_hi_und); ++n)
    w.flows[{"cund" + std::to_string(n), "cbar" + std::to_string(n)}] = ring.normalize(1);
  return w;
}

WindowData appendix_z_window(const CoefficientRing& ring, const Rational& a, const Rational& b) {
  WindowData w;
  // cbar_n at -n (n >= 0), cund_n at -n-1 (n >= 1);
  // m(cund_n, cbar_{n-1}) = 1, m(cund_n, cbar_n) = -2.
  if (b < a) return w;
  long bar_hi = a <= 0 ? floor_long(-a) : -1;
  for (long n = 0; n <= bar_hi; ++n) {
    Rational act(-n);
    if (act >= a && act <= b) w.points.push_back({"cbar" + std::to_string(n), act, 1});
  }
  for (long n = 1; n + 1 <= bar_hi + 1; ++n) {
    Rational act(-n - 1);
    if (act >= a && act <= b) w.points.push_back({"cund" + std::to_string(n), act, 0});
    if (act < a) break;
  }
  for (long n = 1;; ++n) {
    Rational und(-n - 1);
    if (und < a) break;
    bool und_in = und >= a && und <= b;
    if (!und_in) continue;
    Rational bar_prev(-(n - 1)), bar_same(-n);
    if (bar_prev >= a && bar_prev <= b)
      w.flows[{"cund" + std::to_string(n), "cbar" + std::to_string(n - 1)}] = ring.normalize(1);
    if (bar_same >= a && bar_same <= b)
      w.flows[{"cund" + std::to_string(n), "cbar" + std::to_string(n)}] = ring.normalize(-2);
  }
  return w;
}

}  // namespace

FloerTriple builtin_family(BuiltinFamily family, std::size_t depth, CoefficientRing ring) {
  if (depth < 1) throw std::invalid_argument("builtin family depth must be >= 1");
  if (family == BuiltinFamily::IntroLines) {
    WindowData w = intro_lines_window(ring, Rational(-(long)depth), Rational((long)depth));
    return FloerTriple(ring, w.points, w.flows,
                       [ring](const Rational& a, const Rational& b) {
                         return intro_lines_window(ring, a, b);
                       });
  }
  // appendix_z at depth N: cbar_0..cbar_N, cund_1..cund_{N-1}.
  WindowData w = appendix_z_window(ring, Rational(-(long)depth), Rational(0));
  return FloerTriple(ring, w.points, w.flows,
                     [ring](const Rational& a, const Rational& b) {
                       return appendix_z_window(ring, a, b);
                     });
}

namespace {

FloerTriple build_random(std::mt19937_64& rng, std::size_t pairs, std::size_t singletons,
                         long action_spread, CoefficientRing ring) {
  const std::size_t n = 2 * pairs + singletons;
  if (action_spread < 1) action_spread = 1;
  std::uniform_int_distribution<long> gap(1, 2 * action_spread);

  // Strictly increasing distinct rational actions (half-integer steps).
  std::vector<Rational> actions(n);
  Rational cur(0);
  for (std::size_t i = 0; i < n; ++i) {
    cur += Rational(gap(rng), 2);
    actions[i] = cur;
  }

  // Canonical square-zero matrix: a matching of pair slots (i -> j, i < j).
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  ExactMatrix d0(ring, n, n);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t x = order[2 * p], y = order[2 * p + 1];
    if (x > y) std::swap(x, y);
    d0.set(x, y, 1);
  }

  // Random action-filtered unitriangular conjugator.
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> fill(0, 2);
  ExactMatrix t = ExactMatrix::identity(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (fill(rng) == 0) t.set(i, j, coeff(rng));
  // Unitriangular inverse by forward substitution: t_inv = sum (I - t)^k.
  ExactMatrix nil = ExactMatrix::identity(ring, n) - t;
  ExactMatrix t_inv = ExactMatrix::identity(ring, n);
  ExactMatrix pw = nil;
  for (std::size_t k = 0; k < n && !pw.is_zero(); ++k) {
    t_inv = t_inv + pw;
    pw = pw * nil;
  }
  ExactMatrix d = t * d0 * t_inv;

  std::vector<CriticalPoint> points(n);
  for (std::size_t i = 0; i < n; ++i)
    points[i] = {"p" + std::to_string(i), actions[i], std::nullopt};
  FlowMap flows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d.at(i, j) != 0) flows[{points[i].name, points[j].name}] = d.at(i, j);
  return FloerTriple(ring, std::move(points), std::move(flows));
}

}  // namespace

FloerTriple random_triple(std::uint64_t seed, std::size_t point_count, long action_spread,
                          CoefficientRing ring) {
  if (point_count < 1) throw std::invalid_argument("point_count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, point_count / 2);
  std::size_t pairs = pick(rng);
  return build_random(rng, pairs, point_count - 2 * pairs, action_spread, ring);
}

FloerTriple random_triple_structured(std::uint64_t seed, std::size_t pairs,
                                     std::size_t singletons, long action_spread,
                                     CoefficientRing ring) {
  std::mt19937_64 rng(seed);
  return build_random(rng, pairs, singletons, action_spread, ring);
}

}  // namespace morsetower
