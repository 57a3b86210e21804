#include "morsetower/window.hpp"

#include <algorithm>
#include <sstream>

namespace morsetower {

WindowComplex::WindowComplex(const FloerTriple& triple, const Window& window)
    : window_(window), boundary_(triple.ring(), 0, 0) {
  WindowData data = triple.window_data(window.a, window.b);
  basis_ = data.points;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < basis_.size(); ++i) idx[basis_[i].name] = i;
  ExactMatrix d(triple.ring(), basis_.size(), basis_.size());
  for (const auto& [key, value] : data.flows)
    d.set(idx.at(key.first), idx.at(key.second), value);
  boundary_ = d;
}

int WindowComplex::basis_index(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<Rational> WindowComplex::chain_from_coeffs(
    const std::map<std::string, Rational>& coeffs) const {
  std::vector<Rational> v(basis_.size(), Rational(0));
  for (const auto& [name, value] : coeffs) {
    int i = basis_index(name);
    if (i < 0) throw std::invalid_argument("chain coefficient for point outside window: " + name);
    v[i] = ring().normalize(value);
  }
  return v;
}

DSquaredCheck check_d_squared(const ExactMatrix& boundary,
                              const std::vector<std::string>& labels) {
  DSquaredCheck res;
  ExactMatrix sq = boundary * boundary;
  for (std::size_t j = 0; j < sq.cols(); ++j)
    for (std::size_t i = 0; i < sq.rows(); ++i)
      if (sq.at(i, j) != 0) {
        res.pass = false;
        res.witness = j < labels.size() ? labels[j] : "column " + std::to_string(j);
        return res;
      }
  return res;
}

DSquaredCheck check_d_squared(const WindowComplex& complex) {
  std::vector<std::string> labels;
  for (const auto& p : complex.basis()) labels.push_back(p.name);
  return check_d_squared(complex.boundary(), labels);
}

namespace {

std::vector<std::string> homology_labels(std::size_t n) {
  std::vector<std::string> l(n);
  for (std::size_t i = 0; i < n; ++i) l[i] = "h" + std::to_string(i);
  return l;
}

HomologyGroup field_homology(const ExactMatrix& d) {
  const CoefficientRing& ring = d.ring();
  ReduceResult red = reduce(d);
  const ExactMatrix& image = red.image_basis;
  const ExactMatrix& kernel = red.kernel_basis;

  // Lexicographically first completion of the image basis to the kernel.
  ExactMatrix reps(ring, d.rows(), 0);
  ExactMatrix current = image;
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    ExactMatrix cand = current.hstack(kernel.column(j));
    if (reduce(cand).rank == current.cols() + 1) {
      current = cand;
      reps = reps.hstack(kernel.column(j));
    }
  }
  std::size_t hdim = reps.cols();
  PresentedModule mod = PresentedModule::free_module(ring, homology_labels(hdim));
  ExactMatrix expr = reps.hstack(image);
  return HomologyGroup(std::move(mod), std::move(reps), std::move(expr),
                       ExactMatrix(ring, 0, 0), {});
}

HomologyGroup integer_homology(const ExactMatrix& d) {
  const CoefficientRing& ring = d.ring();
  ExactMatrix kernel = kernel_basis_any(d);  // basis of the saturated kernel lattice
  const std::size_t z = kernel.cols();

  // Boundary image in kernel coordinates (integral: the image lies in the
  // kernel lattice and the kernel basis is a lattice basis).
  auto rel = solve_matrix(kernel, d);
  if (!rel) throw std::logic_error("boundary image does not lie in the kernel lattice");

  SnfResult snf = smith_normal_form(*rel);
  std::vector<Integer> diag(z, 0);
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) diag[i] = snf.diagonal[i];

  // New kernel basis: columns of kernel * U^{-1}; keep torsion (d >= 2) and
  // free (d = 0) indices, drop unit factors.
  auto uinv = solve_matrix(snf.u, ExactMatrix::identity(ring, z));
  if (!uinv) throw std::logic_error("SNF row transform not invertible");
  ExactMatrix new_basis = kernel * *uinv;

  std::vector<std::size_t> kept;
  std::vector<Integer> kept_diag;
  for (std::size_t i = 0; i < z; ++i)
    if (diag[i] == 0 || diag[i] > 1) {
      kept.push_back(i);
      kept_diag.push_back(diag[i]);
    }
  ExactMatrix reps = new_basis.submatrix_cols(kept);

  std::size_t torsion = 0;
  for (const auto& dv : kept_diag)
    if (dv > 1) ++torsion;
  ExactMatrix relations(ring, kept.size(), torsion);
  {
    std::size_t col = 0;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (kept_diag[i] > 1) relations.set(i, col++, Rational(kept_diag[i]));
  }
  PresentedModule mod =
      PresentedModule::present_quotient(ring, homology_labels(kept.size()), relations);
  return HomologyGroup(std::move(mod), std::move(reps), std::move(kernel), snf.u,
                       std::move(diag));
}

}  // namespace

HomologyGroup HomologyGroup::compute(const ExactMatrix& d) {
  auto sq_ok = check_d_squared(d, {});
  if (!sq_ok.pass) throw std::invalid_argument("boundary does not square to zero");
  if (d.ring().is_field()) return field_homology(d);
  return integer_homology(d);
}

HomologyGroup HomologyGroup::compute(const WindowComplex& complex) {
  return compute(complex.boundary());
}

std::vector<Rational> HomologyGroup::express(const std::vector<Rational>& cycle) const {
  const CoefficientRing& ring = module_.ring();
  const std::size_t gens = module_.generator_count();
  if (ring.is_field()) {
    auto x = solve(expr_basis_, cycle);
    if (!x) throw std::invalid_argument("vector is not a cycle of this complex");
    return std::vector<Rational>(x->begin(), x->begin() + gens);
  }
  auto w = solve(expr_basis_, cycle);
  if (!w) throw std::invalid_argument("vector is not a cycle of this complex");
  std::vector<Rational> y = basis_change_.apply(*w);
  std::vector<Rational> out;
  out.reserve(gens);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (diagonal_[i] == 1) continue;  // unit factor: class is zero
    if (diagonal_[i] > 1) {
      Integer r;
      Integer n = y[i].get_num();
      mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), diagonal_[i].get_mpz_t());
      out.push_back(Rational(r));
    } else {
      out.push_back(y[i]);
    }
  }
  if (out.size() != gens) throw std::logic_error("homology coordinate bookkeeping mismatch");
  return out;
}

ChainMap::ChainMap(WindowComplex source, WindowComplex target, ExactMatrix matrix,
                   ChainMapKind kind)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)),
      kind_(kind) {
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
    throw std::invalid_argument("chain map matrix shape mismatch");
  if (target_.boundary() * matrix_ != matrix_ * source_.boundary())
    throw std::logic_error("chain map does not commute with the boundaries");
}

ChainMap ChainMap::compose_after(const ChainMap& inner) const {
  return ChainMap(inner.source_, target_, matrix_ * inner.matrix_, ChainMapKind::Composite);
}

ChainMap chain_projection(const FloerTriple& triple, const Rational& a1, const Rational& a2,
                          const Rational& b) {
  if (!(a1 <= a2 && a2 <= b)) throw WindowOrderError("projection requires a1 <= a2 <= b");
  WindowComplex src(triple, Window(a1, b));
  WindowComplex dst(triple, Window(a2, b));
  ExactMatrix m(triple.ring(), dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    int i = dst.basis_index(src.basis()[j].name);
    if (i >= 0) m.set(i, j, 1);
  }
  return ChainMap(std::move(src), std::move(dst), std::move(m), ChainMapKind::Projection);
}

ChainMap chain_inclusion(const FloerTriple& triple, const Rational& a, const Rational& b1,
                         const Rational& b2) {
  if (!(a <= b1 && b1 <= b2)) throw WindowOrderError("inclusion requires a <= b1 <= b2");
  WindowComplex src(triple, Window(a, b1));
  WindowComplex dst(triple, Window(a, b2));
  ExactMatrix m(triple.ring(), dst.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    int i = dst.basis_index(src.basis()[j].name);
    if (i < 0) throw std::logic_error("inclusion target misses a source point");
    m.set(i, j, 1);
  }
  return ChainMap(std::move(src), std::move(dst), std::move(m), ChainMapKind::Inclusion);
}

ModuleMap induced_hom_map(const ChainMap& chain_map, const HomologyGroup& h_source,
                          const HomologyGroup& h_target) {
  const CoefficientRing& ring = chain_map.matrix().ring();
  const std::size_t src_gens = h_source.module().generator_count();
  ExactMatrix m(ring, h_target.module().generator_count(), src_gens);
  for (std::size_t j = 0; j < src_gens; ++j) {
    std::vector<Rational> pushed = chain_map.matrix().apply(h_source.representatives().column_vec(j));
    m.set_column(j, h_target.express(pushed));
  }
  auto mm = induced_map(h_source.module(), h_target.module(), m);
  if (!mm) throw std::logic_error("induced homology map failed well-definedness");
  return *mm;
}

ModuleMap chain_map_as_module_map(const ChainMap& m) {
  std::vector<std::string> src_labels, dst_labels;
  for (const auto& p : m.source().basis()) src_labels.push_back(p.name);
  for (const auto& p : m.target().basis()) dst_labels.push_back(p.name);
  return ModuleMap(PresentedModule::free_module(m.matrix().ring(), src_labels),
                   PresentedModule::free_module(m.matrix().ring(), dst_labels), m.matrix());
}

SquareClassification classify_square(const ModuleMap& phi_ba, const ModuleMap& phi_ca,
                                     const ModuleMap& phi_db, const ModuleMap& phi_dc) {
  if (phi_ba.matrix().cols() != phi_ca.matrix().cols() ||
      phi_db.matrix().cols() != phi_ba.matrix().rows() ||
      phi_dc.matrix().cols() != phi_ca.matrix().rows() ||
      phi_db.matrix().rows() != phi_dc.matrix().rows())
    throw std::invalid_argument("square shape mismatch");

  const CoefficientRing& ring = phi_ba.matrix().ring();

  // Middle module B + C and the two-step sequence of (eh).
  PresentedModule middle = PresentedModule::present_quotient(
      ring,
      [&] {
        std::vector<std::string> l;
        for (const auto& g : phi_ba.target().generators()) l.push_back("B." + g);
        for (const auto& g : phi_ca.target().generators()) l.push_back("C." + g);
        return l;
      }(),
      phi_ba.target().relations().dirsum(phi_ca.target().relations()));
  ExactMatrix first_m = phi_ba.matrix().vstack(phi_ca.matrix());
  ExactMatrix second_m = phi_db.matrix().hstack(phi_dc.matrix().negated());
  ModuleMap first(phi_ba.source(), middle, first_m);
  ModuleMap second(middle, phi_db.target(), second_m);

  SquareClassification cls;
  cls.commutative = second.compose_after(first).is_zero_map();
  if (!cls.commutative) return cls;
  cls.cartesian = first.is_injective();
  cls.cocartesian = second.is_surjective();
  // Exactness at the middle: ker(second) contained in im(first) (the complex
  // condition gives the reverse inclusion).
  ExactMatrix ker = second.kernel_generators();
  ExactMatrix im_span = first.matrix().hstack(middle.relations());
  cls.exact = columns_in_span(im_span, ker);
  cls.bicartesian = cls.exact && cls.cartesian && cls.cocartesian;
  return cls;
}

SquareClassification classify_square(const ChainMap& phi_ba, const ChainMap& phi_ca,
                                     const ChainMap& phi_db, const ChainMap& phi_dc) {
  return classify_square(chain_map_as_module_map(phi_ba), chain_map_as_module_map(phi_ca),
                         chain_map_as_module_map(phi_db), chain_map_as_module_map(phi_dc));
}

namespace {

void record(IdentityReport& report, const std::string& name, bool ok,
            const std::string& params) {
  for (auto& c : report.checks) {
    if (c.name != name) continue;
    if (!ok && c.pass) {
      c.pass = false;
      c.witness = params;
    }
    return;
  }
  report.checks.push_back({name, ok, ok ? "" : params});
}

}  // namespace

IdentityReport check_identities(const FloerTriple& triple, const std::vector<Rational>& levels,
                                std::size_t max_samples) {
  std::vector<Rational> ls = levels;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  IdentityReport report;
  const std::size_t n = ls.size();

  for (std::size_t i1 = 0; i1 < n && report.samples < max_samples; ++i1)
    for (std::size_t i2 = i1; i2 < n && report.samples < max_samples; ++i2)
      for (std::size_t i3 = i2; i3 < n && report.samples < max_samples; ++i3)
        for (std::size_t i4 = i3; i4 < n && report.samples < max_samples; ++i4) {
          const Rational &a1 = ls[i1], &a2 = ls[i2], &b1 = ls[i3], &b2 = ls[i4];
          ++report.samples;
          std::ostringstream ps;
          ps << "a1=" << a1 << " a2=" << a2 << " b1=" << b1 << " b2=" << b2;
          const std::string params = ps.str();

          // Chain level.
          ChainMap p21 = chain_projection(triple, a1, a2, b1);
          ChainMap p31 = chain_projection(triple, a1, b1, b1);
          ChainMap p32 = chain_projection(triple, a2, b1, b1);
          record(report, "proj1",
                 p21.matrix() * p21.source().boundary() ==
                     p21.target().boundary() * p21.matrix(),
                 params);
          record(report, "proj2", p32.compose_after(p21).matrix() == p31.matrix(), params);
          record(report, "proj2a",
                 chain_projection(triple, a1, a1, b1).matrix().is_identity(), params);

          ChainMap i21 = chain_inclusion(triple, a1, b1, b2);
          ChainMap i32 = chain_inclusion(triple, a1, b2, b2);
          record(report, "in1",
                 i21.matrix() * i21.source().boundary() ==
                     i21.target().boundary() * i21.matrix(),
                 params);
          record(report, "in2",
                 i32.compose_after(i21).matrix() == chain_inclusion(triple, a1, b1, b2).matrix(),
                 params);
          record(report, "in2a", i32.matrix().is_identity(), params);

          ChainMap ip_left = chain_inclusion(triple, a2, b1, b2)
                                 .compose_after(chain_projection(triple, a1, a2, b1));
          ChainMap ip_right = chain_projection(triple, a1, a2, b2)
                                  .compose_after(chain_inclusion(triple, a1, b1, b2));
          record(report, "ip1", ip_left.matrix() == ip_right.matrix(), params);

          // Homology level.
          HomologyGroup h_a1b1 = homology(ip_left.source());
          HomologyGroup h_a2b1 = homology(WindowComplex(triple, Window(a2, b1)));
          HomologyGroup h_a1b2 = homology(WindowComplex(triple, Window(a1, b2)));
          HomologyGroup h_a2b2 = homology(ip_left.target());

          ModuleMap hp21 = induced_hom_map(chain_projection(triple, a1, a2, b1), h_a1b1, h_a2b1);
          ModuleMap hp_id = induced_hom_map(chain_projection(triple, a1, a1, b1), h_a1b1, h_a1b1);
          record(report, "proj3a", hp_id.equals_as_map(ModuleMap::identity(h_a1b1.module())),
                 params);
          HomologyGroup h_b1b1 = homology(WindowComplex(triple, Window(b1, b1)));
          ModuleMap hp32 = induced_hom_map(chain_projection(triple, a2, b1, b1), h_a2b1, h_b1b1);
          ModuleMap hp31 = induced_hom_map(chain_projection(triple, a1, b1, b1), h_a1b1, h_b1b1);
          record(report, "proj3", hp32.compose_after(hp21).equals_as_map(hp31), params);

          ModuleMap hi21 = induced_hom_map(chain_inclusion(triple, a1, b1, b2), h_a1b1, h_a1b2);
          ModuleMap hi_id = induced_hom_map(chain_inclusion(triple, a1, b1, b1), h_a1b1, h_a1b1);
          record(report, "in3a", hi_id.equals_as_map(ModuleMap::identity(h_a1b1.module())),
                 params);
          HomologyGroup h_a1b2b = h_a1b2;
          ModuleMap hi32 = induced_hom_map(chain_inclusion(triple, a1, b2, b2), h_a1b2, h_a1b2b);
          record(report, "in3",
                 hi32.compose_after(hi21).equals_as_map(
                     induced_hom_map(chain_inclusion(triple, a1, b1, b2), h_a1b1, h_a1b2)),
                 params);

          ModuleMap hip_left = induced_hom_map(ip_left, h_a1b1, h_a2b2);
          ModuleMap hip_right = induced_hom_map(ip_right, h_a1b1, h_a2b2);
          record(report, "ip2", hip_left.equals_as_map(hip_right), params);
        }
  return report;
}

}  // namespace morsetower
