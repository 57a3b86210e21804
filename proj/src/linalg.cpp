#include "morsetower/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace morsetower {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

ReduceResult reduce(const ExactMatrix& m) {
  require(m.ring().is_field(), "reduce requires a field; use smith_normal_form over Z");
  const CoefficientRing& ring = m.ring();
  const std::size_t rows = m.rows(), cols = m.cols();
  // Work on a mutable copy, full Gauss-Jordan to RREF.
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

  ReduceResult res(ring);
  std::size_t prow = 0;
  for (std::size_t j = 0; j < cols && prow < rows; ++j) {
    std::size_t sel = prow;
    while (sel < rows && a[sel][j] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[prow]);
    Rational piv_inv = ring.inv(a[prow][j]);
    for (std::size_t k = j; k < cols; ++k) a[prow][k] = ring.mul(a[prow][k], piv_inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow || a[i][j] == 0) continue;
      Rational f = a[i][j];
      for (std::size_t k = j; k < cols; ++k)
        a[i][k] = ring.sub(a[i][k], ring.mul(f, a[prow][k]));
    }
    res.pivot_cols.push_back(j);
    ++prow;
  }
  res.rank = res.pivot_cols.size();
  res.image_basis = m.submatrix_cols(res.pivot_cols);

  std::vector<std::size_t> free_cols;
  {
    std::size_t p = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (p < res.pivot_cols.size() && res.pivot_cols[p] == j) { ++p; continue; }
      free_cols.push_back(j);
    }
  }
  ExactMatrix ker(ring, cols, free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t j = free_cols[t];
    ker.set(j, t, 1);
    for (std::size_t p = 0; p < res.pivot_cols.size(); ++p)
      ker.set(res.pivot_cols[p], t, ring.neg(a[p][j]));
  }
  res.kernel_basis = ker;
  return res;
}

namespace {

struct SnfWork {
  std::vector<std::vector<Integer>> a, u, v;
  std::size_t rows, cols;

  void col_sub(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (std::size_t i = 0; i < v.size(); ++i) v[i][dst] -= q * v[i][src];
  }
  void row_swap(std::size_t i1, std::size_t i2) {
    std::swap(a[i1], a[i2]);
    std::swap(u[i1], u[i2]);
  }
  void col_swap(std::size_t j1, std::size_t j2) {
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][j1], a[i][j2]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][j1], v[i][j2]);
  }
  void row_negate(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }
};

}  // namespace

SnfResult smith_normal_form(const ExactMatrix& m) {
  require(m.ring().kind() == CoefficientRing::Kind::Integers,
          "smith_normal_form requires integer entries");
  const std::size_t rows = m.rows(), cols = m.cols();
  SnfWork w;
  w.rows = rows;
  w.cols = cols;
  w.a.assign(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) w.a[i][j] = m.at(i, j).get_num();
  w.u.assign(rows, std::vector<Integer>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) w.u[i][i] = 1;
  w.v.assign(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) w.v[i][i] = 1;

  const std::size_t steps = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Pivot: minimal |entry| in the trailing submatrix, leftmost-topmost tie-break.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (w.a[i][j] == 0) continue;
          Integer v = abs(w.a[i][j]);
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) goto done;
      if (pi != t) w.row_swap(t, pi);
      if (pj != t) w.col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
        if (q != 0) {
          for (std::size_t k = 0; k < cols; ++k) w.a[i][k] -= q * w.a[t][k];
          for (std::size_t k = 0; k < rows; ++k) w.u[i][k] -= q * w.u[t][k];
        }
        if (w.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
        if (q != 0) w.col_sub(j, t, q);
        if (w.a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot divides the rest of the submatrix, or fold an offending row in.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            for (std::size_t k = 0; k < cols; ++k) w.a[t][k] += w.a[i][k];
            for (std::size_t k = 0; k < rows; ++k) w.u[t][k] += w.u[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.a[t][t] < 0) w.row_negate(t);
  }
done:;

  SnfResult res{ExactMatrix(m.ring(), rows, rows), ExactMatrix(m.ring(), rows, cols),
                ExactMatrix(m.ring(), cols, cols), {}, 0};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) res.u.set(i, j, Rational(w.u[i][j]));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.v.set(i, j, Rational(w.v[i][j]));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.d.set(i, j, Rational(w.a[i][j]));
  for (std::size_t i = 0; i < steps; ++i) {
    res.diagonal.push_back(w.a[i][i]);
    if (w.a[i][i] != 0) ++res.rank;
  }
  return res;
}

namespace {

// Row echelon solve of A X = B over a field; nullopt if inconsistent.
std::optional<ExactMatrix> solve_matrix_field(const ExactMatrix& a, const ExactMatrix& b) {
  const CoefficientRing& ring = a.ring();
  const std::size_t rows = a.rows(), ac = a.cols(), bc = b.cols();
  std::vector<std::vector<Rational>> w(rows, std::vector<Rational>(ac + bc, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < ac; ++j) w[i][j] = a.at(i, j);
    for (std::size_t j = 0; j < bc; ++j) w[i][ac + j] = b.at(i, j);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t prow = 0;
  for (std::size_t j = 0; j < ac && prow < rows; ++j) {
    std::size_t sel = prow;
    while (sel < rows && w[sel][j] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(w[sel], w[prow]);
    Rational inv = ring.inv(w[prow][j]);
    for (std::size_t k = j; k < ac + bc; ++k) w[prow][k] = ring.mul(w[prow][k], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow || w[i][j] == 0) continue;
      Rational f = w[i][j];
      for (std::size_t k = j; k < ac + bc; ++k)
        w[i][k] = ring.sub(w[i][k], ring.mul(f, w[prow][k]));
    }
    pivot_cols.push_back(j);
    ++prow;
  }
  // Consistency: rows with zero A-part must have zero B-part.
  for (std::size_t i = pivot_cols.size(); i < rows; ++i)
    for (std::size_t j = 0; j < bc; ++j)
      if (w[i][ac + j] != 0) return std::nullopt;
  ExactMatrix x(ring, ac, bc);
  for (std::size_t p = 0; p < pivot_cols.size(); ++p)
    for (std::size_t j = 0; j < bc; ++j) x.set(pivot_cols[p], j, w[p][ac + j]);
  return x;
}

std::optional<ExactMatrix> solve_matrix_integers(const ExactMatrix& a, const ExactMatrix& b) {
  SnfResult snf = smith_normal_form(a);
  ExactMatrix ub = snf.u * b;
  const std::size_t ac = a.cols(), bc = b.cols();
  ExactMatrix y(a.ring(), ac, bc);
  for (std::size_t j = 0; j < bc; ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rational rhs = ub.at(i, j);
      Integer d = i < snf.diagonal.size() ? snf.diagonal[i] : Integer(0);
      if (d == 0) {
        if (rhs != 0) return std::nullopt;
      } else {
        Integer q, r;
        Integer n = rhs.get_num();
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (r != 0) return std::nullopt;
        y.set(i, j, Rational(q));
      }
    }
  }
  return snf.v * y;
}

}  // namespace

std::optional<ExactMatrix> solve_matrix(const ExactMatrix& a, const ExactMatrix& b) {
  require(a.ring() == b.ring(), "ring mismatch in solve");
  require(a.rows() == b.rows(), "dimension mismatch in solve");
  if (b.cols() == 0) return ExactMatrix(a.ring(), a.cols(), 0);
  if (a.ring().is_field()) return solve_matrix_field(a, b);
  return solve_matrix_integers(a, b);
}

std::optional<std::vector<Rational>> solve(const ExactMatrix& m,
                                           const std::vector<Rational>& target) {
  ExactMatrix b(m.ring(), m.rows(), 1);
  b.set_column(0, target);
  auto x = solve_matrix(m, b);
  if (!x) return std::nullopt;
  return x->column_vec(0);
}

ExactMatrix kernel_basis_any(const ExactMatrix& m) {
  if (m.ring().is_field()) return reduce(m).kernel_basis;
  SnfResult snf = smith_normal_form(m);
  std::vector<std::size_t> js;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) js.push_back(j);
  return snf.v.submatrix_cols(js);
}

std::size_t rank_any(const ExactMatrix& m) {
  if (m.ring().is_field()) return reduce(m).rank;
  return smith_normal_form(m).rank;
}

PresentedModule PresentedModule::free_module(CoefficientRing ring,
                                             std::vector<std::string> generators) {
  std::size_t n = generators.size();
  return present_quotient(ring, std::move(generators), ExactMatrix(ring, n, 0));
}

PresentedModule PresentedModule::present_quotient(CoefficientRing ring,
                                                  std::vector<std::string> generators,
                                                  const ExactMatrix& relations) {
  require(relations.rows() == generators.size(), "relations' rows must be indexed by generators");
  ExactMatrix rel = relations.ring() == ring ? relations : relations.into_ring(ring);
  PresentedModule m(ring, std::move(generators), rel);
  if (ring.is_field()) {
    m.free_rank_ = m.gens_.size() - reduce(rel).rank;
  } else {
    SnfResult snf = smith_normal_form(rel);
    m.free_rank_ = m.gens_.size() - snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.diagonal[i] > 1) m.invariant_factors_.push_back(snf.diagonal[i]);
  }
  return m;
}

std::string PresentedModule::describe() const {
  std::ostringstream os;
  if (ring_.is_field()) {
    os << ring_.to_string() << "^" << free_rank_;
  } else {
    os << "Z^" << free_rank_;
    for (const auto& d : invariant_factors_) os << " + Z/" << d.get_str();
  }
  return os.str();
}

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, ExactMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require(matrix_.rows() == target_.generator_count() &&
              matrix_.cols() == source_.generator_count(),
          "map matrix shape must match generator counts");
  require(matrix_.ring() == source_.ring(), "map ring mismatch");
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  return ModuleMap(m, m, ExactMatrix::identity(m.ring(), m.generator_count()));
}

ModuleMap ModuleMap::compose_after(const ModuleMap& inner) const {
  require(inner.target_.generator_count() == source_.generator_count() &&
              inner.target_.ring() == source_.ring(),
          "non-composable maps");
  return ModuleMap(inner.source_, target_, matrix_ * inner.matrix_);
}

bool ModuleMap::equals_as_map(const ModuleMap& o) const {
  if (matrix_.rows() != o.matrix_.rows() || matrix_.cols() != o.matrix_.cols()) return false;
  return columns_in_span(target_.relations(), matrix_ - o.matrix_);
}

bool ModuleMap::is_zero_map() const {
  return columns_in_span(target_.relations(), matrix_);
}

bool ModuleMap::is_injective() const {
  ExactMatrix big = matrix_.hstack(target_.relations());
  ExactMatrix ker = kernel_basis_any(big);
  std::vector<std::size_t> first(source_.generator_count());
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  ExactMatrix proj = ker.submatrix_rows(first);
  return columns_in_span(source_.relations(), proj);
}

bool ModuleMap::is_surjective() const {
  return cokernel().is_trivial();
}

PresentedModule ModuleMap::cokernel() const {
  return PresentedModule::present_quotient(target_.ring(), target_.generators(),
                                           matrix_.hstack(target_.relations()));
}

ExactMatrix ModuleMap::kernel_generators() const {
  ExactMatrix big = matrix_.hstack(target_.relations());
  ExactMatrix ker = kernel_basis_any(big);
  std::vector<std::size_t> first(source_.generator_count());
  for (std::size_t i = 0; i < first.size(); ++i) first[i] = i;
  return ker.submatrix_rows(first);
}

std::optional<ModuleMap> induced_map(const PresentedModule& source,
                                     const PresentedModule& target,
                                     const ExactMatrix& generator_matrix,
                                     NotWellDefined* failure) {
  if (generator_matrix.rows() != target.generator_count() ||
      generator_matrix.cols() != source.generator_count())
    throw std::invalid_argument("generator_matrix shape mismatch");
  ExactMatrix mapped = generator_matrix * source.relations();
  for (std::size_t j = 0; j < mapped.cols(); ++j) {
    if (!solve_matrix(target.relations(), mapped.column(j))) {
      if (failure) failure->relation_index = j;
      return std::nullopt;
    }
  }
  return ModuleMap(source, target, generator_matrix);
}

bool image_spans_equal(const ModuleMap& f, const ModuleMap& g) {
  const ExactMatrix& rt = f.target().relations();
  ExactMatrix a = f.matrix().hstack(rt);
  ExactMatrix b = g.matrix().hstack(rt);
  return spans_equal(a, b);
}

ImagePresentation image_presentation(const ExactMatrix& gens,
                                     const ExactMatrix& target_relations) {
  ImagePresentation p;
  if (gens.ring().is_field()) {
    std::size_t rrel = target_relations.cols() ? reduce(target_relations).rank : 0;
    p.rank = reduce(gens.hstack(target_relations)).rank - rrel;
    return p;
  }
  if (target_relations.cols() == 0) {
    SnfResult snf = smith_normal_form(gens);
    p.rank = snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i) p.elementary_divisors.push_back(snf.diagonal[i]);
    return p;
  }
  // With torsion in the target only the rank of the image is reported.
  p.rank = rank_any(gens.hstack(target_relations)) - rank_any(target_relations);
  return p;
}

}  // namespace morsetower
