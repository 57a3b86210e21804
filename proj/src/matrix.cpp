#include "morsetower/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace morsetower {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace

ExactMatrix ExactMatrix::identity(CoefficientRing ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  require(ring_ == o.ring_, "ring mismatch in product");
  require(cols_ == o.rows_, "dimension mismatch in product");
  ExactMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.a_[i * r.cols_ + j] += x * o.at(k, j);
      }
    }
  for (auto& v : r.a_) v = ring_.normalize(v);
  return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  require(ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in sum");
  ExactMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.normalize(a_[i] + o.a_[i]);
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const { return *this + o.negated(); }

ExactMatrix ExactMatrix::negated() const {
  ExactMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = ring_.normalize(-a_[i]);
  return r;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = at(i, j);
  return r;
}

ExactMatrix ExactMatrix::column(std::size_t j) const {
  ExactMatrix r(ring_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) r.a_[i] = at(i, j);
  return r;
}

std::vector<Rational> ExactMatrix::column_vec(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void ExactMatrix::set_column(std::size_t j, const std::vector<Rational>& v) {
  require(v.size() == rows_, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) set(i, j, v[i]);
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& o) const {
  require(ring_ == o.ring_ && rows_ == o.rows_, "hstack mismatch");
  ExactMatrix r(ring_, rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.a_[i * r.cols_ + j] = at(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) r.a_[i * r.cols_ + cols_ + j] = o.at(i, j);
  }
  return r;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& o) const {
  require(ring_ == o.ring_ && cols_ == o.cols_, "vstack mismatch");
  ExactMatrix r(ring_, rows_ + o.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[i * cols_ + j] = at(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[(rows_ + i) * cols_ + j] = o.at(i, j);
  return r;
}

ExactMatrix ExactMatrix::dirsum(const ExactMatrix& o) const {
  require(ring_ == o.ring_, "ring mismatch in dirsum");
  ExactMatrix r(ring_, rows_ + o.rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[i * r.cols_ + j] = at(i, j);
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) r.a_[(rows_ + i) * r.cols_ + cols_ + j] = o.at(i, j);
  return r;
}

ExactMatrix ExactMatrix::submatrix_cols(const std::vector<std::size_t>& js) const {
  ExactMatrix r(ring_, rows_, js.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < js.size(); ++j) r.a_[i * js.size() + j] = at(i, js[j]);
  return r;
}

ExactMatrix ExactMatrix::submatrix_rows(const std::vector<std::size_t>& is) const {
  ExactMatrix r(ring_, is.size(), cols_);
  for (std::size_t i = 0; i < is.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[i * cols_ + j] = at(is[i], j);
  return r;
}

std::vector<Rational> ExactMatrix::apply(const std::vector<Rational>& v) const {
  require(v.size() == cols_, "vector length mismatch");
  std::vector<Rational> r(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    r[i] = ring_.normalize(r[i]);
  }
  return r;
}

ExactMatrix ExactMatrix::into_ring(const CoefficientRing& r) const {
  ExactMatrix m(r, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j));
  return m;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j);
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  return os.str();
}

}  // namespace morsetower
