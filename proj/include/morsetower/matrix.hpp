#ifndef MORSETOWER_MATRIX_HPP
#define MORSETOWER_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "morsetower/ring.hpp"

namespace morsetower {

/// Dense matrix with exact entries in a fixed CoefficientRing.
/// Entries are kept normalized (reduced fractions, F_p residues in [0,p),
/// integers with denominator 1).
class ExactMatrix {
 public:
  ExactMatrix(CoefficientRing ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static ExactMatrix identity(CoefficientRing ring, std::size_t n);
  static ExactMatrix zero(CoefficientRing ring, std::size_t rows, std::size_t cols) {
    return ExactMatrix(ring, rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const CoefficientRing& ring() const { return ring_; }

  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v) {
    a_[i * cols_ + j] = ring_.normalize(v);
  }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix negated() const;
  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;

  ExactMatrix transpose() const;
  ExactMatrix column(std::size_t j) const;
  std::vector<Rational> column_vec(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<Rational>& v);

  /// Columns of this followed by columns of o.
  ExactMatrix hstack(const ExactMatrix& o) const;
  /// Rows of this on top of rows of o.
  ExactMatrix vstack(const ExactMatrix& o) const;
  /// Block diagonal sum.
  ExactMatrix dirsum(const ExactMatrix& o) const;
  ExactMatrix submatrix_cols(const std::vector<std::size_t>& js) const;
  ExactMatrix submatrix_rows(const std::vector<std::size_t>& is) const;

  /// Applies this as a linear map to a vector (length = cols).
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  /// Re-normalizes every entry into another ring (e.g. Z -> F_p reduction).
  ExactMatrix into_ring(const CoefficientRing& r) const;

  std::string to_string() const;

 private:
  CoefficientRing ring_;
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

}  // namespace morsetower

#endif
