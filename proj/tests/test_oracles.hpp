#ifndef MORSETOWER_TEST_ORACLES_HPP
#define MORSETOWER_TEST_ORACLES_HPP

// Brute-force oracles used by the test suites. Kept independent of the
// library's reduction / SNF code paths: only entry access and big-integer
// arithmetic are used.

#include <vector>

#include "morsetower/matrix.hpp"

namespace test_oracles {

using morsetower::ExactMatrix;
using morsetower::Integer;
using morsetower::Rational;

// Determinant by cofactor expansion (small matrices only).
inline Rational det_brute(const ExactMatrix& m, std::vector<std::size_t> rows,
                          std::vector<std::size_t> cols) {
  if (rows.empty()) return 1;
  Rational acc = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Rational& e = m.at(rows[0], cols[k]);
    if (e == 0) continue;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    Rational minor = det_brute(m, sub_rows, sub_cols);
    acc += (k % 2 ? -e : e) * minor;
  }
  return acc;
}

inline bool det_is_unit(const ExactMatrix& m) {
  std::vector<std::size_t> idx(m.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rational d = det_brute(m, idx, idx);
  return d == 1 || d == -1;
}

// gcd of all k x k minors, 0 if all vanish.
inline Integer minor_gcd(const ExactMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Integer g = 0;
  // enumerate k-subsets of rows and of columns
  std::vector<std::size_t> rsel(k), csel(k);
  auto enumerate = [&](std::size_t n, std::vector<std::size_t>& out, auto&& body) {
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    if (k > n) return;
    for (;;) {
      out = s;
      body();
      std::size_t i = k;
      while (i > 0 && s[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  };
  enumerate(m.rows(), rsel, [&] {
    enumerate(m.cols(), csel, [&] {
      Rational d = det_brute(m, rsel, csel);
      Integer di = d.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), di.get_mpz_t());
    });
  });
  return g;
}

// d_1 * ... * d_k must equal the gcd of k x k minors for every k.
inline bool snf_matches_minor_gcds(const ExactMatrix& m, const std::vector<Integer>& diag) {
  Integer prod = 1;
  for (std::size_t k = 1; k <= diag.size(); ++k) {
    prod *= diag[k - 1];
    Integer g = minor_gcd(m, k);
    if (prod < 0) prod = -prod;
    if (prod != g) return false;
  }
  return true;
}

}  // namespace test_oracles

#endif
