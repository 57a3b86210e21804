#ifndef MORSETOWER_RING_HPP
#define MORSETOWER_RING_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace morsetower {

using Rational = mpq_class;
using Integer = mpz_class;

/// Coefficient ring for all exact computations: Q, F_p (p prime), or Z.
class CoefficientRing {
 public:
  enum class Kind { Rationals, PrimeField, Integers };

  static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, 0); }
  static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0); }
  static CoefficientRing prime_field(const Integer& p);

  Kind kind() const { return kind_; }
  const Integer& modulus() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }

  /// Canonical representative of x in this ring. For F_p the value is the
  /// residue in [0,p) (rational inputs use the modular inverse of the
  /// denominator). Throws if x has no image (denominator divisible by p,
  /// or a non-integer over Z).
  Rational normalize(const Rational& x) const;

  bool is_zero(const Rational& x) const { return normalize(x) == 0; }

  Rational add(const Rational& x, const Rational& y) const { return normalize(x + y); }
  Rational sub(const Rational& x, const Rational& y) const { return normalize(x - y); }
  Rational mul(const Rational& x, const Rational& y) const { return normalize(x * y); }
  Rational neg(const Rational& x) const { return normalize(-x); }

  /// Multiplicative inverse; fields only.
  Rational inv(const Rational& x) const;

  /// Exact division x / y when it exists in the ring.
  std::optional<Rational> divide(const Rational& x, const Rational& y) const;

  std::string to_string() const;
  bool operator==(const CoefficientRing& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

 private:
  CoefficientRing(Kind k, const Integer& p) : kind_(k), p_(p) {}
  Kind kind_;
  Integer p_;
};

/// Parses "Q", "Z", "F<p>" (also "F <p>").
CoefficientRing parse_ring(const std::string& text);

Rational parse_rational(const std::string& token);
std::string rational_to_string(const Rational& x);

}  // namespace morsetower

#endif
