#include "morsetower/ring.hpp"

#include <sstream>

namespace morsetower {

CoefficientRing CoefficientRing::prime_field(const Integer& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("modulus " + p.get_str() + " is not prime");
  return CoefficientRing(Kind::PrimeField, p);
}

Rational CoefficientRing::normalize(const Rational& x) const {
  Rational y = x;
  y.canonicalize();
  switch (kind_) {
    case Kind::Rationals:
      return y;
    case Kind::Integers:
      if (y.get_den() != 1)
        throw std::domain_error("non-integer value " + rational_to_string(y) + " over Z");
      return y;
    case Kind::PrimeField: {
      Integer den = y.get_den() % p_;
      if (den == 0)
        throw std::domain_error("denominator of " + rational_to_string(y) +
                                " vanishes mod " + p_.get_str());
      Integer dinv;
      mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
      Integer r = (y.get_num() % p_) * dinv % p_;
      if (r < 0) r += p_;
      return Rational(r);
    }
  }
  throw std::logic_error("unreachable");
}

Rational CoefficientRing::inv(const Rational& x) const {
  if (!is_field()) throw std::domain_error("inverse requested over Z");
  Rational y = normalize(x);
  if (y == 0) throw std::domain_error("inverse of zero");
  if (kind_ == Kind::Rationals) return 1 / y;
  Integer r;
  Integer n = y.get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), p_.get_mpz_t());
  return Rational(r);
}

std::optional<Rational> CoefficientRing::divide(const Rational& x, const Rational& y) const {
  Rational b = normalize(y);
  if (b == 0) return std::nullopt;
  if (is_field()) return mul(x, inv(b));
  Rational a = normalize(x);
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  if (r != 0) return std::nullopt;
  return Rational(q);
}

std::string CoefficientRing::to_string() const {
  switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::Integers: return "Z";
    case Kind::PrimeField: return "F" + p_.get_str();
  }
  return "?";
}

CoefficientRing parse_ring(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "Q") return CoefficientRing::rationals();
  if (s == "Z") return CoefficientRing::integers();
  if (s.size() > 1 && s[0] == 'F') {
    Integer p;
    if (mpz_set_str(p.get_mpz_t(), s.substr(1).c_str(), 10) != 0)
      throw std::invalid_argument("bad ring spec: " + text);
    return CoefficientRing::prime_field(p);
  }
  throw std::invalid_argument("bad ring spec: " + text);
}

Rational parse_rational(const std::string& token) {
  Rational x;
  if (mpq_set_str(x.get_mpq_t(), token.c_str(), 10) != 0 ||
      (token.find('/') != std::string::npos && Rational(token).get_den() == 0))
    throw std::invalid_argument("bad rational: " + token);
  if (x.get_den() == 0) throw std::invalid_argument("bad rational: " + token);
  x.canonicalize();
  return x;
}

std::string rational_to_string(const Rational& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace morsetower
