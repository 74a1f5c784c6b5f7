#include "albert/rational.hpp"

#include <cctype>
#include <ostream>

#include "albert/error.hpp"

namespace albert {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::MapUndefinedForSpec: return "MapUndefinedForSpec";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::AxiomFailure: return "AxiomFailure";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::CertificationFailure: return "CertificationFailure";
    case Errc::HypothesisViolation: return "HypothesisViolation";
    case Errc::RestrictionNotHomothety: return "RestrictionNotHomothety";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NoDecomposition: return "NoDecomposition";
    case Errc::NotAutomorphism: return "NotAutomorphism";
    case Errc::UnexpectedDimension: return "UnexpectedDimension";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

Rational::Rational(long long n) noexcept {
  mpq_init(q_);
  if (n >= 0) {
    mpz_set_ui(mpq_numref(q_), static_cast<unsigned long>(n));
  } else {
    mpz_set_ui(mpq_numref(q_), static_cast<unsigned long>(-(n + 1)) + 1ul);
    mpz_neg(mpq_numref(q_), mpq_numref(q_));
  }
}

Rational::Rational(long num, long den) {
  if (den == 0) fail(Errc::NotInvertible, "rational with zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, num, 1);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, den, 1);
  mpq_div(q_, q_, d);
  mpq_clear(d);
}

Rational Rational::parse(std::string_view s) {
  auto bad = [&]() -> Rational { fail(Errc::InvalidSpec, "malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) return bad();
  std::string buf(s);
  for (char& ch : buf) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/')) return bad();
  }
  Rational r;
  if (mpq_set_str(r.q_, buf.c_str(), 10) != 0) return bad();
  if (mpz_sgn(mpq_denref(r.q_)) == 0) fail(Errc::NotInvertible, "rational with zero denominator");
  mpq_canonicalize(r.q_);
  return r;
}

bool Rational::is_integer() const noexcept { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

bool Rational::is_square() const noexcept {
  if (sign() < 0) return false;
  return mpz_perfect_square_p(mpq_numref(q_)) && mpz_perfect_square_p(mpq_denref(q_));
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.q_, q_);
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  Rational r;
  mpq_add(r.q_, q_, o.q_);
  return r;
}

Rational Rational::operator-(const Rational& o) const {
  Rational r;
  mpq_sub(r.q_, q_, o.q_);
  return r;
}

Rational Rational::operator*(const Rational& o) const {
  Rational r;
  mpq_mul(r.q_, q_, o.q_);
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) fail(Errc::NotInvertible, "division by zero");
  Rational r;
  mpq_div(r.q_, q_, o.q_);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(q_, q_, o.q_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  mpq_sub(q_, q_, o.q_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(q_, q_, o.q_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::NotInvertible, "division by zero");
  mpq_div(q_, q_, o.q_);
  return *this;
}

Rational Rational::inv() const {
  if (is_zero()) fail(Errc::NotInvertible, "inverse of zero");
  Rational r;
  mpq_inv(r.q_, q_);
  return r;
}

Rational Rational::abs() const {
  Rational r;
  mpq_abs(r.q_, q_);
  return r;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = e > 0 ? *this : inv();
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational acc(1);
  while (n > 0) {
    if (n & 1ul) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

Rational Rational::numerator() const {
  Rational r;
  mpq_set_z(r.q_, mpq_numref(q_));
  return r;
}

Rational Rational::denominator() const {
  Rational r;
  mpq_set_z(r.q_, mpq_denref(q_));
  return r;
}

Rational Rational::int_lcm(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) fail(Errc::InvalidSpec, "int_lcm on non-integers");
  Rational r;
  mpz_lcm(mpq_numref(r.q_), mpq_numref(a.q_), mpq_numref(b.q_));
  return r;
}

std::string Rational::str() const {
  char* raw = mpq_get_str(nullptr, 10, q_);
  std::string s(raw);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(raw, s.size() + 1);
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace albert
