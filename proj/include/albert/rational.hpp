#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace albert {

// Exact arbitrary-precision rational, value semantics. All arithmetic in the
// library goes through this type; there is no floating point anywhere.
class Rational {
public:
  Rational() noexcept { mpq_init(q_); }
  Rational(int n) noexcept { mpq_init(q_); mpq_set_si(q_, n, 1); }
  Rational(long n) noexcept { mpq_init(q_); mpq_set_si(q_, n, 1); }
  Rational(long long n) noexcept;
  Rational(long num, long den); // throws on den == 0
  Rational(const Rational& o) noexcept { mpq_init(q_); mpq_set(q_, o.q_); }
  Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
  Rational& operator=(const Rational& o) noexcept {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  // Parses "p", "-p", "p/q". Throws Error(InvalidSpec) on malformed input.
  static Rational parse(std::string_view s);

  int sign() const noexcept { return mpq_sgn(q_); }
  bool is_zero() const noexcept { return sign() == 0; }
  bool is_one() const noexcept { return mpq_cmp_si(q_, 1, 1) == 0; }
  bool is_integer() const noexcept;
  bool is_square() const noexcept; // exact square of a rational

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const; // throws NotInvertible on /0
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  bool operator==(const Rational& o) const noexcept { return mpq_equal(q_, o.q_) != 0; }
  bool operator!=(const Rational& o) const noexcept { return !(*this == o); }
  bool operator<(const Rational& o) const noexcept { return mpq_cmp(q_, o.q_) < 0; }
  bool operator<=(const Rational& o) const noexcept { return mpq_cmp(q_, o.q_) <= 0; }
  bool operator>(const Rational& o) const noexcept { return mpq_cmp(q_, o.q_) > 0; }
  bool operator>=(const Rational& o) const noexcept { return mpq_cmp(q_, o.q_) >= 0; }

  Rational inv() const; // throws NotInvertible on 0
  Rational abs() const;
  Rational pow(long e) const; // negative e inverts; throws NotInvertible on 0^-n

  // Numerator / denominator as integer-valued rationals (denominator > 0).
  Rational numerator() const;
  Rational denominator() const;

  // lcm/gcd on integer-valued rationals (used to integerize linear systems).
  static Rational int_lcm(const Rational& a, const Rational& b);

  // Decimal-free canonical form: "p" or "p/q" with q > 1.
  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  mpq_t q_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }
inline Rational operator+(long a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(long a, const Rational& b) { return Rational(a) - b; }

} // namespace albert
