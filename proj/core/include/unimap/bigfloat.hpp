#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "unimap/rational.hpp"

namespace unimap {

// Owning MPFR value with its own precision. Results of binary operations take
// the larger operand precision; all operations round to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 53);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(const Rational& value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t precision);
  static BigFloat from_integer(const mpz_class& n, mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Nearest integer toward -inf / +inf.
  mpz_class floor_integer() const;
  mpz_class ceil_integer() const;
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 17) const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend BigFloat operator+(const BigFloat& lhs, double rhs);
  friend BigFloat operator-(const BigFloat& lhs, double rhs);
  friend BigFloat operator*(const BigFloat& lhs, double rhs);
  friend BigFloat operator/(const BigFloat& lhs, double rhs);
  friend BigFloat operator*(double lhs, const BigFloat& rhs) { return rhs * lhs; }
  friend BigFloat operator/(double lhs, const BigFloat& rhs);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b);

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
// x * 2^e, exact.
BigFloat ldexp(const BigFloat& x, long e);
BigFloat min(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);

}  // namespace unimap
