#include "unimap/bigfloat.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace unimap {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Leave `other` as a valid minimal-precision value.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(mpfr_prec_t precision) {
  BigFloat out(precision);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::from_integer(const mpz_class& n, mpfr_prec_t precision) {
  BigFloat out(precision);
  mpfr_set_z(out.value_, n.get_mpz_t(), MPFR_RNDN);
  return out;
}

mpz_class BigFloat::floor_integer() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

mpz_class BigFloat::ceil_integer() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDU);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", std::max(digits - 1, 0), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(value_)) return std::numeric_limits<long>::min() / 2;
  return mpfr_get_exp(value_);
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

namespace {

void widen(mpfr_ptr target, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(target))
    mpfr_prec_round(target, mpfr_get_prec(other), MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  widen(value_, rhs.value_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& lhs, double rhs) {
  BigFloat out(lhs.precision());
  mpfr_add_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& lhs, double rhs) {
  BigFloat out(lhs.precision());
  mpfr_sub_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& lhs, double rhs) {
  BigFloat out(lhs.precision());
  mpfr_mul_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& lhs, double rhs) {
  BigFloat out(lhs.precision());
  mpfr_div_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

BigFloat operator/(double lhs, const BigFloat& rhs) {
  BigFloat out(rhs.precision());
  mpfr_d_div(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_nan_p(a.value_) || mpfr_nan_p(b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigFloat& a, double b) {
  if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat sin(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_sin(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat cos(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_cos(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat atan(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_atan(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat ldexp(const BigFloat& x, long e) {
  BigFloat out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

BigFloat min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }
BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

}  // namespace unimap
