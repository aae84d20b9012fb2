#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace pbt {

/// Owning MPFR value with a fixed binary precision. Arithmetic rounds to
/// nearest at the precision of the left operand.
class HighPrecision {
 public:
  explicit HighPrecision(int bits = 128);
  HighPrecision(const mpz_class& value, int bits);
  HighPrecision(const mpq_class& value, int bits);
  HighPrecision(long value, int bits);

  HighPrecision(const HighPrecision& other);
  HighPrecision(HighPrecision&& other) noexcept;
  HighPrecision& operator=(const HighPrecision& other);
  HighPrecision& operator=(HighPrecision&& other) noexcept;
  ~HighPrecision();

  int bits() const { return static_cast<int>(mpfr_get_prec(value_)); }

  /// Copy rounded to a different precision.
  HighPrecision rounded(int bits) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Decimal rendering with `significant` digits, round to nearest.
  std::string to_decimal(int significant) const;

  HighPrecision& operator+=(const HighPrecision& rhs);
  HighPrecision& operator-=(const HighPrecision& rhs);
  HighPrecision& operator*=(const HighPrecision& rhs);
  HighPrecision& operator/=(const HighPrecision& rhs);
  HighPrecision& operator*=(long rhs);
  HighPrecision& operator+=(long rhs);
  HighPrecision& operator/=(long rhs);
  HighPrecision& operator/=(const mpz_class& rhs);

  friend HighPrecision operator+(HighPrecision a, const HighPrecision& b) { return a += b; }
  friend HighPrecision operator-(HighPrecision a, const HighPrecision& b) { return a -= b; }
  friend HighPrecision operator*(HighPrecision a, const HighPrecision& b) { return a *= b; }
  friend HighPrecision operator/(HighPrecision a, const HighPrecision& b) { return a /= b; }

  friend bool operator<(const HighPrecision& a, const HighPrecision& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const HighPrecision& a, const HighPrecision& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator==(const HighPrecision& a, const HighPrecision& b) { return mpfr_equal_p(a.value_, b.value_); }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

HighPrecision sqrt(const mpz_class& value, int bits);
HighPrecision abs(HighPrecision value);

/// Decimal rendering of an exact rational with `significant` digits.
std::string to_decimal(const mpq_class& value, int significant);

}  // namespace pbt
