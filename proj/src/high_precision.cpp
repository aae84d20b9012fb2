#include "pbt/high_precision.hpp"

#include <memory>
#include <stdexcept>

namespace pbt {

namespace {

void check_bits(int bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw std::invalid_argument("unsupported precision");
}

}  // namespace

HighPrecision::HighPrecision(int bits) {
  check_bits(bits);
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

HighPrecision::HighPrecision(const mpz_class& value, int bits) : HighPrecision(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

HighPrecision::HighPrecision(const mpq_class& value, int bits) : HighPrecision(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

HighPrecision::HighPrecision(long value, int bits) : HighPrecision(bits) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HighPrecision::HighPrecision(const HighPrecision& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HighPrecision::HighPrecision(HighPrecision&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

HighPrecision& HighPrecision::operator=(const HighPrecision& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

HighPrecision& HighPrecision::operator=(HighPrecision&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

HighPrecision::~HighPrecision() { mpfr_clear(value_); }

HighPrecision HighPrecision::rounded(int bits) const {
  HighPrecision out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string HighPrecision::to_decimal(int significant) const {
  if (significant < 1) throw std::invalid_argument("need at least one significant digit");
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_signbit(value_) ? "-inf" : "inf";
  if (mpfr_zero_p(value_)) return "0";

  mpfr_exp_t exponent = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN),
      mpfr_free_str);
  std::string digits(raw.get());
  std::string sign;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // value = 0.digits * 10^exponent
  while (digits.size() > 1 && digits.back() == '0' && static_cast<long>(digits.size()) > exponent)
    digits.pop_back();

  std::string out;
  if (exponent > 21 || exponent < -6) {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  } else if (exponent <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + digits;
  } else if (static_cast<long>(digits.size()) <= exponent) {
    out = digits + std::string(static_cast<std::size_t>(exponent) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(exponent)) + "." +
          digits.substr(static_cast<std::size_t>(exponent));
  }
  return sign + out;
}

HighPrecision& HighPrecision::operator+=(const HighPrecision& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator-=(const HighPrecision& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator*=(const HighPrecision& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator/=(const HighPrecision& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

HighPrecision& HighPrecision::operator/=(const mpz_class& rhs) {
  mpfr_div_z(value_, value_, rhs.get_mpz_t(), MPFR_RNDN);
  return *this;
}

HighPrecision sqrt(const mpz_class& value, int bits) {
  HighPrecision out(value, bits + 2);
  mpfr_sqrt(out.get(), out.get(), MPFR_RNDN);
  return out.rounded(bits);
}

HighPrecision abs(HighPrecision value) {
  mpfr_abs(value.get(), value.get(), MPFR_RNDN);
  return value;
}

std::string to_decimal(const mpq_class& value, int significant) {
  // enough bits that the single rounding of the quotient cannot reach the printed digits
  const int bits = 64 + static_cast<int>(3.33 * significant);
  return HighPrecision(value, bits).to_decimal(significant);
}

}  // namespace pbt
