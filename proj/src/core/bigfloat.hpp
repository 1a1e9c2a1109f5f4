#pragma once

// RAII wrapper over MPFR with a thread-local working precision expressed in
// mantissa bits. boost::multiprecision's mpfr binding only takes decimal
// digits, which cannot express "53-bit" or "256-bit" exactly; the float-mode
// contract here is in bits, so we talk to MPFR directly.

#include <mpfr.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace pentagram {

class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, prec()); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  BigFloat(double d) : BigFloat() { mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(int i) : BigFloat() { mpfr_set_si(v_, i, MPFR_RNDN); }
  BigFloat(long i) : BigFloat() { mpfr_set_si(v_, i, MPFR_RNDN); }
  ~BigFloat() { mpfr_clear(v_); }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }

  // Thread-local; applies to values constructed after the call.
  static void set_working_precision(unsigned bits);
  static unsigned working_precision();

  static BigFloat from_rational(mpq_srcptr q) {
    BigFloat r;
    mpfr_set_q(r.v_, q, MPFR_RNDN);
    return r;
  }
  static BigFloat from_string(const std::string& s);  // decimal, base 10

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string() const;  // enough digits to round-trip at this precision

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r;
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r;
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& v);

 private:
  static mpfr_prec_t prec();
  mpfr_t v_;
};

}  // namespace pentagram
