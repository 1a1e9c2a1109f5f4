#include "bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace pentagram {

namespace {
thread_local unsigned g_working_bits = 53;
}

void BigFloat::set_working_precision(unsigned bits) {
  if (bits < MPFR_PREC_MIN || bits > 16384) {
    throw std::invalid_argument("BigFloat precision out of range: " + std::to_string(bits));
  }
  g_working_bits = bits;
}

unsigned BigFloat::working_precision() { return g_working_bits; }

mpfr_prec_t BigFloat::prec() { return static_cast<mpfr_prec_t>(g_working_bits); }

BigFloat BigFloat::from_string(const std::string& s) {
  BigFloat r;
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

std::string BigFloat::to_string() const {
  // ceil(bits * log10(2)) + 2 digits round-trips at the value's precision
  int digits = static_cast<int>(std::ceil(mpfr_get_prec(v_) * 0.30103)) + 2;
  int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

std::ostream& operator<<(std::ostream& os, const BigFloat& v) { return os << v.to_string(); }

}  // namespace pentagram
