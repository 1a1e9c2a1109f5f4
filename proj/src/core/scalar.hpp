#pragma once

// Numeric backends for the geometry kernel: exact rationals (GMP) and
// arbitrary-precision floats (MPFR, see bigfloat.hpp). Kernel code is
// templated on the scalar type and asks scalar_traits which rules apply.

#include <boost/multiprecision/gmp.hpp>

#include "bigfloat.hpp"

namespace pentagram {

// expression templates off: values behave like plain scalars inside the
// templated kernel
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static double to_double(const Rat& v) { return v.template convert_to<double>(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static unsigned mantissa_bits() { return 53; }
  static double to_double(double v) { return v; }
};

template <>
struct scalar_traits<BigFloat> {
  static constexpr bool exact = false;
  static unsigned mantissa_bits() { return BigFloat::working_precision(); }
  static double to_double(const BigFloat& v) { return v.to_double(); }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
double to_double(const S& v) {
  return scalar_traits<S>::to_double(v);
}

// Exact dyadic conversion; doubles are rationals.
inline Rat rat_from_double(double v) { return Rat(v); }

inline BigFloat bigfloat_from_rat(const Rat& v) {
  return BigFloat::from_rational(v.backend().data());
}

}  // namespace pentagram
