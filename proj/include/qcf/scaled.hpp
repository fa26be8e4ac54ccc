#pragma once

// Complex numbers with a separate power-of-two exponent. Elements of
// q-continued fractions grow like |q|^(c*n), which leaves the binary64 range
// after a few hundred terms for |q| = 2; carrying the exponent separately
// keeps every element and convergent representable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace qcf {

using Float50 = boost::multiprecision::cpp_bin_float_50;

template <class R>
struct ComplexOf {
  using type = std::complex<R>;
};
template <>
struct ComplexOf<Float50> {
  using type = boost::multiprecision::cpp_complex_50;
};
template <class R>
using Complex = typename ComplexOf<R>::type;

template <class R>
Complex<R> make_complex(const R& re, const R& im) {
  return Complex<R>(re, im);
}

template <class R>
R to_real(double v) {
  return R(v);
}

template <class R>
double to_double(const R& v) {
  if constexpr (std::is_floating_point_v<R>) {
    return static_cast<double>(v);
  } else {
    return v.template convert_to<double>();
  }
}

template <class R>
std::complex<double> to_complex_double(const Complex<R>& z) {
  return {to_double<R>(z.real()), to_double<R>(z.imag())};
}

// Decimal digits carried by R, used to pick the evaluation type and to print.
template <class R>
constexpr int decimal_digits() {
  return std::numeric_limits<R>::digits10;
}

template <class R>
class ScaledComplex {
 public:
  using complex_type = Complex<R>;

  ScaledComplex() : mant_(R(0), R(0)), exp_(0) {}
  ScaledComplex(const complex_type& m, std::int64_t e) : mant_(m), exp_(e) {
    normalize();
  }
  explicit ScaledComplex(const complex_type& z) : ScaledComplex(z, 0) {}
  explicit ScaledComplex(const R& re) : ScaledComplex(make_complex(re, R(0))) {}
  static ScaledComplex from_double(std::complex<double> z) {
    return ScaledComplex(make_complex(R(z.real()), R(z.imag())));
  }

  const complex_type& mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  bool is_zero() const { return mant_.real() == 0 && mant_.imag() == 0; }

  // mantissa * 2^exponent; overflows to inf / underflows to 0 when out of
  // range for R.
  complex_type value() const {
    using std::ldexp;
    const int e = clamp_exp(exp_);
    return make_complex(R(ldexp(R(mant_.real()), e)),
                        R(ldexp(R(mant_.imag()), e)));
  }

  // log2 |z|; -inf for zero.
  double log2_abs() const {
    using std::abs;
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(to_double<R>(R(abs(mant_)))) + static_cast<double>(exp_);
  }

  // |z| as R, saturating.
  R abs_value() const {
    using std::abs;
    using std::ldexp;
    return R(ldexp(R(abs(mant_)), clamp_exp(exp_)));
  }

  ScaledComplex operator-() const { return ScaledComplex(-mant_, exp_, raw{}); }

  friend ScaledComplex operator*(const ScaledComplex& x,
                                 const ScaledComplex& y) {
    return ScaledComplex(x.mant_ * y.mant_, x.exp_ + y.exp_);
  }
  friend ScaledComplex operator/(const ScaledComplex& x,
                                 const ScaledComplex& y) {
    return ScaledComplex(x.mant_ / y.mant_, x.exp_ - y.exp_);
  }
  friend ScaledComplex operator+(const ScaledComplex& x,
                                 const ScaledComplex& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const std::int64_t e = std::max(x.exp_, y.exp_);
    return ScaledComplex(shifted(x.mant_, x.exp_ - e) +
                             shifted(y.mant_, y.exp_ - e),
                         e);
  }
  friend ScaledComplex operator-(const ScaledComplex& x,
                                 const ScaledComplex& y) {
    return x + (-y);
  }
  ScaledComplex& operator*=(const ScaledComplex& y) { return *this = *this * y; }
  ScaledComplex& operator+=(const ScaledComplex& y) { return *this = *this + y; }

  // Multiplication by 2^e is exact.
  static complex_type shifted(const complex_type& m, std::int64_t e) {
    using std::ldexp;
    const int ee = clamp_exp(e);
    return make_complex(R(ldexp(R(m.real()), ee)), R(ldexp(R(m.imag()), ee)));
  }

 private:
  struct raw {};
  ScaledComplex(const complex_type& m, std::int64_t e, raw) : mant_(m), exp_(e) {}

  static int clamp_exp(std::int64_t e) {
    constexpr std::int64_t kLimit = 1 << 30;
    return static_cast<int>(std::clamp<std::int64_t>(e, -kLimit, kLimit));
  }

  // Brings max(|re|, |im|) into [1/2, 1).
  void normalize() {
    using std::abs;
    using std::frexp;
    using std::isfinite;
    using std::ldexp;
    const R m = std::max(R(abs(mant_.real())), R(abs(mant_.imag())));
    if (!isfinite(m)) return;
    if (m == 0) {
      mant_ = make_complex(R(0), R(0));
      exp_ = 0;
      return;
    }
    int e = 0;
    (void)frexp(m, &e);
    if (e != 0) {
      mant_ = make_complex(R(ldexp(R(mant_.real()), -e)),
                           R(ldexp(R(mant_.imag()), -e)));
      exp_ += e;
    }
  }

  complex_type mant_;
  std::int64_t exp_;
};

// z^e by binary powering in scaled form.
template <class R>
ScaledComplex<R> scaled_power(ScaledComplex<R> base, std::uint64_t e) {
  ScaledComplex<R> result(R(1));
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace qcf
