#pragma once

// Reference computations that share no code with the library: finite
// continued fractions evaluated backwards from the tail, naive unscaled
// forward recurrences, polynomial expansion by repeated multiplication, and
// Mobius-map classification from the normalized trace.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using cplx = std::complex<double>;

// b0 + a1/(b1 + a2/(b2 + ... + an/bn)) truncated after n elements, by
// backward evaluation. a[0] is ignored. Returns nullopt on division by zero.
template <class T>
std::optional<T> backward_value(const std::vector<T>& a, const std::vector<T>& b,
                                std::size_t n) {
  T tail(0);
  bool first = true;
  for (std::size_t j = n; j >= 1; --j) {
    const T den = first ? b[j] : b[j] + tail;
    first = false;
    if (den == T(0)) return std::nullopt;
    tail = a[j] / den;
  }
  return b[0] + tail;
}

// Plain complex forward recurrence without any rescaling; fine for short
// runs with moderate elements.
inline std::vector<cplx> naive_approximants(const std::vector<cplx>& a,
                                            const std::vector<cplx>& b) {
  std::vector<cplx> out;
  cplx pp(1), qp(0), p = b[0], q(1);
  out.push_back(p / q);
  for (std::size_t n = 1; n < b.size(); ++n) {
    const cplx pn = b[n] * p + a[n] * pp;
    const cplx qn = b[n] * q + a[n] * qp;
    pp = p;
    qp = q;
    p = pn;
    q = qn;
    out.push_back(p / q);
  }
  return out;
}

// Dense univariate polynomial in q with integer coefficients, index = power.
using Dense = std::vector<BigInt>;

inline Dense dense_trim(Dense p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Dense dense_add(const Dense& x, const Dense& y) {
  Dense r(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += x[i];
  for (std::size_t i = 0; i < y.size(); ++i) r[i] += y[i];
  return dense_trim(r);
}

inline Dense dense_mul(const Dense& x, const Dense& y) {
  if (x.empty() || y.empty()) return {};
  Dense r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  }
  return dense_trim(r);
}

// sum c * q^qexp * X^xexp with X = q^nu, computed as repeated products of
// dense polynomials rather than exponent arithmetic.
struct Triple {
  std::int64_t c;
  std::uint64_t qexp;
  std::uint64_t xexp;
};

inline Dense expand(const std::vector<Triple>& terms, std::uint64_t nu) {
  Dense x(nu + 1);
  x[nu] = 1;  // q^nu
  Dense total;
  for (const Triple& t : terms) {
    Dense term{BigInt(t.c)};
    for (std::uint64_t i = 0; i < t.qexp; ++i) term = dense_mul(term, Dense{0, 1});
    for (std::uint64_t i = 0; i < t.xexp; ++i) term = dense_mul(term, x);
    total = dense_add(total, term);
  }
  return total;
}

// Mobius classification of w -> c/(1+w), i.e. of the matrix [[0, c], [1, 1]],
// from the normalized trace tau = tr^2/det = -1/c: parabolic iff tau = 4,
// elliptic iff tau is real in [0, 4), loxodromic otherwise.
enum class Kind { kParabolic, kElliptic, kLoxodromic };

inline Kind trace_kind(cplx c) {
  const cplx tau = -1.0 / c;
  const double scale = 1.0 + std::abs(tau);
  if (std::abs(tau - 4.0) <= 1e-13 * scale) return Kind::kParabolic;
  if (std::abs(tau.imag()) <= 1e-13 * scale && tau.real() >= 0 &&
      tau.real() < 4.0) {
    return Kind::kElliptic;
  }
  return Kind::kLoxodromic;
}

// Uniform draws used by the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  // Modulus uniform in [lo, hi], argument uniform.
  cplx polar(double lo, double hi) {
    return std::polar(uniform(lo, hi), uniform(-3.141592653589793, 3.141592653589793));
  }

  // Nonzero integer in [-m, m].
  std::int64_t nonzero(std::int64_t m) {
    std::int64_t v = 0;
    while (v == 0) v = integer(-m, m);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
