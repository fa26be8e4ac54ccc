#pragma once

// Exact polynomials in Z[q][x] and the element rule that turns a periodic
// list of them into the partial numerators/denominators of a q-continued
// fraction.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qcf {

using Integer = boost::multiprecision::cpp_int;

struct Monomial {
  Integer coeff;
  std::uint64_t qexp = 0;
  std::uint64_t xexp = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Sparse polynomial with exact integer coefficients. Terms are kept sorted by
// (xexp, qexp), like terms combined and zero coefficients dropped, so two
// polynomials are equal iff their term vectors are equal.
class PolynomialQX {
 public:
  PolynomialQX() = default;
  explicit PolynomialQX(std::vector<Monomial> terms);
  // Convenience for literals: {coeff, qexp, xexp} triples.
  static PolynomialQX from_triples(
      const std::vector<std::array<std::int64_t, 3>>& triples);
  static PolynomialQX constant(const Integer& c);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True when no term carries a power of x.
  bool is_univariate_q() const;

  // Degrees are nullopt for the zero polynomial.
  std::optional<std::uint64_t> degree_q() const;
  std::optional<std::uint64_t> degree_x() const;
  std::optional<std::uint64_t> total_degree() const;

  // Coefficient of the highest power of q. Requires a nonzero polynomial
  // with no x terms.
  const Integer& leading_coefficient_q() const;

  // x -> q^nu, exactly, with like terms combined.
  PolynomialQX substitute_x_power(std::uint64_t nu) const;

  template <class C>
  C evaluate(const C& q, const C& x) const;

  Integer evaluate_exact(const Integer& q, const Integer& x) const;

  // Human-readable form, highest terms first, e.g. "q^4 + 7*q^3 + 3*q + 2".
  std::string to_string() const;

  friend bool operator==(const PolynomialQX&, const PolynomialQX&) = default;

 private:
  std::vector<Monomial> terms_;
};

template <class C>
C integer_power(C base, std::uint64_t e) {
  C result(1);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

template <class C>
C PolynomialQX::evaluate(const C& q, const C& x) const {
  C sum(0);
  for (const Monomial& t : terms_) {
    C term = integer_power(q, t.qexp) * integer_power(x, t.xexp);
    sum += term * C(t.coeff.template convert_to<double>());
  }
  return sum;
}

// Binary64 evaluation; monomials are summed in (xexp, qexp) order.
std::complex<double> poly_eval(const PolynomialQX& p, std::complex<double> q,
                               std::complex<double> x);

// A periodic family: a_{nu*k+s} = f_s(q^nu) for s = 1..k, and, when
// denominator polynomials are given, b_{nu*k+s-1} = g_{s-1}(q^nu). Without
// denominator polynomials every b_n (n >= 1) is 1 and b_0 defaults to 1.
class FamilySpec {
 public:
  FamilySpec(std::size_t k, std::vector<PolynomialQX> f,
             std::optional<std::vector<PolynomialQX>> g = std::nullopt,
             std::optional<PolynomialQX> b0 = std::nullopt);

  std::size_t k() const { return k_; }
  const std::vector<PolynomialQX>& f() const { return f_; }
  const std::optional<std::vector<PolynomialQX>>& g() const { return g_; }
  const std::optional<PolynomialQX>& b0_override() const { return b0_; }
  bool has_denominators() const { return g_.has_value(); }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

 private:
  std::size_t k_;
  std::vector<PolynomialQX> f_;
  std::optional<std::vector<PolynomialQX>> g_;
  std::optional<PolynomialQX> b0_;
};

// a_n for n >= 1; throws std::out_of_range for n = 0.
PolynomialQX numerator_at(const FamilySpec& fam, std::size_t n);
// b_n for n >= 0.
PolynomialQX denominator_at(const FamilySpec& fam, std::size_t n);
// (a_n, b_n) for n >= 1.
std::pair<PolynomialQX, PolynomialQX> element_at(const FamilySpec& fam,
                                                 std::size_t n);

// Outcome of checking the degree and leading-coefficient hypotheses of a
// family. Field names follow the convergence theorems: m is the constant
// degree step of a unit-denominator family; a, b, r1, r2 give
// deg a_n = (n-1)a + r1 and deg b_n = n*b + r2; La, Lb are the common
// leading coefficients.
//
// Degree laws are required for every index. Leading coefficients are only
// required to agree on a tail (from leading_tail_start_a / _b on), since a
// finite head does not affect convergence (catalog families such as eo1
// start with a_1 = 6q, a_2 = 3q^2 + 7q).
struct HypothesisReport {
  bool satisfied = false;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::optional<std::int64_t> r1;
  std::optional<std::int64_t> r2;
  std::optional<Integer> La;
  std::optional<Integer> Lb;
  std::optional<std::string> failure_reason;
  // Every index n <= verified_horizon was checked by exact expansion; beyond
  // it the dominant-monomial argument covers the rest.
  std::size_t verified_horizon = 0;
  std::size_t leading_tail_start_a = 1;
  std::size_t leading_tail_start_b = 0;

  friend bool operator==(const HypothesisReport&,
                         const HypothesisReport&) = default;
};

// Hypotheses for unit-denominator families (odd/even convergence result).
HypothesisReport check_odd_even_hypotheses(const FamilySpec& fam);
// Hypotheses for families with polynomial denominators.
HypothesisReport check_denominator_hypotheses(const FamilySpec& fam);

}  // namespace qcf
