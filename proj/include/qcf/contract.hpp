#pragma once

// Even and odd contractions. The even part of b_0 + K(a_n/b_n) is the
// continued fraction whose n-th approximant is P_{2n}/Q_{2n}:
//
//   b_0 + (b_2 a_1)/(b_2 b_1 + a_2)
//       - (a_2 a_3 b_4/b_2)/(a_4 + b_3 b_4 + a_3 b_4/b_2)
//       - (a_4 a_5 b_6/b_4)/(a_6 + b_5 b_6 + a_5 b_6/b_4) - ...
//
// The odd part has zeroth approximant P_1/Q_1 and n-th approximant
// P_{2n+1}/Q_{2n+1}:
//
//   (b_0 b_1 + a_1)/b_1
//       - (a_1 a_2 b_3/b_1)/(b_1 (a_3 + b_2 b_3) + a_2 b_3)
//       - (a_3 a_4 b_5 b_1/b_3)/(a_5 + b_4 b_5 + a_4 b_5/b_3)
//       - (a_5 a_6 b_7/b_5)/(a_7 + b_6 b_7 + a_6 b_7/b_5) - ...
//
// The second odd denominator is scaled by b_1, hence the extra b_1 in the
// third numerator. Emitted streams are all-plus: the minus separators are
// folded into the partial numerators.

#include <cstddef>
#include <optional>
#include <string>

#include "qcf/cfeval.hpp"
#include "qcf/errors.hpp"
#include "qcf/stream.hpp"

namespace qcf {

enum class ContractionKind { kEven, kOdd };

inline const char* to_string(ContractionKind k) {
  return k == ContractionKind::kEven ? "even" : "odd";
}

// Element formulas over any field-like T with an is_zero predicate.
// `a(j)` and `b(j)` give the input elements; n >= 1 is the output index.
template <class T>
struct ContractionFormulas {
  template <class A, class B, class IsZero>
  static std::pair<T, T> even(std::size_t n, A&& a, B&& b, IsZero&& is_zero) {
    auto divisor = [&](std::size_t j) -> T {
      T v = b(j);
      if (is_zero(v)) {
        throw PoleError("even part divides by b_" + std::to_string(j) + " = 0",
                        j);
      }
      return v;
    };
    T num;
    T den;
    if (n == 1) {
      const T b2 = b(2);
      num = b2 * a(1);
      den = b2 * b(1) + a(2);
    } else {
      const std::size_t j = 2 * n;
      const T bprev = divisor(j - 2);
      const T bj = b(j);
      num = -(a(j - 2) * a(j - 1) * bj / bprev);
      den = a(j) + b(j - 1) * bj + a(j - 1) * bj / bprev;
    }
    if (is_zero(den)) throw ZeroContractionDenominatorError(n);
    return {num, den};
  }

  template <class A, class B, class IsZero>
  static T odd_leading(A&& a, B&& b, IsZero&& is_zero) {
    const T b1 = b(1);
    if (is_zero(b1)) throw PoleError("odd part divides by b_1 = 0", 1);
    return (b(0) * b1 + a(1)) / b1;
  }

  template <class A, class B, class IsZero>
  static std::pair<T, T> odd(std::size_t n, A&& a, B&& b, IsZero&& is_zero) {
    auto divisor = [&](std::size_t j) -> T {
      T v = b(j);
      if (is_zero(v)) {
        throw PoleError("odd part divides by b_" + std::to_string(j) + " = 0",
                        j);
      }
      return v;
    };
    T num;
    T den;
    if (n == 1) {
      const T b1 = divisor(1);
      const T b3 = b(3);
      num = -(a(1) * a(2) * b3 / b1);
      den = b1 * (a(3) + b(2) * b3) + a(2) * b3;
    } else {
      const std::size_t j = 2 * n + 1;
      const T bprev = divisor(j - 2);
      const T bj = b(j);
      num = -(a(j - 2) * a(j - 1) * bj / bprev);
      if (n == 2) num = num * divisor(1);
      den = a(j) + b(j - 1) * bj + a(j - 1) * bj / bprev;
    }
    if (is_zero(den)) throw ZeroContractionDenominatorError(n);
    return {num, den};
  }
};

template <class R>
class ContractionSource final : public ElementSource<R> {
 public:
  ContractionSource(ElementStream<R> inner, ContractionKind kind)
      : inner_(std::move(inner)), kind_(kind) {}
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<ContractionSource>(*this);
  }
  ScaledComplex<R> leading() override {
    if (kind_ == ContractionKind::kEven) return inner_.b0();
    return Formulas::odd_leading(a_fn(), b_fn(), is_zero_fn());
  }
  Element<R> element(std::size_t n) override {
    auto [num, den] = kind_ == ContractionKind::kEven
                          ? Formulas::even(n, a_fn(), b_fn(), is_zero_fn())
                          : Formulas::odd(n, a_fn(), b_fn(), is_zero_fn());
    return {num, den};
  }
  std::optional<std::size_t> length() const override {
    auto len = inner_.length();
    if (!len) return std::nullopt;
    if (kind_ == ContractionKind::kEven) return *len / 2;
    return *len >= 1 ? (*len - 1) / 2 : 0;
  }

 private:
  using Formulas = ContractionFormulas<ScaledComplex<R>>;
  auto a_fn() const {
    return [this](std::size_t j) { return inner_.at(j).a; };
  }
  auto b_fn() const {
    return [this](std::size_t j) {
      return j == 0 ? inner_.b0() : inner_.at(j).b;
    };
  }
  static auto is_zero_fn() {
    return [](const ScaledComplex<R>& z) { return z.is_zero(); };
  }

  ElementStream<R> inner_;
  ContractionKind kind_;
};

template <class R>
ElementStream<R> contract(ElementStream<R> s, ContractionKind kind) {
  return make_stream<R, ContractionSource<R>>(std::move(s), kind);
}

template <class R>
ElementStream<R> even_part(ElementStream<R> s) {
  return contract(std::move(s), ContractionKind::kEven);
}

template <class R>
ElementStream<R> odd_part(ElementStream<R> s) {
  return contract(std::move(s), ContractionKind::kOdd);
}

}  // namespace qcf
