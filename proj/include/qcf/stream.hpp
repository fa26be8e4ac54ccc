#pragma once

// Element streams: the partial numerators a_n and denominators b_n of a
// continued fraction b_0 + K(a_n/b_n), evaluated at a fixed point. Streams
// are lazy (elements are computed on demand from n) and may be infinite.
// An ElementStream owns its source; copying clones it, so copies can be
// handed to different threads.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qcf/errors.hpp"
#include "qcf/qpoly.hpp"
#include "qcf/scaled.hpp"

namespace qcf {

template <class R>
struct Element {
  ScaledComplex<R> a;
  ScaledComplex<R> b;
};

template <class R>
class ElementSource {
 public:
  virtual ~ElementSource() = default;
  virtual std::unique_ptr<ElementSource> clone() const = 0;
  virtual ScaledComplex<R> leading() = 0;
  // Element n >= 1. Not const: sources may memoize.
  virtual Element<R> element(std::size_t n) = 0;
  // Number of elements, nullopt when infinite.
  virtual std::optional<std::size_t> length() const = 0;
};

template <class R>
class ElementStream {
 public:
  explicit ElementStream(std::unique_ptr<ElementSource<R>> src)
      : src_(std::move(src)) {}
  ElementStream(const ElementStream& other) : src_(other.src_->clone()) {}
  ElementStream& operator=(const ElementStream& other) {
    if (this != &other) src_ = other.src_->clone();
    return *this;
  }
  ElementStream(ElementStream&&) noexcept = default;
  ElementStream& operator=(ElementStream&&) noexcept = default;

  ScaledComplex<R> b0() const { return src_->leading(); }

  // (a_n, b_n) for n >= 1; throws ZeroElementError when a_n = 0 and
  // std::out_of_range past the end of a finite stream.
  Element<R> at(std::size_t n) const {
    if (n == 0) throw std::out_of_range("elements start at n = 1");
    if (auto len = src_->length(); len && n > *len) {
      throw std::out_of_range("element index past end of finite stream");
    }
    Element<R> e = src_->element(n);
    if (e.a.is_zero()) throw ZeroElementError(n);
    return e;
  }

  std::optional<std::size_t> length() const { return src_->length(); }
  bool is_finite() const { return src_->length().has_value(); }

 private:
  std::unique_ptr<ElementSource<R>> src_;
};

template <class R, class Source, class... Args>
ElementStream<R> make_stream(Args&&... args) {
  return ElementStream<R>(std::make_unique<Source>(std::forward<Args>(args)...));
}

// ---------------------------------------------------------------------------

template <class R>
class ListSource final : public ElementSource<R> {
 public:
  ListSource(ScaledComplex<R> b0, std::vector<ScaledComplex<R>> a,
             std::vector<ScaledComplex<R>> b)
      : b0_(b0), a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) {
      throw std::invalid_argument("element lists must have equal length");
    }
  }
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<ListSource>(*this);
  }
  ScaledComplex<R> leading() override { return b0_; }
  Element<R> element(std::size_t n) override { return {a_[n - 1], b_[n - 1]}; }
  std::optional<std::size_t> length() const override { return a_.size(); }

 private:
  ScaledComplex<R> b0_;
  std::vector<ScaledComplex<R>> a_;
  std::vector<ScaledComplex<R>> b_;
};

// Finite stream from binary64 values: b0 + a_1/(b_1 + a_2/(b_2 + ...)).
template <class R>
ElementStream<R> list_stream(std::complex<double> b0,
                             const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b) {
  std::vector<ScaledComplex<R>> sa;
  std::vector<ScaledComplex<R>> sb;
  for (auto z : a) sa.push_back(ScaledComplex<R>::from_double(z));
  for (auto z : b) sb.push_back(ScaledComplex<R>::from_double(z));
  return make_stream<R, ListSource<R>>(ScaledComplex<R>::from_double(b0),
                                       std::move(sa), std::move(sb));
}

// Elements from a callable n -> Element<R>.
template <class R>
class GeneratorSource final : public ElementSource<R> {
 public:
  using Fn = std::function<Element<R>(std::size_t)>;
  GeneratorSource(ScaledComplex<R> b0, Fn fn,
                  std::optional<std::size_t> len = std::nullopt)
      : b0_(b0), fn_(std::move(fn)), len_(len) {}
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<GeneratorSource>(*this);
  }
  ScaledComplex<R> leading() override { return b0_; }
  Element<R> element(std::size_t n) override { return fn_(n); }
  std::optional<std::size_t> length() const override { return len_; }

 private:
  ScaledComplex<R> b0_;
  Fn fn_;
  std::optional<std::size_t> len_;
};

template <class R>
ElementStream<R> generator_stream(
    ScaledComplex<R> b0, typename GeneratorSource<R>::Fn fn,
    std::optional<std::size_t> len = std::nullopt) {
  return make_stream<R, GeneratorSource<R>>(b0, std::move(fn), len);
}

// Elements of a FamilySpec at a fixed complex q.
template <class R>
class FamilySource final : public ElementSource<R> {
 public:
  FamilySource(const FamilySpec& fam, const Complex<R>& q)
      : k_(fam.k()), q_(q) {
    for (const PolynomialQX& p : fam.f()) f_.push_back(compile(p));
    if (fam.g()) {
      for (const PolynomialQX& p : *fam.g()) g_.push_back(compile(p));
    }
    if (fam.b0_override()) {
      b0_ = evaluate(compile(*fam.b0_override()), 0);
    } else if (!g_.empty()) {
      b0_ = evaluate(g_[0], 0);
    } else {
      b0_ = ScaledComplex<R>(R(1));
    }
  }
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<FamilySource>(*this);
  }
  ScaledComplex<R> leading() override { return b0_; }
  Element<R> element(std::size_t n) override {
    const std::size_t nu = (n - 1) / k_;
    const std::size_t s = (n - 1) % k_;
    Element<R> e;
    e.a = evaluate(f_[s], nu);
    if (g_.empty()) {
      e.b = ScaledComplex<R>(R(1));
    } else {
      e.b = evaluate(g_[n % k_], n / k_);
    }
    return e;
  }
  std::optional<std::size_t> length() const override { return std::nullopt; }

 private:
  struct Term {
    ScaledComplex<R> coeff_times_qpow;  // c * q^qexp
    std::uint64_t xexp;
  };
  using Compiled = std::vector<Term>;

  Compiled compile(const PolynomialQX& p) const {
    Compiled out;
    const ScaledComplex<R> q(q_);
    for (const Monomial& t : p.terms()) {
      ScaledComplex<R> c(R(t.coeff.template convert_to<R>()));
      out.push_back({c * scaled_power(q, t.qexp), t.xexp});
    }
    return out;
  }

  // q^nu, memoized; element access is mostly sequential.
  const ScaledComplex<R>& q_power(std::size_t nu) {
    if (qpow_.empty()) qpow_.push_back(ScaledComplex<R>(R(1)));
    const ScaledComplex<R> q(q_);
    while (qpow_.size() <= nu) {
      if (qpow_.size() % 64 == 0) {
        // Periodic re-anchoring bounds the accumulated rounding error.
        qpow_.push_back(scaled_power(q, qpow_.size()));
      } else {
        qpow_.push_back(qpow_.back() * q);
      }
    }
    return qpow_[nu];
  }

  ScaledComplex<R> evaluate(const Compiled& p, std::size_t nu) {
    const ScaledComplex<R> x = q_power(nu);
    ScaledComplex<R> sum;
    for (const Term& t : p) {
      sum += t.coeff_times_qpow * scaled_power(x, t.xexp);
    }
    return sum;
  }

  std::size_t k_;
  Complex<R> q_;
  std::vector<Compiled> f_;
  std::vector<Compiled> g_;
  ScaledComplex<R> b0_;
  std::vector<ScaledComplex<R>> qpow_;
};

template <class R>
ElementStream<R> family_stream(const FamilySpec& fam, const Complex<R>& q) {
  return make_stream<R, FamilySource<R>>(fam, q);
}

// Binary64 point for higher-precision streams.
template <class R>
  requires(!std::is_same_v<R, double>)
ElementStream<R> family_stream(const FamilySpec& fam, std::complex<double> q) {
  return family_stream<R>(fam, make_complex(R(q.real()), R(q.imag())));
}

// 1 / (b_0 + K(a_n/b_n)) written as 0 + 1/(b_0 + a_1/(b_1 + ...)).
template <class R>
class ReciprocalSource final : public ElementSource<R> {
 public:
  explicit ReciprocalSource(ElementStream<R> inner) : inner_(std::move(inner)) {}
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<ReciprocalSource>(*this);
  }
  ScaledComplex<R> leading() override { return ScaledComplex<R>(); }
  Element<R> element(std::size_t n) override {
    if (n == 1) return {ScaledComplex<R>(R(1)), inner_.b0()};
    return inner_.at(n - 1);
  }
  std::optional<std::size_t> length() const override {
    auto len = inner_.length();
    if (len) return *len + 1;
    return std::nullopt;
  }

 private:
  ElementStream<R> inner_;
};

template <class R>
ElementStream<R> reciprocal(ElementStream<R> s) {
  return make_stream<R, ReciprocalSource<R>>(std::move(s));
}

}  // namespace qcf
