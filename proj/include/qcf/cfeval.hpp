#pragma once

// Approximants of b_0 + K(a_n/b_n) by the forward three-term recurrence
//   P_n = b_n P_{n-1} + a_n P_{n-2},  Q_n = b_n Q_{n-1} + a_n Q_{n-2},
// P_{-1} = 1, Q_{-1} = 0, P_0 = b_0, Q_0 = 1, with power-of-two projective
// rescaling so the convergents never overflow, and a windowed convergence
// test in the chordal metric of the Riemann sphere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcf/errors.hpp"
#include "qcf/scaled.hpp"
#include "qcf/stream.hpp"

namespace qcf {

// A point of the extended complex plane.
template <class R>
struct ExtendedValue {
  Complex<R> z{R(0), R(0)};
  bool infinite = false;

  static ExtendedValue at_infinity() {
    ExtendedValue v;
    v.infinite = true;
    return v;
  }
  std::complex<double> to_double() const {
    if (infinite) {
      const double inf = std::numeric_limits<double>::infinity();
      return {inf, inf};
    }
    return to_complex_double<R>(z);
  }
};

// Chordal distance 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)), in [0, 2].
template <class R>
R chordal_distance(const ExtendedValue<R>& u, const ExtendedValue<R>& v) {
  using std::abs;
  using std::sqrt;
  if (u.infinite && v.infinite) return R(0);
  if (u.infinite || v.infinite) {
    const Complex<R>& w = u.infinite ? v.z : u.z;
    return R(2) / R(sqrt(R(1) + R(norm(w))));
  }
  // Computed as 2|z-w| / (|(z,1)| |(w,1)|) with hypot-style norms so large
  // moduli do not overflow.
  const R nz = R(hypot(R(abs(u.z)), R(1)));
  const R nw = R(hypot(R(abs(v.z)), R(1)));
  return R(2) * R(abs(Complex<R>(u.z - v.z))) / nz / nw;
}

// (P_n, Q_n, P_{n-1}, Q_{n-1}), each with its own power-of-two exponent:
// when |a_n| grows geometrically the ratio P_n/P_{n-1} leaves the binary64
// range, so a single shared scale would flush the older pair to zero.
template <class R>
class ApproximantState {
 public:
  explicit ApproximantState(const ScaledComplex<R>& b0)
      : p_(b0), q_(R(1)), pp_(R(1)), qp_() {}

  void step(const Element<R>& el) {
    ScaledComplex<R> p_new = el.b * p_ + el.a * pp_;
    ScaledComplex<R> q_new = el.b * q_ + el.a * qp_;
    pp_ = std::move(p_);
    qp_ = std::move(q_);
    p_ = std::move(p_new);
    q_ = std::move(q_new);
    ++n_;
  }

  ExtendedValue<R> value() const {
    if (q_.is_zero()) return ExtendedValue<R>::at_infinity();
    ExtendedValue<R> v;
    v.z = (p_ / q_).value();
    using std::isfinite;
    if (!isfinite(R(v.z.real())) || !isfinite(R(v.z.imag()))) {
      return ExtendedValue<R>::at_infinity();
    }
    return v;
  }

  std::size_t n() const { return n_; }
  const ScaledComplex<R>& p() const { return p_; }
  const ScaledComplex<R>& q() const { return q_; }
  const ScaledComplex<R>& p_prev() const { return pp_; }
  const ScaledComplex<R>& q_prev() const { return qp_; }

 private:
  ScaledComplex<R> p_, q_, pp_, qp_;
  std::size_t n_ = 0;
};

template <class R>
struct IndexedApproximant {
  std::size_t n;
  ExtendedValue<R> value;
};

// P_n/Q_n for n = 0..n_max (fewer for a shorter finite stream).
template <class R>
std::vector<IndexedApproximant<R>> approximants(const ElementStream<R>& s,
                                                std::size_t n_max) {
  std::vector<IndexedApproximant<R>> out;
  ApproximantState<R> st(s.b0());
  out.push_back({0, st.value()});
  std::size_t last = n_max;
  if (auto len = s.length()) last = std::min(last, *len);
  for (std::size_t n = 1; n <= last; ++n) {
    st.step(s.at(n));
    out.push_back({n, st.value()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numerical convergence reports.

enum class ConvergenceStatus {
  kConverged,
  kNotConvergedByN,
  kDivergentOscillation,
  kZeroElementHit,
  kPoleEncountered,
};

inline const char* to_string(ConvergenceStatus s) {
  switch (s) {
    case ConvergenceStatus::kConverged: return "Converged";
    case ConvergenceStatus::kNotConvergedByN: return "NotConvergedByN";
    case ConvergenceStatus::kDivergentOscillation: return "DivergentOscillation";
    case ConvergenceStatus::kZeroElementHit: return "ZeroElementHit";
    case ConvergenceStatus::kPoleEncountered: return "PoleEncountered";
  }
  return "?";
}

template <class R>
struct ConvergenceReport {
  ConvergenceStatus status = ConvergenceStatus::kNotConvergedByN;
  ExtendedValue<R> value;  // last approximant examined
  std::size_t n_used = 0;
  double final_gap = 0;  // max chordal gap over the last window
  std::string detail;    // error text for ZeroElementHit / PoleEncountered
};

struct ConvergenceOptions {
  double tol = 1e-10;
  std::size_t window = 8;
  std::size_t n_max = 2000;
  // Divergence is declared only when the trailing gaps stay above
  // divergence_factor * tol.
  double divergence_factor = 1e3;

  void validate() const {
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    if (window < 2) throw std::invalid_argument("window must be >= 2");
    if (n_max <= window) throw std::invalid_argument("n_max must exceed window");
  }
};

// Windowed convergence test for one approximant sequence.
//
// Converged: every consecutive gap in the trailing window is <= tol.
// DivergentOscillation: see divergence_evident(). A full-sequence run stops
// as soon as it holds; the parts are judged when their run ends.
template <class R>
class ConvergenceTracker {
 public:
  explicit ConvergenceTracker(const ConvergenceOptions& opt) : opt_(opt) {}

  // Returns true once converged; later pushes are ignored.
  bool push(std::size_t n, const ExtendedValue<R>& v) {
    if (converged_) return true;
    if (count_ > 0) {
      gaps_.push_back(to_double<R>(chordal_distance<R>(last_, v)));
    }
    last_ = v;
    last_n_ = n;
    ++count_;
    if (gaps_.size() >= opt_.window && trailing_max(0) <= opt_.tol) {
      converged_ = true;
    }
    return converged_;
  }

  bool converged() const { return converged_; }

  // Gaps stay large and show no decrease, both across the last three
  // windows and against the block of equal length ending halfway through the
  // history; the second test keeps slow geometric convergence (gap ratio
  // close to 1 per window) from looking like oscillation.
  bool divergence_evident() const {
    const std::size_t w = opt_.window;
    const std::size_t count = gaps_.size();
    if (count < 3 * w) return false;
    const double newest_min =
        *std::min_element(gaps_.end() - static_cast<std::ptrdiff_t>(w),
                          gaps_.end());
    if (!(newest_min > opt_.divergence_factor * opt_.tol)) return false;
    const double m3 = trailing_max(0);
    const double m2 = trailing_max(1);
    const double m1 = trailing_max(2);
    if (!(m3 >= kNoDecrease * m2 && m2 >= kNoDecrease * m1)) return false;
    const std::size_t span = std::max(w, count / 4);
    const double recent = block_max(count - span, count);
    const double earlier = block_max(count / 2 - std::min(count / 2, span), count / 2);
    return recent >= kNoDecrease * earlier;
  }

  ConvergenceReport<R> report() const {
    ConvergenceReport<R> r;
    r.value = last_;
    r.n_used = last_n_;
    r.final_gap = gaps_.empty() ? 0.0 : trailing_max(0);
    if (converged_) {
      r.status = ConvergenceStatus::kConverged;
    } else if (divergence_evident()) {
      r.status = ConvergenceStatus::kDivergentOscillation;
    } else {
      r.status = ConvergenceStatus::kNotConvergedByN;
    }
    return r;
  }

 private:
  // Window maxima may fluctuate by this factor without counting as a
  // decrease.
  static constexpr double kNoDecrease = 0.5;

  double block_max(std::size_t begin, std::size_t end) const {
    double m = 0;
    for (std::size_t i = begin; i < end; ++i) m = std::max(m, gaps_[i]);
    return m;
  }

  // Max gap in window `back` counted from the newest (0 = trailing).
  double trailing_max(std::size_t back) const {
    const std::size_t w = opt_.window;
    const std::size_t avail = gaps_.size();
    const std::size_t end = avail - std::min(avail, back * w);
    return block_max(end - std::min(end, w), end);
  }

  ConvergenceOptions opt_;
  std::vector<double> gaps_;
  ExtendedValue<R> last_;
  std::size_t last_n_ = 0;
  std::size_t count_ = 0;
  bool converged_ = false;
};

// Reports for the full sequence and its odd/even subsequences from one run.
template <class R>
struct TripleReport {
  ConvergenceReport<R> full;
  ConvergenceReport<R> odd;
  ConvergenceReport<R> even;
  std::size_t n_used = 0;
};

enum class RunGoal { kFull, kOddEven, kAll };

namespace detail {

template <class R>
ConvergenceReport<R> failed_report(ConvergenceStatus status,
                                   const std::exception& e, std::size_t n) {
  ConvergenceReport<R> r;
  r.status = status;
  r.n_used = n;
  r.detail = e.what();
  return r;
}

template <class R>
TripleReport<R> run_trackers(const ElementStream<R>& s,
                             const ConvergenceOptions& opt, RunGoal goal) {
  opt.validate();
  ConvergenceTracker<R> full(opt);
  ConvergenceTracker<R> odd(opt);
  ConvergenceTracker<R> even(opt);
  std::size_t last = opt.n_max;
  if (auto len = s.length()) last = std::min(last, *len);

  auto done = [&]() {
    switch (goal) {
      case RunGoal::kFull:
        return full.converged() || full.divergence_evident();
      case RunGoal::kOddEven: return odd.converged() && even.converged();
      case RunGoal::kAll:
        // Once both parts have settled the full sequence either follows
        // them or oscillates between two limits for good.
        return odd.converged() && even.converged() &&
               (full.converged() || full.divergence_evident());
    }
    return false;
  };

  std::size_t n = 0;
  try {
    ApproximantState<R> st(s.b0());
    full.push(0, st.value());
    even.push(0, st.value());
    for (n = 1; n <= last && !done(); ++n) {
      st.step(s.at(n));
      const ExtendedValue<R> v = st.value();
      full.push(n, v);
      (n % 2 == 0 ? even : odd).push(n, v);
    }
  } catch (const ZeroElementError& e) {
    auto r = failed_report<R>(ConvergenceStatus::kZeroElementHit, e, n);
    return {r, r, r, n};
  } catch (const PoleError& e) {
    auto r = failed_report<R>(ConvergenceStatus::kPoleEncountered, e, n);
    return {r, r, r, n};
  } catch (const ZeroContractionDenominatorError& e) {
    auto r = failed_report<R>(ConvergenceStatus::kPoleEncountered, e, n);
    return {r, r, r, n};
  }
  TripleReport<R> out{full.report(), odd.report(), even.report(), 0};
  out.n_used = std::max({out.full.n_used, out.odd.n_used, out.even.n_used});
  return out;
}

}  // namespace detail

template <class R>
ConvergenceReport<R> limit_estimate(const ElementStream<R>& s,
                                    const ConvergenceOptions& opt = {}) {
  return detail::run_trackers(s, opt, RunGoal::kFull).full;
}

template <class R>
std::pair<ConvergenceReport<R>, ConvergenceReport<R>> odd_even_reports(
    const ElementStream<R>& s, const ConvergenceOptions& opt = {}) {
  auto t = detail::run_trackers(s, opt, RunGoal::kOddEven);
  return {t.odd, t.even};
}

template <class R>
TripleReport<R> all_reports(const ElementStream<R>& s,
                            const ConvergenceOptions& opt = {}) {
  return detail::run_trackers(s, opt, RunGoal::kAll);
}

// ---------------------------------------------------------------------------
// Equivalence transformation to unit partial denominators:
//   b_0 + (a_1/b_1)/1 + K_{n>=2} (a_n/(b_n b_{n-1}))/1.

template <class R>
class UnitDenominatorSource final : public ElementSource<R> {
 public:
  explicit UnitDenominatorSource(ElementStream<R> inner)
      : inner_(std::move(inner)) {}
  std::unique_ptr<ElementSource<R>> clone() const override {
    return std::make_unique<UnitDenominatorSource>(*this);
  }
  ScaledComplex<R> leading() override { return inner_.b0(); }
  Element<R> element(std::size_t n) override {
    const Element<R> cur = inner_.at(n);
    if (cur.b.is_zero()) {
      throw PoleError("partial denominator b_" + std::to_string(n) + " is zero",
                      n);
    }
    ScaledComplex<R> a = cur.a / cur.b;
    if (n >= 2) {
      const Element<R> prev = inner_.at(n - 1);
      if (prev.b.is_zero()) {
        throw PoleError(
            "partial denominator b_" + std::to_string(n - 1) + " is zero",
            n - 1);
      }
      a = a / prev.b;
    }
    return {a, ScaledComplex<R>(R(1))};
  }
  std::optional<std::size_t> length() const override { return inner_.length(); }

 private:
  ElementStream<R> inner_;
};

template <class R>
ElementStream<R> to_unit_denominators(ElementStream<R> s) {
  return make_stream<R, UnitDenominatorSource<R>>(std::move(s));
}

// ---------------------------------------------------------------------------
// Exact convergents over any field-like T (rationals in tests, scaled
// complex numbers elsewhere): returns (P_n, Q_n) for n = 0..a.size(), where
// a[0] is unused and b[0] is b_0.

template <class T>
std::vector<std::pair<T, T>> convergents(const std::vector<T>& a,
                                         const std::vector<T>& b) {
  if (a.size() != b.size() || b.empty()) {
    throw std::invalid_argument("convergents: a and b must have equal length");
  }
  std::vector<std::pair<T, T>> out;
  out.reserve(b.size());
  T p_prev(1), q_prev(0);
  T p = b[0], q(1);
  out.emplace_back(p, q);
  for (std::size_t n = 1; n < b.size(); ++n) {
    T p_new = b[n] * p + a[n] * p_prev;
    T q_new = b[n] * q + a[n] * q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_new);
    q = std::move(q_new);
    out.emplace_back(p, q);
  }
  return out;
}

}  // namespace qcf
