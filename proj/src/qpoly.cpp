#include "qcf/qpoly.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qcf {

namespace {

std::uint64_t checked_exponent(std::uint64_t qexp, std::uint64_t nu,
                               std::uint64_t xexp) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (xexp != 0 && nu > (kMax - qexp) / xexp) {
    throw std::overflow_error("exponent overflow in x -> q^nu substitution");
  }
  return qexp + nu * xexp;
}

}  // namespace

PolynomialQX::PolynomialQX(std::vector<Monomial> terms) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, Integer> combined;
  for (Monomial& t : terms) {
    combined[{t.xexp, t.qexp}] += t.coeff;
  }
  terms_.reserve(combined.size());
  for (auto& [key, coeff] : combined) {
    if (coeff != 0) terms_.push_back({std::move(coeff), key.second, key.first});
  }
}

PolynomialQX PolynomialQX::from_triples(
    const std::vector<std::array<std::int64_t, 3>>& triples) {
  std::vector<Monomial> terms;
  terms.reserve(triples.size());
  for (const auto& [c, qe, xe] : triples) {
    if (qe < 0 || xe < 0) {
      throw std::invalid_argument("negative exponent in polynomial term");
    }
    terms.push_back({Integer(c), static_cast<std::uint64_t>(qe),
                     static_cast<std::uint64_t>(xe)});
  }
  return PolynomialQX(std::move(terms));
}

PolynomialQX PolynomialQX::constant(const Integer& c) {
  return PolynomialQX({Monomial{c, 0, 0}});
}

bool PolynomialQX::is_univariate_q() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial& t) { return t.xexp == 0; });
}

std::optional<std::uint64_t> PolynomialQX::degree_q() const {
  if (terms_.empty()) return std::nullopt;
  std::uint64_t d = 0;
  for (const Monomial& t : terms_) d = std::max(d, t.qexp);
  return d;
}

std::optional<std::uint64_t> PolynomialQX::degree_x() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().xexp;
}

std::optional<std::uint64_t> PolynomialQX::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  std::uint64_t d = 0;
  for (const Monomial& t : terms_) d = std::max(d, t.qexp + t.xexp);
  return d;
}

const Integer& PolynomialQX::leading_coefficient_q() const {
  if (terms_.empty()) {
    throw std::domain_error("leading coefficient of the zero polynomial");
  }
  if (!is_univariate_q()) {
    throw std::domain_error("leading coefficient requires a polynomial in q");
  }
  // Univariate terms are sorted by qexp.
  return terms_.back().coeff;
}

PolynomialQX PolynomialQX::substitute_x_power(std::uint64_t nu) const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const Monomial& t : terms_) {
    out.push_back({t.coeff, checked_exponent(t.qexp, nu, t.xexp), 0});
  }
  return PolynomialQX(std::move(out));
}

Integer PolynomialQX::evaluate_exact(const Integer& q, const Integer& x) const {
  Integer sum = 0;
  for (const Monomial& t : terms_) {
    sum += t.coeff * integer_power(q, t.qexp) * integer_power(x, t.xexp);
  }
  return sum;
}

std::string PolynomialQX::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& t = *it;
    Integer mag = t.coeff < 0 ? Integer(-t.coeff) : t.coeff;
    if (first) {
      if (t.coeff < 0) os << "-";
    } else {
      os << (t.coeff < 0 ? " - " : " + ");
    }
    first = false;
    const bool bare = t.qexp == 0 && t.xexp == 0;
    bool need_star = false;
    if (mag != 1 || bare) {
      os << mag;
      need_star = true;
    }
    auto power = [&](char var, std::uint64_t e) {
      if (e == 0) return;
      if (need_star) os << "*";
      os << var;
      if (e > 1) os << "^" << e;
      need_star = true;
    };
    power('q', t.qexp);
    power('x', t.xexp);
  }
  return os.str();
}

std::complex<double> poly_eval(const PolynomialQX& p, std::complex<double> q,
                               std::complex<double> x) {
  return p.evaluate(q, x);
}

FamilySpec::FamilySpec(std::size_t k, std::vector<PolynomialQX> f,
                       std::optional<std::vector<PolynomialQX>> g,
                       std::optional<PolynomialQX> b0)
    : k_(k), f_(std::move(f)), g_(std::move(g)), b0_(std::move(b0)) {
  if (k_ == 0) throw std::invalid_argument("family period k must be >= 1");
  if (f_.size() != k_) {
    throw std::invalid_argument("family needs exactly k numerator polynomials");
  }
  for (const PolynomialQX& p : f_) {
    if (p.is_zero()) {
      throw std::invalid_argument("numerator polynomial f_s is zero");
    }
  }
  if (g_ && g_->size() != k_) {
    throw std::invalid_argument(
        "family needs exactly k denominator polynomials when any are given");
  }
  if (b0_ && !b0_->is_univariate_q()) {
    throw std::invalid_argument("b0 must be a polynomial in q alone");
  }
}

PolynomialQX numerator_at(const FamilySpec& fam, std::size_t n) {
  if (n == 0) throw std::out_of_range("partial numerators start at n = 1");
  const std::size_t nu = (n - 1) / fam.k();
  const std::size_t s = (n - 1) % fam.k();
  return fam.f()[s].substitute_x_power(nu);
}

PolynomialQX denominator_at(const FamilySpec& fam, std::size_t n) {
  if (n == 0 && fam.b0_override()) return *fam.b0_override();
  if (!fam.has_denominators()) return PolynomialQX::constant(1);
  const std::size_t nu = n / fam.k();
  const std::size_t t = n % fam.k();
  return (*fam.g())[t].substitute_x_power(nu);
}

std::pair<PolynomialQX, PolynomialQX> element_at(const FamilySpec& fam,
                                                 std::size_t n) {
  return {numerator_at(fam, n), denominator_at(fam, n)};
}

// ---------------------------------------------------------------------------
// Hypothesis checking.
//
// For a polynomial p(q, x) and x = q^nu, deg_q p(q^nu) is the maximum over
// monomials of qexp + nu*xexp, a maximum of linear functions of nu. Past a
// crossover the monomial with the largest xexp (ties broken by qexp)
// strictly dominates, so degree and leading coefficient follow a closed
// form. Below the crossover cancellations are possible and indices are
// expanded exactly.

namespace {

struct Dominant {
  std::uint64_t xexp = 0;
  std::uint64_t qexp = 0;
  Integer coeff;
  std::uint64_t crossover = 0;  // dominance holds for every nu >= crossover
};

Dominant dominant_monomial(const PolynomialQX& p) {
  const Monomial& top = p.terms().back();  // max (xexp, qexp)
  Dominant d{top.xexp, top.qexp, top.coeff, 0};
  for (const Monomial& t : p.terms()) {
    if (t.xexp == top.xexp) continue;  // same slope, lower intercept
    if (t.qexp < top.qexp) continue;
    // Need top.qexp + nu*top.xexp > t.qexp + nu*t.xexp.
    const std::uint64_t gap = t.qexp - top.qexp;
    const std::uint64_t slope = top.xexp - t.xexp;
    d.crossover = std::max(d.crossover, gap / slope + 1);
  }
  return d;
}

struct Expanded {
  std::int64_t degree = 0;
  Integer lead;
};

constexpr std::size_t kMinHorizon = 16;
constexpr std::uint64_t kMaxCrossover = 200000;

// Degree law and eventual leading coefficient of one element sequence.
// `element(i)` yields the i-th polynomial for i in [first, horizon];
// `dominant[t]` is the dominant monomial of the generator used at residue t.
struct SequenceCheck {
  bool ok = false;
  std::string reason;
  std::int64_t step = 0;
  std::int64_t offset = 0;  // degree at index `first`
  Integer lead;
  std::size_t tail_start = 0;
};

template <class ElementFn>
SequenceCheck check_sequence(const char* name, std::size_t k,
                             const std::vector<Dominant>& dominant,
                             std::size_t first, std::size_t horizon,
                             ElementFn element) {
  SequenceCheck out;
  const std::uint64_t slope = dominant.front().xexp;
  for (const Dominant& d : dominant) {
    if (d.xexp != slope) {
      out.reason = std::string("degrees of ") + name +
                   " do not grow at a common rate: dominant x-degrees differ "
                   "across the period";
      return out;
    }
  }
  if (slope == 0) {
    out.reason = std::string("degrees of ") + name +
                 " are eventually constant; the degree step must be positive";
    return out;
  }
  if (slope % k != 0) {
    out.reason = std::string("degree step of ") + name +
                 " is not an integer: dominant x-degree " +
                 std::to_string(slope) + " is not divisible by k = " +
                 std::to_string(k);
    return out;
  }
  const auto step = static_cast<std::int64_t>(slope / k);
  for (std::size_t t = 1; t < dominant.size(); ++t) {
    const auto expect = static_cast<std::int64_t>(dominant[0].qexp) +
                        static_cast<std::int64_t>(t) * step;
    if (static_cast<std::int64_t>(dominant[t].qexp) != expect) {
      out.reason = std::string("degrees of ") + name +
                   " are not eventually in arithmetic progression (offset "
                   "mismatch at residue " +
                   std::to_string(t) + ")";
      return out;
    }
  }
  for (const Dominant& d : dominant) {
    if (d.coeff != dominant.front().coeff) {
      out.reason = std::string("leading coefficients of ") + name +
                   " are not eventually constant";
      return out;
    }
  }

  std::vector<Expanded> seq;
  seq.reserve(horizon - first + 1);
  for (std::size_t i = first; i <= horizon; ++i) {
    PolynomialQX p = element(i);
    if (p.is_zero()) {
      out.reason = std::string(name) + " vanishes identically at index " +
                   std::to_string(i);
      return out;
    }
    seq.push_back({static_cast<std::int64_t>(*p.degree_q()),
                   p.leading_coefficient_q()});
  }
  const std::int64_t offset = seq.front().degree;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    const std::int64_t diff = seq[j].degree - seq[j - 1].degree;
    if (diff != step) {
      out.reason = std::string("degree of ") + name + " steps by " +
                   std::to_string(diff) + " between indices " +
                   std::to_string(first + j - 1) + " and " +
                   std::to_string(first + j) + ", expected " +
                   std::to_string(step);
      return out;
    }
  }
  const Integer& lead = dominant.front().coeff;
  std::size_t tail = horizon + 1;
  while (tail > first && seq[tail - 1 - first].lead == lead) --tail;
  if (tail > horizon) {
    // Cannot happen once horizon is past the crossover; kept as a guard.
    out.reason = std::string("leading coefficient of ") + name +
                 " does not settle within the verified horizon";
    return out;
  }
  out.ok = true;
  out.step = step;
  out.offset = offset;
  out.lead = lead;
  out.tail_start = tail;
  return out;
}

std::vector<Dominant> dominants(const std::vector<PolynomialQX>& polys) {
  std::vector<Dominant> out;
  out.reserve(polys.size());
  for (const PolynomialQX& p : polys) out.push_back(dominant_monomial(p));
  return out;
}

std::uint64_t max_crossover(const std::vector<Dominant>& ds) {
  std::uint64_t c = 0;
  for (const Dominant& d : ds) c = std::max(c, d.crossover);
  return c;
}

HypothesisReport fail(std::string reason, std::size_t horizon) {
  HypothesisReport r;
  r.satisfied = false;
  r.failure_reason = std::move(reason);
  r.verified_horizon = horizon;
  return r;
}

}  // namespace

HypothesisReport check_odd_even_hypotheses(const FamilySpec& fam) {
  if (fam.has_denominators()) {
    return fail("family has denominator polynomials; the odd/even result "
                "needs all partial denominators equal to 1",
                0);
  }
  const std::vector<Dominant> dom = dominants(fam.f());
  const std::uint64_t crossover = max_crossover(dom);
  if (crossover > kMaxCrossover) {
    return fail("dominance crossover too large to verify", 0);
  }
  const std::size_t k = fam.k();
  const std::size_t horizon =
      std::max<std::size_t>(kMinHorizon, k * (crossover + 2));
  SequenceCheck seq =
      check_sequence("a_n", k, dom, 1, horizon,
                     [&](std::size_t n) { return numerator_at(fam, n); });
  if (!seq.ok) return fail(seq.reason, horizon);
  HypothesisReport r;
  r.satisfied = true;
  r.m = seq.step;
  r.La = seq.lead;
  r.verified_horizon = horizon;
  r.leading_tail_start_a = seq.tail_start;
  return r;
}

HypothesisReport check_denominator_hypotheses(const FamilySpec& fam) {
  if (!fam.has_denominators()) {
    return fail("family has no denominator polynomials", 0);
  }
  const std::vector<Dominant> dom_a = dominants(fam.f());
  const std::vector<Dominant> dom_b = dominants(*fam.g());
  for (const PolynomialQX& g : *fam.g()) {
    if (g.is_zero()) return fail("denominator polynomial g_s is zero", 0);
  }
  const std::uint64_t crossover =
      std::max(max_crossover(dom_a), max_crossover(dom_b));
  if (crossover > kMaxCrossover) {
    return fail("dominance crossover too large to verify", 0);
  }
  const std::size_t k = fam.k();
  const std::size_t horizon =
      std::max<std::size_t>(kMinHorizon, k * (crossover + 2));

  SequenceCheck sa =
      check_sequence("a_n", k, dom_a, 1, horizon,
                     [&](std::size_t n) { return numerator_at(fam, n); });
  if (!sa.ok) return fail(sa.reason, horizon);

  // b_0 may be overridden; the dominant-monomial argument covers only the
  // generated b_n, and the explicit expansion includes b_0 itself.
  SequenceCheck sb =
      check_sequence("b_n", k, dom_b, 0, horizon,
                     [&](std::size_t n) { return denominator_at(fam, n); });
  if (!sb.ok) return fail(sb.reason, horizon);

  HypothesisReport r;
  r.satisfied = true;
  r.a = sa.step;
  r.r1 = sa.offset;
  r.La = sa.lead;
  r.b = sb.step;
  r.r2 = sb.offset;
  r.Lb = sb.lead;
  r.verified_horizon = horizon;
  r.leading_tail_start_a = sa.tail_start;
  r.leading_tail_start_b = sb.tail_start;
  return r;
}

}  // namespace qcf
