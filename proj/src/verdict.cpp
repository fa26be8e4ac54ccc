#include "qcf/verdict.hpp"

#include <cmath>
#include <sstream>

#include "qcf/errors.hpp"
#include "qcf/io.hpp"
#include "qcf/stream.hpp"

namespace qcf {

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::kConvergesFull: return "ConvergesFull";
    case Conclusion::kConvergesOddEven: return "ConvergesOddEven";
    case Conclusion::kExceptional: return "Exceptional";
    case Conclusion::kOutOfDomain: return "OutOfDomain";
    case Conclusion::kHypothesesFail: return "HypothesesFail";
    case Conclusion::kIndeterminate: return "Indeterminate";
  }
  return "?";
}

// Wire names are fixed by the JSON/CSV formats.
const char* to_string(TheoremUsed t) {
  switch (t) {
    case TheoremUsed::kOddEvenParts: return "T4";
    case TheoremUsed::kDenominatorDominant: return "Tp2_case_2b_gt_a";
    case TheoremUsed::kBalanced: return "Tp2_case_2b_eq_a";
    case TheoremUsed::kNumeratorDominant: return "Tp2_case_2b_lt_a";
    case TheoremUsed::kWorpitzky: return "Worpitzky";
    case TheoremUsed::kNone: return "None";
  }
  return "?";
}

namespace {

bool in_domain(cplx q) { return std::abs(q) > 1.0; }

Verdict out_of_domain() {
  Verdict v;
  v.conclusion = Conclusion::kOutOfDomain;
  v.reason = "|q| <= 1: the convergence results cover only |q| > 1";
  return v;
}

Verdict hypotheses_fail(const HypothesisReport& r, TheoremUsed t) {
  Verdict v;
  v.conclusion = Conclusion::kHypothesesFail;
  v.theorem = t;
  v.reason = "hypotheses fail: " + r.failure_reason.value_or("unspecified");
  return v;
}

// Attaches the tail classification; a non-loxodromic result at |q| > 1 can
// only come from rounding, since the analytic map is loxodromic there.
Verdict with_tail(Verdict v, const TailParameter& tail) {
  v.tail = tail;
  v.classification = classify_lft(tail.c);
  if (v.classification->kind != MapKind::kLoxodromic) {
    v.reason = std::string("tail map classified ") +
               to_string(v.classification->kind) + " at c = " +
               format_complex(tail.c) +
               " (within rounding of the decision boundary); expected "
               "loxodromic for |q| > 1";
    v.conclusion = Conclusion::kIndeterminate;
  }
  return v;
}

cplx ipow(cplx q, std::int64_t e) {
  if (e < 0) return 1.0 / integer_power(q, static_cast<std::uint64_t>(-e));
  return integer_power(q, static_cast<std::uint64_t>(e));
}

// Description of {q : |q| > 1, lambda * q^e in [-4, 0)}.
std::string exceptional_set_text(double lambda, std::int64_t e) {
  if (e == 1) {
    const double bound = -4.0 / lambda;
    if (lambda > 0) {
      // q in [-4/lambda, 0), cut by |q| > 1.
      return "[" + format_real(bound) + ", -1)";
    }
    return "(1, " + format_real(bound) + "]";
  }
  if (e == 0) return "{|q| > 1}";
  std::ostringstream os;
  os << "{q : |q| > 1, " << format_real(lambda) << "*q^" << e
     << " in [-4, 0)}";
  return os.str();
}

}  // namespace

HypothesisReport check_hypotheses(const FamilySpec& fam) {
  return fam.has_denominators() ? check_denominator_hypotheses(fam)
                                : check_odd_even_hypotheses(fam);
}

Verdict verdict_odd_even_family(const FamilySpec& fam,
                                const HypothesisReport& report, cplx q) {
  if (!in_domain(q)) return out_of_domain();
  if (!report.satisfied) return hypotheses_fail(report, TheoremUsed::kOddEvenParts);
  Verdict v;
  v.conclusion = Conclusion::kConvergesOddEven;
  v.theorem = TheoremUsed::kOddEvenParts;
  v.reason = "constant degree step m = " + std::to_string(*report.m) +
             " and eventually constant leading coefficient; the even and odd "
             "parts are limit 1-periodic with a loxodromic tail map";
  return with_tail(std::move(v),
                   tail_parameter(fam, report, Part::kEven, q));
}

Verdict verdict_odd_even_family(const FamilySpec& fam, cplx q) {
  if (!in_domain(q)) return out_of_domain();
  return verdict_odd_even_family(fam, check_odd_even_hypotheses(fam), q);
}

Verdict verdict_denominator_family(const FamilySpec& fam,
                                   const HypothesisReport& report, cplx q) {
  if (!in_domain(q)) return out_of_domain();
  if (!report.satisfied) return hypotheses_fail(report, TheoremUsed::kNone);
  const std::int64_t a = *report.a;
  const std::int64_t b = *report.b;
  Verdict v;
  if (2 * b > a) {
    v.conclusion = Conclusion::kConvergesFull;
    v.theorem = TheoremUsed::kDenominatorDominant;
    v.reason = "2b > a: the unit-denominator elements a_n/(b_n b_{n-1}) tend "
               "to 0, so a tail satisfies the Worpitzky bound";
    return v;
  }
  if (2 * b < a) {
    v.conclusion = Conclusion::kConvergesOddEven;
    v.theorem = TheoremUsed::kNumeratorDominant;
    v.reason = "2b < a: the even and odd parts are limit 1-periodic with a "
               "loxodromic tail map";
    return with_tail(std::move(v),
                     tail_parameter(fam, report, Part::kEven, q));
  }

  v.theorem = TheoremUsed::kBalanced;
  const double la = report.La->convert_to<double>();
  const double lb = report.Lb->convert_to<double>();
  const std::int64_t e = b - *report.r1 + 2 * *report.r2;
  const double lambda = lb * lb / la;
  const cplx z = lambda * ipow(q, e);
  const bool real_axis =
      std::abs(z.imag()) <= kExceptionalImagTol * (1.0 + std::abs(z.real()));
  const bool in_interval =
      z.real() >= -4.0 - 4.0 * kExceptionalEndpointTol && z.real() < 0.0;
  if (real_axis && in_interval) {
    v.conclusion = Conclusion::kExceptional;
    v.exceptional_set = exceptional_set_text(lambda, e);
    v.reason = "2b = a and (Lb^2/La) q^(b-r1+2r2) = " + format_complex(z) +
               " lies in [-4, 0): the tail map is elliptic or parabolic, so "
               "convergence is not guaranteed (the parabolic endpoint -4 is "
               "included in the exceptional set)";
    return v;
  }
  v.conclusion = Conclusion::kConvergesFull;
  v.reason = "2b = a and (Lb^2/La) q^(b-r1+2r2) = " + format_complex(z) +
             " lies outside [-4, 0): the tail map is loxodromic";
  return with_tail(std::move(v), tail_parameter(fam, report, Part::kFull, q));
}

Verdict verdict_denominator_family(const FamilySpec& fam, cplx q) {
  if (!in_domain(q)) return out_of_domain();
  return verdict_denominator_family(fam, check_denominator_hypotheses(fam), q);
}

Verdict verdict(const FamilySpec& fam, const HypothesisReport& report, cplx q) {
  Verdict v = fam.has_denominators()
                  ? verdict_denominator_family(fam, report, q)
                  : verdict_odd_even_family(fam, report, q);
  if (v.conclusion != Conclusion::kHypothesesFail) return v;

  try {
    auto unit = to_unit_denominators(family_stream<double>(fam, q));
    if (worpitzky_check(unit, kWorpitzkyFirst, kWorpitzkyLast)) {
      Verdict w;
      w.conclusion = Conclusion::kConvergesFull;
      w.theorem = TheoremUsed::kWorpitzky;
      w.reason = v.reason + "; fallback: |a_n| <= 1/4 in unit-denominator "
                 "form for n in [" + std::to_string(kWorpitzkyFirst) + ", " +
                 std::to_string(kWorpitzkyLast) +
                 "], treated as a convergent tail (heuristic window)";
      return w;
    }
    v.reason += "; Worpitzky fallback failed on n in [" +
                std::to_string(kWorpitzkyFirst) + ", " +
                std::to_string(kWorpitzkyLast) + "]";
  } catch (const std::exception& e) {
    v.reason += std::string("; Worpitzky fallback not applicable: ") + e.what();
  }
  return v;
}

Verdict verdict(const FamilySpec& fam, cplx q) {
  if (!in_domain(q)) return out_of_domain();
  return verdict(fam, check_hypotheses(fam), q);
}

nlohmann::json classification_to_json(const Classification& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  j["x"] = format_complex(c.x);
  j["y"] = format_complex(c.y);
  j["margin"] = c.margin;
  return j;
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["conclusion"] = to_string(v.conclusion);
  j["theorem_used"] = to_string(v.theorem);
  j["reason"] = v.reason;
  j["exceptional_set"] = v.exceptional_set ? nlohmann::json(*v.exceptional_set)
                                           : nlohmann::json(nullptr);
  j["classification"] = v.classification
                            ? classification_to_json(*v.classification)
                            : nlohmann::json(nullptr);
  if (v.tail) {
    j["tail_parameter"] = {{"c", format_complex(v.tail->c)},
                           {"formula_used", to_string(v.tail->formula)},
                           {"q", format_complex(v.tail->q)}};
  } else {
    j["tail_parameter"] = nullptr;
  }
  return j;
}

}  // namespace qcf
