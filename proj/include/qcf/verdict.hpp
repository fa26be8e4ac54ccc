#pragma once

// Theoretical convergence verdicts for a family at a point |q| > 1. A verdict
// never asserts divergence: outside the proven regions it says
// Exceptional, HypothesesFail or Indeterminate.

#include <complex>
#include <optional>
#include <string>

#include <json.hpp>

#include "qcf/classify.hpp"
#include "qcf/qpoly.hpp"

namespace qcf {

enum class Conclusion {
  kConvergesFull,
  kConvergesOddEven,
  kExceptional,
  kOutOfDomain,
  kHypothesesFail,
  kIndeterminate,
};

enum class TheoremUsed {
  kOddEvenParts,          // unit denominators, constant degree step m
  kDenominatorDominant,   // 2b > a
  kBalanced,              // 2b = a
  kNumeratorDominant,     // 2b < a
  kWorpitzky,
  kNone,
};

const char* to_string(Conclusion c);
const char* to_string(TheoremUsed t);

struct Verdict {
  Conclusion conclusion = Conclusion::kIndeterminate;
  TheoremUsed theorem = TheoremUsed::kNone;
  std::string reason;
  std::optional<std::string> exceptional_set;
  std::optional<Classification> classification;
  std::optional<TailParameter> tail;
};

// Tolerances of the exceptional-set membership test for 2b = a.
constexpr double kExceptionalImagTol = 1e-12;
constexpr double kExceptionalEndpointTol = 1e-12;

// Tail window of the Worpitzky fallback.
constexpr std::size_t kWorpitzkyFirst = 32;
constexpr std::size_t kWorpitzkyLast = 512;

Verdict verdict_odd_even_family(const FamilySpec& fam,
                                const HypothesisReport& report, cplx q);
Verdict verdict_odd_even_family(const FamilySpec& fam, cplx q);

Verdict verdict_denominator_family(const FamilySpec& fam,
                                   const HypothesisReport& report, cplx q);
Verdict verdict_denominator_family(const FamilySpec& fam, cplx q);

// Hypotheses matching the family type.
HypothesisReport check_hypotheses(const FamilySpec& fam);

// Dispatches on the family type; when the hypotheses fail, tries the
// Worpitzky test on the unit-denominator form over n in
// [kWorpitzkyFirst, kWorpitzkyLast].
Verdict verdict(const FamilySpec& fam, const HypothesisReport& report, cplx q);
Verdict verdict(const FamilySpec& fam, cplx q);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json classification_to_json(const Classification& c);

}  // namespace qcf
