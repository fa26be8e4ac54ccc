#include "qcf/classify.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcf/errors.hpp"

namespace qcf {

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::kParabolic: return "Parabolic";
    case MapKind::kElliptic: return "Elliptic";
    case MapKind::kLoxodromic: return "Loxodromic";
    case MapKind::kBoundaryIndeterminate: return "BoundaryIndeterminate";
  }
  return "?";
}

const char* to_string(Part p) {
  switch (p) {
    case Part::kFull: return "full";
    case Part::kEven: return "even";
    case Part::kOdd: return "odd";
  }
  return "?";
}

Part parse_part(std::string_view s) {
  if (s == "full") return Part::kFull;
  if (s == "even") return Part::kEven;
  if (s == "odd") return Part::kOdd;
  throw std::invalid_argument("part must be full, even or odd");
}

const char* to_string(TailFormula f) {
  switch (f) {
    case TailFormula::kOddEvenContraction: return "T4_contraction";
    case TailFormula::kBalancedDenominator: return "Tp2_equal_case";
    case TailFormula::kDenominatorContraction: return "Tp2_contraction_case";
  }
  return "?";
}

std::pair<cplx, cplx> fixed_points(cplx c) {
  if (c == cplx(0, 0)) throw DegenerateMapError();
  const cplx s = std::sqrt(1.0 + 4.0 * c);
  cplx x = (-1.0 + s) / 2.0;
  cplx y = (-1.0 - s) / 2.0;
  if (std::abs(1.0 + x) < std::abs(1.0 + y)) std::swap(x, y);
  return {x, y};
}

Classification classify_with_root(cplx c, cplx s, double boundary_tol) {
  if (c == cplx(0, 0)) throw DegenerateMapError();
  Classification out;
  out.x = (-1.0 + s) / 2.0;
  out.y = (-1.0 - s) / 2.0;
  double ax = std::abs(1.0 + out.x);
  double ay = std::abs(1.0 + out.y);
  if (ax < ay) {
    std::swap(out.x, out.y);
    std::swap(ax, ay);
  }

  const double para = std::abs(1.0 + 4.0 * c) / (1.0 + std::abs(4.0 * c));
  const double ell = (ax - ay) / (ax + ay);
  out.margin = std::min(para, ell);

  if (para <= boundary_tol) {
    out.kind = MapKind::kParabolic;
    out.y = out.x = cplx(-0.5, 0.0);
  } else if (ell <= boundary_tol) {
    out.kind = MapKind::kElliptic;
  } else if (para <= 10 * boundary_tol || ell <= 10 * boundary_tol) {
    out.kind = MapKind::kBoundaryIndeterminate;
  } else {
    out.kind = MapKind::kLoxodromic;
  }
  return out;
}

Classification classify_lft(cplx c, double boundary_tol) {
  if (c == cplx(0, 0)) throw DegenerateMapError();
  return classify_with_root(c, std::sqrt(1.0 + 4.0 * c), boundary_tol);
}

namespace {

cplx ipow(cplx q, std::int64_t e) {
  if (e < 0) return 1.0 / integer_power(q, static_cast<std::uint64_t>(-e));
  return integer_power(q, static_cast<std::uint64_t>(e));
}

}  // namespace

TailParameter tail_parameter(const FamilySpec& fam,
                             const HypothesisReport& report, Part part,
                             cplx q) {
  if (!(std::abs(q) > 1.0)) {
    throw OutOfDomainError("tail limits are defined only for |q| > 1");
  }
  if (!report.satisfied) {
    throw NotApplicableError("family hypotheses are not satisfied");
  }
  if (!fam.has_denominators()) {
    if (part == Part::kFull || !report.m) {
      throw NotApplicableError(
          "unit-denominator families have a tail limit only for the even and "
          "odd parts");
    }
    const cplx qm = ipow(q, *report.m);
    return {-1.0 / ((1.0 + qm) * (1.0 + 1.0 / qm)),
            TailFormula::kOddEvenContraction, q};
  }
  if (!report.a || !report.b || !report.r1 || !report.r2 || !report.La ||
      !report.Lb) {
    throw NotApplicableError("hypothesis report lacks denominator parameters");
  }
  const std::int64_t a = *report.a;
  const std::int64_t b = *report.b;
  if (2 * b == a) {
    if (part != Part::kFull) {
      throw NotApplicableError(
          "for 2b = a the tail limit is stated for the full fraction only");
    }
    const double la = report.La->convert_to<double>();
    const double lb = report.Lb->convert_to<double>();
    const std::int64_t e = b - *report.r1 + 2 * *report.r2;
    return {la / (lb * lb * ipow(q, e)), TailFormula::kBalancedDenominator, q};
  }
  if (2 * b < a) {
    if (part == Part::kFull) {
      throw NotApplicableError(
          "for 2b < a the tail limit is stated for the even and odd parts");
    }
    const cplx z = ipow(q, 2 * b - a);
    return {-z / ((1.0 + z) * (1.0 + z)), TailFormula::kDenominatorContraction,
            q};
  }
  throw NotApplicableError(
      "for 2b > a the unit-denominator elements tend to 0; the tail map "
      "degenerates");
}

}  // namespace qcf
