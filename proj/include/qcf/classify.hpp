#pragma once

// Fixed-point geometry of the tail map t(w) = c/(1+w) and the limits c of
// the (contracted) elements for the two family types.

#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>

#include "qcf/cfeval.hpp"
#include "qcf/qpoly.hpp"
#include "qcf/stream.hpp"

namespace qcf {

using cplx = std::complex<double>;

enum class MapKind { kParabolic, kElliptic, kLoxodromic, kBoundaryIndeterminate };

const char* to_string(MapKind k);

struct Classification {
  MapKind kind = MapKind::kBoundaryIndeterminate;
  cplx x;  // attractive fixed point when loxodromic (|1+x| >= |1+y|)
  cplx y;  // repulsive fixed point
  // Smallest relative distance of the two deciding quantities,
  // |1+4c|/(1+|4c|) and ||1+x|-|1+y||/(|1+x|+|1+y|), from zero.
  double margin = 0;
};

// Roots of w^2 + w - c = 0 ordered so that |1+x| >= |1+y|.
// Throws DegenerateMapError for c = 0.
std::pair<cplx, cplx> fixed_points(cplx c);

constexpr double kDefaultBoundaryTol = 1e-12;

Classification classify_lft(cplx c, double boundary_tol = kDefaultBoundaryTol);

// Same decision, taking s (either square root of 1 + 4c) explicitly. The
// result does not depend on which root is passed.
Classification classify_with_root(cplx c, cplx s,
                                  double boundary_tol = kDefaultBoundaryTol);

enum class Part { kFull, kEven, kOdd };

const char* to_string(Part p);
Part parse_part(std::string_view s);

enum class TailFormula {
  kOddEvenContraction,   // unit-denominator family, even/odd part
  kBalancedDenominator,  // 2b = a, full fraction
  kDenominatorContraction,  // 2b < a, even/odd part
};

const char* to_string(TailFormula f);

struct TailParameter {
  cplx c;
  TailFormula formula;
  cplx q;
};

// Analytic limit of the unit-denominator elements of the chosen part, in the
// all-plus sign convention of the contraction streams:
//   unit-denominator family, even/odd:  c = -1/((1+q^m)(1+q^-m))
//   2b = a, full:                       c = La/(Lb^2 q^(b-r1+2r2))
//   2b < a, even/odd:                   c = -q^(2b-a)/(1+q^(2b-a))^2
// Throws OutOfDomainError for |q| <= 1 and NotApplicableError when the
// (family, part) pair has no such limit.
TailParameter tail_parameter(const FamilySpec& fam,
                             const HypothesisReport& report, Part part,
                             cplx q);

// True iff |a_n| <= 1/4 for every n in [n0, n1] (stopping early at the end
// of a finite stream). The stream must have unit partial denominators.
template <class R>
bool worpitzky_check(const ElementStream<R>& s, std::size_t n0,
                     std::size_t n1) {
  if (n0 < 1 || n1 <= n0) {
    throw std::invalid_argument("worpitzky_check needs 1 <= n0 < n1");
  }
  if (auto len = s.length()) n1 = std::min(n1, *len);
  for (std::size_t n = n0; n <= n1; ++n) {
    const Element<R> e = s.at(n);
    const R one(1);
    if (!(e.b.value() == make_complex(one, R(0)))) {
      throw std::invalid_argument(
          "worpitzky_check needs unit partial denominators");
    }
    // |a| <= 1/4 with a small relative slack for rounding in the element
    // transformation.
    if (e.a.log2_abs() > -2.0 + 1e-12) return false;
  }
  return true;
}

}  // namespace qcf
