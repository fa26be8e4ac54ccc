#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qcf/catalog.hpp"
#include "qcf/cfeval.hpp"
#include "qcf/classify.hpp"
#include "qcf/contract.hpp"
#include "qcf/errors.hpp"

using namespace qcf;

namespace {

bool close(cplx x, cplx y, double tol = 1e-14) { return std::abs(x - y) <= tol * (1 + std::abs(y)); }

PolynomialQX P(std::vector<std::array<std::int64_t, 3>> t) { return PolynomialQX::from_triples(t); }

// a_n = q^(4n-3), b_n = q^(n+1) + 1: a = 4, b = 1, so 2b - a = -2.
FamilySpec numerator_dominant_family() {
  return FamilySpec(1, {P({{1, 1, 4}})}, std::vector{P({{1, 1, 1}, {1, 0, 0}})});
}

// Unit-denominator element of the chosen part, far down the stream.
cplx empirical_tail(const FamilySpec& fam, Part part, cplx q, std::size_t n) {
  auto s = family_stream<double>(fam, q);
  if (part == Part::kEven) s = even_part(std::move(s));
  if (part == Part::kOdd) s = odd_part(std::move(s));
  return to_unit_denominators(std::move(s)).at(n).a.value();
}

MapKind from_oracle(oracle::Kind k) {
  switch (k) {
    case oracle::Kind::kParabolic: return MapKind::kParabolic;
    case oracle::Kind::kElliptic: return MapKind::kElliptic;
    case oracle::Kind::kLoxodromic: return MapKind::kLoxodromic;
  }
  return MapKind::kBoundaryIndeterminate;
}

}  // namespace

TEST_CASE("fixed points") {
  auto [x, y] = fixed_points(2.0);
  CHECK(close(x, 1.0));
  CHECK(close(y, -2.0));

  std::tie(x, y) = fixed_points(-0.25);
  CHECK(close(x, -0.5));
  CHECK(close(y, -0.5));

  std::tie(x, y) = fixed_points(-1.0);
  const cplx r1(-0.5, std::sqrt(3.0) / 2), r2(-0.5, -std::sqrt(3.0) / 2);
  CHECK(((close(x, r1) && close(y, r2)) || (close(x, r2) && close(y, r1))));
  CHECK(std::abs(1.0 + x) == doctest::Approx(1.0));
  CHECK(std::abs(1.0 + y) == doctest::Approx(1.0));

  CHECK_THROWS_AS(fixed_points(0.0), DegenerateMapError);
  CHECK_THROWS_AS(classify_lft(0.0), DegenerateMapError);
}

TEST_CASE("classification examples") {
  CHECK(classify_lft(-0.25).kind == MapKind::kParabolic);
  for (double c : {-0.3, -1.0, -5.0}) CHECK(classify_lft(c).kind == MapKind::kElliptic);
  for (cplx c : {cplx(2), cplx(0, 1), cplx(-0.2), cplx(0.25)}) {
    CHECK(classify_lft(c).kind == MapKind::kLoxodromic);
  }
  const auto p = classify_lft(-0.25);
  CHECK(p.x == p.y);
  CHECK(p.margin == 0.0);
}

TEST_CASE("boundary band") {
  // Just outside the parabolic tolerance but inside ten times it.
  const double tol = 1e-12;
  const auto near = classify_lft(-0.25 + 3e-12, tol);
  CHECK(near.kind == MapKind::kBoundaryIndeterminate);
  CHECK(classify_lft(-0.25 + 1e-9, tol).kind == MapKind::kLoxodromic);
  CHECK(classify_lft(-0.25 - 1e-9, tol).kind == MapKind::kElliptic);
  CHECK(classify_lft(-0.25 + 1e-9, 1e-6).kind == MapKind::kParabolic);
  // Slightly complex c near the elliptic ray.
  CHECK(classify_lft(cplx(-1, 1e-20)).kind == MapKind::kElliptic);
}

TEST_CASE("property: fixed-point residual") {
  oracle::Gen g(51);
  for (int i = 0; i < 1000; ++i) {
    const cplx c = std::polar(std::pow(10.0, g.uniform(-3, 3)), g.uniform(-M_PI, M_PI));
    const auto [x, y] = fixed_points(c);
    CHECK(std::abs(c / (1.0 + x) - x) <= 1e-12 * (1 + std::abs(x)));
    CHECK(std::abs(c / (1.0 + y) - y) <= 1e-12 * (1 + std::abs(y)));
    CHECK(std::abs(1.0 + x) >= std::abs(1.0 + y));
  }
}

TEST_CASE("property: trichotomy agrees with the trace oracle") {
  oracle::Gen g(52);
  int disagreements = 0, boundary = 0;
  for (int i = 0; i < 1000; ++i) {
    cplx c;
    switch (i % 3) {
      case 0: c = std::polar(std::pow(10.0, g.uniform(-3, 3)), g.uniform(-M_PI, M_PI)); break;
      case 1: c = g.uniform(-10, 10); break;
      default: c = cplx(g.uniform(-10, 0), 0.0); break;
    }
    if (c == cplx(0)) continue;
    const auto got = classify_lft(c);
    if (got.kind == MapKind::kBoundaryIndeterminate) {
      ++boundary;
      continue;
    }
    if (got.kind != from_oracle(oracle::trace_kind(c))) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(boundary < 10);
}

TEST_CASE("property: real-line law") {
  oracle::Gen g(53);
  for (int i = 0; i < 1000; ++i) {
    const double c = g.uniform(-20, 20);
    if (c == 0 || std::abs(c + 0.25) < 1e-9) continue;
    const MapKind k = classify_lft(c).kind;
    CHECK(k == (c < -0.25 ? MapKind::kElliptic : MapKind::kLoxodromic));
  }
  CHECK(classify_lft(-0.25).kind == MapKind::kParabolic);
}

TEST_CASE("property: either square root gives the same classification") {
  oracle::Gen g(54);
  for (int i = 0; i < 1000; ++i) {
    const cplx c = i % 2 ? g.polar(1e-3, 1e3) : cplx(g.uniform(-5, 5), 0);
    if (c == cplx(0)) continue;
    const cplx s = std::sqrt(1.0 + 4.0 * c);
    const auto u = classify_with_root(c, s);
    const auto v = classify_with_root(c, -s);
    CHECK(u.kind == v.kind);
    CHECK(u.margin == doctest::Approx(v.margin));
    if (u.kind == MapKind::kLoxodromic) {
      CHECK(close(u.x, v.x, 1e-12));
      CHECK(close(u.y, v.y, 1e-12));
      CHECK(std::abs(1.0 + u.x) > std::abs(1.0 + u.y));
    }
  }
}

TEST_CASE("tail parameter examples") {
  const auto eo1 = catalog_get("eo1").fam;
  const auto t1 = tail_parameter(eo1, check_odd_even_hypotheses(eo1), Part::kEven, 2.0);
  CHECK(close(t1.c, -2.0 / 9.0));
  CHECK(t1.formula == TailFormula::kOddEvenContraction);
  CHECK(std::string(to_string(t1.formula)) == "T4_contraction");

  const auto eo2 = catalog_get("eo2").fam;
  const auto t2 = tail_parameter(eo2, check_denominator_hypotheses(eo2), Part::kFull, 2.0);
  CHECK(close(t2.c, 0.5));
  CHECK(std::string(to_string(t2.formula)) == "Tp2_equal_case");

  const auto nd = numerator_dominant_family();
  const auto rep = check_denominator_hypotheses(nd);
  REQUIRE(rep.satisfied);
  REQUIRE(2 * *rep.b - *rep.a == -2);
  const auto t3 = tail_parameter(nd, rep, Part::kEven, 2.0);
  CHECK(close(t3.c, -0.16));
  CHECK(std::string(to_string(t3.formula)) == "Tp2_contraction_case");
}

TEST_CASE("tail parameter errors") {
  const auto eo1 = catalog_get("eo1").fam;
  const auto r1 = check_odd_even_hypotheses(eo1);
  CHECK_THROWS_AS(tail_parameter(eo1, r1, Part::kEven, 0.5), OutOfDomainError);
  CHECK_THROWS_AS(tail_parameter(eo1, r1, Part::kEven, cplx(0, 1)), OutOfDomainError);
  CHECK_THROWS_AS(tail_parameter(eo1, r1, Part::kFull, 2.0), NotApplicableError);

  const auto gg = catalog_get("gg").fam;
  CHECK_THROWS_AS(tail_parameter(gg, check_denominator_hypotheses(gg), Part::kFull, 2.0),
                  NotApplicableError);
  const auto eo2 = catalog_get("eo2").fam;
  CHECK_THROWS_AS(tail_parameter(eo2, check_denominator_hypotheses(eo2), Part::kEven, 2.0),
                  NotApplicableError);
  const auto nd = numerator_dominant_family();
  CHECK_THROWS_AS(tail_parameter(nd, check_denominator_hypotheses(nd), Part::kFull, 2.0),
                  NotApplicableError);
  HypothesisReport failed;
  CHECK_THROWS_AS(tail_parameter(eo1, failed, Part::kEven, 2.0), NotApplicableError);
}

TEST_CASE("tail parameters match the contracted elements numerically") {
  const auto eo1 = catalog_get("eo1").fam;
  const auto r1 = check_odd_even_hypotheses(eo1);
  for (cplx q : {cplx(2), cplx(-3), cplx(1, 1)}) {
    for (Part part : {Part::kEven, Part::kOdd}) {
      const cplx c = tail_parameter(eo1, r1, part, q).c;
      CHECK(std::abs(empirical_tail(eo1, part, q, 100) - c) <= 1e-6);
      CHECK(std::abs(c + 1.0 / ((1.0 + q) * (1.0 + 1.0 / q))) < 1e-15);
    }
  }
  for (const char* name : {"rr", "s1", "s2", "s3"}) {
    const auto fam = catalog_get(name).fam;
    const auto rep = check_odd_even_hypotheses(fam);
    REQUIRE(rep.satisfied);
    const cplx q(1.5, -1.2);
    for (Part part : {Part::kEven, Part::kOdd}) {
      INFO(name, " ", to_string(part));
      CHECK(std::abs(empirical_tail(fam, part, q, 150) - tail_parameter(fam, rep, part, q).c) <= 1e-6);
    }
  }

  const auto eo2 = catalog_get("eo2").fam;
  const auto r2 = check_denominator_hypotheses(eo2);
  for (cplx q : {cplx(2), cplx(0, 3), cplx(-5)}) {
    CHECK(std::abs(empirical_tail(eo2, Part::kFull, q, 400) -
                   tail_parameter(eo2, r2, Part::kFull, q).c) <= 1e-6);
  }

  const auto nd = numerator_dominant_family();
  const auto r3 = check_denominator_hypotheses(nd);
  for (cplx q : {cplx(2), cplx(-1.5, 1)}) {
    for (Part part : {Part::kEven, Part::kOdd}) {
      CHECK(std::abs(empirical_tail(nd, part, q, 100) - tail_parameter(nd, r3, part, q).c) <= 1e-6);
    }
  }
}

TEST_CASE("worpitzky_check") {
  using S = ScaledComplex<double>;
  auto constant = [](double a) {
    return generator_stream<double>(S(), [a](std::size_t) { return Element<double>{S(a), S(1.0)}; });
  };
  CHECK(worpitzky_check(constant(0.25), 1, 100));
  CHECK_FALSE(worpitzky_check(constant(0.3), 1, 100));
  const auto gg = to_unit_denominators(family_stream<double>(catalog_get("gg").fam, 2.0));
  CHECK(worpitzky_check(gg, 4, 500));
  CHECK_THROWS_AS(worpitzky_check(constant(0.1), 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(worpitzky_check(constant(0.1), 5, 5), std::invalid_argument);
  const auto non_unit = list_stream<double>(0, {0.1, 0.1}, {2, 2});
  CHECK_THROWS_AS(worpitzky_check(non_unit, 1, 2), std::invalid_argument);
  // A finite stream is checked up to its end.
  CHECK(worpitzky_check(list_stream<double>(0, {0.1, 0.2}, {1, 1}), 1, 100));
}
