#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qcf/catalog.hpp"
#include "qcf/cfeval.hpp"
#include "qcf/errors.hpp"

using namespace qcf;
using cplx = std::complex<double>;
using oracle::Rational;
using S = ScaledComplex<double>;

namespace {

const double kQuarterLimit = (std::sqrt(2.0) - 1.0) / 2.0;

ElementStream<double> constant_stream(double a) {
  return generator_stream<double>(S(), [a](std::size_t) {
    return Element<double>{S(a), S(1.0)};
  });
}

double rel(cplx x, cplx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

ConvergenceStatus status_of(const ElementStream<double>& s, ConvergenceOptions o = {}) {
  return limit_estimate(s, o).status;
}

}  // namespace

TEST_CASE("approximants: worked examples") {
  const auto all = approximants(constant_stream(0.25), 3000);
  CHECK(all.size() == 3001);
  CHECK(std::abs(all.back().value.z - kQuarterLimit) < 1e-3);

  const auto eo1 = family_stream<double>(catalog_get("eo1").fam, cplx(1, 0));
  const auto first = approximants(eo1, 1);
  REQUIRE(first.size() == 2);
  CHECK(first[0].value.z == cplx(1, 0));
  CHECK(first[1].value.z == cplx(7, 0));

  const auto zeroth = approximants(eo1, 0);
  REQUIRE(zeroth.size() == 1);
  CHECK(zeroth[0].value.z == cplx(1, 0));
}

TEST_CASE("approximants: Q_n = 0 gives the point at infinity") {
  const auto s = list_stream<double>(0, {1, 1}, {0, 1});
  const auto v = approximants(s, 2);
  CHECK(v[0].value.z == cplx(0, 0));
  CHECK(v[1].value.infinite);
  CHECK_FALSE(v[2].value.infinite);
  CHECK(v[2].value.z == cplx(1, 0));  // 0 + 1/(0 + 1/1)
}

TEST_CASE("a zero partial numerator is reported") {
  const auto s = list_stream<double>(1, {1, 0, 1}, {1, 1, 1});
  CHECK_THROWS_AS(approximants(s, 3), ZeroElementError);
  CHECK(status_of(s) == ConvergenceStatus::kZeroElementHit);
  try {
    (void)s.at(2);
  } catch (const ZeroElementError& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("limit_estimate: worked examples") {
  const auto r = limit_estimate(constant_stream(0.25 * 0.96));
  CHECK(r.status == ConvergenceStatus::kConverged);
  CHECK(r.final_gap <= 1e-10);

  const auto quarter = limit_estimate(constant_stream(0.25), {1e-10, 8, 100000});
  CHECK(quarter.status == ConvergenceStatus::kConverged);
  CHECK(std::abs(quarter.value.z - kQuarterLimit) < 1e-4);

  const auto gg = limit_estimate(family_stream<double>(catalog_get("gg").fam, cplx(2, 0)));
  CHECK(gg.status == ConvergenceStatus::kConverged);
  CHECK_FALSE(gg.value.infinite);

  const auto eo2 = family_stream<double>(catalog_get("eo2").fam, cplx(-2, 0));
  CHECK(status_of(eo2, {1e-10, 8, 5000}) != ConvergenceStatus::kConverged);
}

TEST_CASE("limit_estimate: option validation") {
  const auto s = constant_stream(0.1);
  CHECK_THROWS_AS(limit_estimate(s, {0.0, 8, 100}), std::invalid_argument);
  CHECK_THROWS_AS(limit_estimate(s, {1e-10, 1, 100}), std::invalid_argument);
  CHECK_THROWS_AS(limit_estimate(s, {1e-10, 8, 8}), std::invalid_argument);
}

TEST_CASE("divergence evidence") {
  // Two limits: the full Rogers-Ramanujan fraction outside the disk.
  const auto rr = family_stream<double>(catalog_get("rr").fam, cplx(2, 0));
  CHECK(status_of(rr) == ConvergenceStatus::kDivergentOscillation);
  // Elliptic tail: approximants rotate forever.
  CHECK(status_of(constant_stream(-1.0)) == ConvergenceStatus::kDivergentOscillation);
  // Parabolic tail converges like 1/n: slow, never called divergent.
  CHECK(status_of(constant_stream(-0.25)) == ConvergenceStatus::kNotConvergedByN);
}

TEST_CASE("slow geometric convergence is not called divergent") {
  // |q| barely above 1: the gaps of each part shrink very slowly.
  const auto r = odd_even_reports(
      family_stream<double>(catalog_get("rr").fam, cplx(1, 0.1)), {1e-10, 8, 1500});
  CHECK(r.first.status != ConvergenceStatus::kDivergentOscillation);
  CHECK(r.second.status != ConvergenceStatus::kDivergentOscillation);
}

TEST_CASE("odd_even_reports") {
  const auto [odd, even] = odd_even_reports(constant_stream(0.2));
  CHECK(odd.status == ConvergenceStatus::kConverged);
  CHECK(even.status == ConvergenceStatus::kConverged);
  CHECK(std::abs(odd.value.z - even.value.z) < 1e-9);

  const auto eo1 = odd_even_reports(family_stream<double>(catalog_get("eo1").fam, cplx(2, 0)));
  CHECK(eo1.first.status == ConvergenceStatus::kConverged);
  CHECK(eo1.second.status == ConvergenceStatus::kConverged);

  // 1/K(1/x) at x = 0.3 has distinct odd and even limits.
  const auto rk = reciprocal(family_stream<double>(catalog_get("rr").fam, cplx(1 / 0.3, 0)));
  const auto [o, e] = odd_even_reports(rk);
  CHECK(o.status == ConvergenceStatus::kConverged);
  CHECK(e.status == ConvergenceStatus::kConverged);
  CHECK(std::abs(o.value.z - e.value.z) > 0.1);
}

TEST_CASE("reciprocal stream inverts every approximant") {
  const auto s = family_stream<double>(catalog_get("s1").fam, cplx(1.5, 0.5));
  const auto direct = approximants(s, 40);
  const auto inv = approximants(reciprocal(s), 41);
  for (std::size_t n = 0; n <= 40; ++n) {
    CHECK(rel(inv[n + 1].value.z, 1.0 / direct[n].value.z) < 1e-12);
  }
}

TEST_CASE("to_unit_denominators") {
  // 1 + 6/(2 + 2/3) = 13/4 = 1 + 3/(1 + (1/3)/1).
  const auto s = list_stream<double>(1, {6, 2}, {2, 3});
  const auto u = to_unit_denominators(s);
  CHECK(std::abs(u.at(1).a.value() - cplx(3, 0)) < 1e-15);
  CHECK(std::abs(u.at(2).a.value() - cplx(1.0 / 3, 0)) < 1e-15);
  CHECK(u.at(2).b.value() == cplx(1, 0));
  CHECK(std::abs(approximants(u, 2).back().value.z - 3.25) < 1e-15);
  CHECK(std::abs(approximants(s, 2).back().value.z - 3.25) < 1e-15);

  const auto unit = list_stream<double>(0.5, {1, 2, 3}, {1, 1, 1});
  const auto same = to_unit_denominators(unit);
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(same.at(n).a.value() == unit.at(n).a.value());
    CHECK(same.at(n).b.value() == cplx(1, 0));
  }

  const auto gg = to_unit_denominators(family_stream<double>(catalog_get("gg").fam, cplx(2, 0)));
  double prev = 1e300;
  for (std::size_t n = 2; n <= 60; ++n) {
    const double m = gg.at(n).a.abs_value();
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 1e-15);

  const auto pole = to_unit_denominators(list_stream<double>(1, {1, 1}, {1, 0}));
  CHECK_THROWS_AS(pole.at(2), PoleError);
  CHECK(status_of(pole, {1e-10, 2, 10}) == ConvergenceStatus::kPoleEncountered);
}

TEST_CASE("chordal distance") {
  using E = ExtendedValue<double>;
  const E inf = E::at_infinity();
  CHECK(chordal_distance(inf, inf) == 0.0);
  CHECK(chordal_distance(E{{0, 0}}, inf) == doctest::Approx(2.0));
  CHECK(chordal_distance(E{{1, 0}}, E{{-1, 0}}) == doctest::Approx(2.0));
  CHECK(chordal_distance(E{{1e300, 0}}, inf) < 1e-299);
  oracle::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const E x{g.polar(0, 10)}, y{g.polar(0, 10)}, z{g.polar(0, 10)};
    CHECK(chordal_distance(x, y) == doctest::Approx(chordal_distance(y, x)));
    CHECK(chordal_distance(x, z) <= chordal_distance(x, y) + chordal_distance(y, z) + 1e-15);
    CHECK(chordal_distance(x, y) <= 2.0);
  }
}

TEST_CASE("converged reports respect the tolerance") {
  oracle::Gen g(32);
  for (int i = 0; i < 50; ++i) {
    const double tol = std::pow(10.0, -g.integer(4, 12));
    const auto r = limit_estimate(constant_stream(g.uniform(-0.2, 2.0)), {tol, 8, 4000});
    if (r.status == ConvergenceStatus::kConverged) CHECK(r.final_gap <= tol);
  }
}

TEST_CASE("elements far outside the binary64 range") {
  // a_n = 3^n: by n = 1000 the elements are ~1e477.
  const auto rr = family_stream<double>(catalog_get("rr").fam, cplx(3, 0));
  const auto v = approximants(rr, 1500);
  const auto ld = approximants(family_stream<long double>(catalog_get("rr").fam, cplx(3, 0)), 1500);
  for (std::size_t n : {1000u, 1001u, 1499u, 1500u}) {
    REQUIRE_FALSE(v[n].value.infinite);
    CHECK(rel(v[n].value.z, to_complex_double<long double>(ld[n].value.z)) < 1e-12);
  }
  CHECK(rel(v[1500].value.z, v[1498].value.z) < 1e-12);
}

TEST_CASE("property: determinant identity under exact arithmetic") {
  oracle::Gen g(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto len = static_cast<std::size_t>(g.integer(1, 12));
    std::vector<Rational> a(len + 1), b(len + 1);
    b[0] = g.integer(-9, 9);
    for (std::size_t n = 1; n <= len; ++n) {
      a[n] = g.nonzero(9);
      b[n] = g.integer(-9, 9);
    }
    const auto pq = convergents(a, b);
    Rational prod = 1;
    for (std::size_t n = 1; n <= len; ++n) {
      prod *= a[n];
      const Rational det = pq[n].first * pq[n - 1].second - pq[n - 1].first * pq[n].second;
      CHECK(det == ((n - 1) % 2 == 0 ? prod : -prod));
    }
  }
}

TEST_CASE("property: convergents agree with backward evaluation") {
  oracle::Gen g(34);
  for (int trial = 0; trial < 100; ++trial) {
    const auto len = static_cast<std::size_t>(g.integer(1, 12));
    std::vector<Rational> a(len + 1), b(len + 1);
    b[0] = g.integer(-9, 9);
    for (std::size_t n = 1; n <= len; ++n) {
      a[n] = g.nonzero(9);
      b[n] = g.integer(-9, 9);
    }
    const auto pq = convergents(a, b);
    for (std::size_t n = 0; n <= len; ++n) {
      const auto ref = oracle::backward_value(a, b, n);
      if (!ref || pq[n].second == 0) continue;
      CHECK(pq[n].first / pq[n].second == *ref);
    }
  }
}

TEST_CASE("property: rescaled recurrence equals the naive recurrence") {
  oracle::Gen g(35);
  for (int trial = 0; trial < 200; ++trial) {
    const auto len = static_cast<std::size_t>(g.integer(1, 50));
    std::vector<cplx> a(len + 1), b(len + 1), la, lb;
    b[0] = g.polar(0.5, 2);
    for (std::size_t n = 1; n <= len; ++n) {
      a[n] = g.polar(0.5, 2);
      b[n] = g.polar(0.5, 2);
      la.push_back(a[n]);
      lb.push_back(b[n]);
    }
    const auto ref = oracle::naive_approximants(a, b);
    const auto got = approximants(list_stream<double>(b[0], la, lb), len);
    for (std::size_t n = 0; n <= len; ++n) {
      if (!std::isfinite(std::abs(ref[n])) || std::abs(ref[n]) > 1e8) continue;
      CHECK(rel(got[n].value.z, ref[n]) < 1e-12 * std::max(1.0, std::abs(ref[n])));
    }
  }
}

TEST_CASE("property: unit-denominator form preserves every approximant") {
  oracle::Gen g(36);
  for (int trial = 0; trial < 200; ++trial) {
    const auto len = static_cast<std::size_t>(g.integer(1, 40));
    std::vector<cplx> a, b;
    for (std::size_t n = 0; n < len; ++n) {
      a.push_back(g.polar(0.5, 2));
      b.push_back(g.polar(0.5, 2));
    }
    const auto s = list_stream<double>(g.polar(0.5, 2), a, b);
    const auto x = approximants(s, len);
    const auto y = approximants(to_unit_denominators(s), len);
    for (std::size_t n = 0; n <= len; ++n) {
      if (x[n].value.infinite || std::abs(x[n].value.z) > 1e6) continue;
      CHECK(rel(y[n].value.z, x[n].value.z) < 1e-12 * std::max(1.0, std::abs(x[n].value.z)) * 10);
    }
  }
}

TEST_CASE("property: conjugate q gives conjugate approximants") {
  oracle::Gen g(37);
  for (const auto& name : catalog_names()) {
    const auto fam = catalog_get(name).fam;
    for (int i = 0; i < 10; ++i) {
      const cplx q = g.polar(1.05, 4);
      const auto x = approximants(family_stream<double>(fam, q), 60);
      const auto y = approximants(family_stream<double>(fam, std::conj(q)), 60);
      for (std::size_t n = 0; n <= 60; ++n) {
        if (x[n].value.infinite) {
          CHECK(y[n].value.infinite);
          continue;
        }
        CHECK(rel(y[n].value.z, std::conj(x[n].value.z)) < 1e-12);
      }
    }
  }
}
