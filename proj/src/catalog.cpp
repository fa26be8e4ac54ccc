#include "qcf/catalog.hpp"

#include "qcf/errors.hpp"

namespace qcf {

namespace {

using T = std::vector<std::array<std::int64_t, 3>>;

PolynomialQX poly(const T& triples) { return PolynomialQX::from_triples(triples); }

CatalogEntry make(std::string_view name) {
  if (name == "rr") {
    return {"rr", FamilySpec(1, {poly({{1, 1, 1}})}),
            "Rogers-Ramanujan K(q) = 1 + q/1 + q^2/1 + q^3/1 + ...; "
            "a_n = q^n via f_1 = q*x"};
  }
  if (name == "s1") {
    return {"s1",
            FamilySpec(2, {poly({{1, 1, 2}}), poly({{1, 1, 1}, {1, 2, 2}})}),
            "Ramanujan-Selberg S1(q) = 1 + q/1 + (q+q^2)/1 + q^3/1 + "
            "(q^2+q^4)/1 + ...; a_{2n+1} = q^{2n+1}, a_{2n+2} = "
            "q^{n+1} + q^{2n+2}. Only four terms are displayed at the source; "
            "the continuation is pinned by tests"};
  }
  if (name == "s2") {
    return {"s2",
            FamilySpec(2, {poly({{1, 1, 2}, {1, 2, 4}}), poly({{1, 4, 4}})}),
            "Ramanujan-Selberg S2(q) = 1 + (q+q^2)/1 + q^4/1 + (q^3+q^6)/1 + "
            "q^8/1 + ...; a_{2n+1} = q^{2n+1} + q^{4n+2}, a_{2n+2} = "
            "q^{4n+4}. Continuation beyond four terms pinned by tests"};
  }
  if (name == "s3") {
    return {"s3", FamilySpec(1, {poly({{1, 1, 1}, {1, 2, 2}})}),
            "Ramanujan-Selberg S3(q) = 1 + (q+q^2)/1 + (q^2+q^4)/1 + ...; "
            "a_n = q^n + q^{2n}"};
  }
  if (name == "gg") {
    return {"gg",
            FamilySpec(1, {poly({{1, 2, 2}})},
                       std::vector<PolynomialQX>{poly({{1, 0, 0}, {1, 1, 2}})},
                       poly({{1, 0, 0}, {1, 1, 0}})),
            "Gollnitz-Gordon GG(q) = 1+q + q^2/(1+q^3) + q^4/(1+q^5) + ...; "
            "a_n = q^{2n}, b_n = 1 + q^{2n+1}"};
  }
  if (name == "eo1") {
    return {"eo1",
            FamilySpec(4,
                       {poly({{1, 1, 4}, {3, 1, 3}, {2, 1, 2}}),
                        poly({{1, 2, 4}, {2, 2, 3}, {7, 1, 2}}),
                        poly({{1, 3, 4}, {5, 2, 3}, {2, 3, 2}}),
                        poly({{1, 4, 4}, {7, 3, 3}, {3, 1, 2}, {2, 0, 1}})}),
            "period-4 unit-denominator family: 1 + 6q/1 + (3q^2+7q)/1 + "
            "(3q^3+5q^2)/1 + (q^4+7q^3+3q+2)/1 + ...; odd and even parts "
            "converge for |q| > 1"};
  }
  if (name == "eo2") {
    // f_4 carries 2x^2 so that a_4 = q^8+7q^6+3q^2+2 and
    // a_8 = q^16+7q^12+3q^6+2q^2 as displayed.
    return {"eo2",
            FamilySpec(4,
                       {poly({{1, 2, 8}, {3, 2, 6}, {2, 2, 4}}),
                        poly({{1, 4, 8}, {2, 4, 6}, {7, 2, 4}}),
                        poly({{1, 6, 8}, {5, 4, 6}, {2, 6, 4}}),
                        poly({{1, 8, 8}, {7, 6, 6}, {3, 2, 4}, {2, 0, 2}})},
                       std::vector<PolynomialQX>{
                           poly({{1, 1, 4}, {1, 0, 1}, {1, 0, 0}}),
                           poly({{1, 2, 4}, {1, 0, 2}, {1, 0, 0}}),
                           poly({{1, 3, 4}, {1, 0, 2}, {1, 0, 0}}),
                           poly({{1, 4, 4}, {1, 0, 3}, {1, 0, 0}})}),
            "period-4 family with polynomial denominators: q+2 + "
            "6q^2/(q^2+2) + (3q^4+7q^2)/(q^3+2) + ...; a = 2, b = 1, "
            "r1 = 2, r2 = 1, La = Lb = 1; converges for |q| > 1 except "
            "possibly on [-4, -1)"};
  }
  throw UnknownNameError("unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"rr",  "s1",  "s2", "s3",
                                                 "gg",  "eo1", "eo2"};
  return names;
}

CatalogEntry catalog_get(std::string_view name) { return make(name); }

}  // namespace qcf
