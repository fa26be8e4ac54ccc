#include "qcf/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <system_error>

#include "qcf/errors.hpp"

namespace qcf {

namespace {

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Splits at the sign that separates real and imaginary parts, skipping signs
// that belong to an exponent ("1e-3+2i").
std::size_t split_position(std::string_view s) {
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      return i;
    }
  }
  return std::string_view::npos;
}

double imaginary_coefficient(std::string_view s, std::string_view whole) {
  // s excludes the trailing 'i'.
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  double v = 0;
  if (!parse_double(s, v)) {
    throw FormatError("malformed complex literal: '" + std::string(whole) +
                      "'");
  }
  return v;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  const std::string_view sv = s;
  if (sv.empty()) throw FormatError("empty complex literal");
  if (sv == "inf" || sv == "+inf") {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  if (sv.back() != 'i' && sv.back() != 'j') {
    double re = 0;
    if (!parse_double(sv, re)) {
      throw FormatError("malformed complex literal: '" + s + "'");
    }
    return {re, 0.0};
  }
  const std::string_view body = sv.substr(0, sv.size() - 1);
  const std::size_t cut = split_position(body);
  if (cut == std::string_view::npos) {
    return {0.0, imaginary_coefficient(body, sv)};
  }
  double re = 0;
  if (!parse_double(body.substr(0, cut), re)) {
    throw FormatError("malformed complex literal: '" + s + "'");
  }
  return {re, imaginary_coefficient(body.substr(cut), sv)};
}

std::string format_real(double v) {
  if (v == 0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return "inf";
  const double im = z.imag() == 0 ? 0.0 : z.imag();
  std::string out = format_real(z.real());
  out += std::signbit(im) ? "-" : "+";
  out += format_real(std::abs(im));
  out += "i";
  return out;
}

nlohmann::json polynomial_to_json(const PolynomialQX& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Monomial& t : p.terms()) {
    nlohmann::json coeff;
    if (t.coeff >= std::numeric_limits<std::int64_t>::min() &&
        t.coeff <= std::numeric_limits<std::int64_t>::max()) {
      coeff = t.coeff.convert_to<std::int64_t>();
    } else {
      coeff = t.coeff.str();
    }
    arr.push_back(nlohmann::json::array({coeff, t.qexp, t.xexp}));
  }
  return arr;
}

PolynomialQX polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw FormatError("polynomial must be a list of [coeff, qexp, xexp]");
  }
  std::vector<Monomial> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) {
      throw FormatError("polynomial term must be [coeff, qexp, xexp]");
    }
    Integer coeff;
    if (t[0].is_number_integer()) {
      coeff = t[0].get<std::int64_t>();
    } else if (t[0].is_string()) {
      try {
        coeff = Integer(t[0].get<std::string>());
      } catch (const std::exception&) {
        throw FormatError("coefficient string is not an integer");
      }
    } else {
      throw FormatError("coefficient must be an integer");
    }
    for (int e = 1; e <= 2; ++e) {
      if (!t[e].is_number_integer() || t[e].get<std::int64_t>() < 0) {
        throw FormatError("exponents must be non-negative integers");
      }
    }
    terms.push_back({std::move(coeff), t[1].get<std::uint64_t>(),
                     t[2].get<std::uint64_t>()});
  }
  return PolynomialQX(std::move(terms));
}

nlohmann::json family_to_json(const FamilySpec& fam) {
  nlohmann::json j;
  j["k"] = fam.k();
  j["f"] = nlohmann::json::array();
  for (const auto& p : fam.f()) j["f"].push_back(polynomial_to_json(p));
  if (fam.g()) {
    j["g"] = nlohmann::json::array();
    for (const auto& p : *fam.g()) j["g"].push_back(polynomial_to_json(p));
  }
  if (fam.b0_override()) j["b0"] = polynomial_to_json(*fam.b0_override());
  return j;
}

FamilySpec family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("family spec must be a JSON object");
  if (!j.contains("k") || !j["k"].is_number_integer() ||
      j["k"].get<std::int64_t>() < 1) {
    throw FormatError("family spec needs a positive integer \"k\"");
  }
  if (!j.contains("f") || !j["f"].is_array()) {
    throw FormatError("family spec needs a list \"f\"");
  }
  std::vector<PolynomialQX> f;
  for (const auto& p : j["f"]) f.push_back(polynomial_from_json(p));
  std::optional<std::vector<PolynomialQX>> g;
  if (j.contains("g") && !j["g"].is_null()) {
    if (!j["g"].is_array()) throw FormatError("\"g\" must be a list");
    g.emplace();
    for (const auto& p : j["g"]) g->push_back(polynomial_from_json(p));
  }
  std::optional<PolynomialQX> b0;
  if (j.contains("b0") && !j["b0"].is_null()) {
    b0 = polynomial_from_json(j["b0"]);
  }
  try {
    return FamilySpec(j["k"].get<std::size_t>(), std::move(f), std::move(g),
                      std::move(b0));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

FamilySpec load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open family file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("family file '" + path + "': " + e.what());
  }
  return family_from_json(j);
}

nlohmann::json hypotheses_to_json(const HypothesisReport& r) {
  auto opt = [](const std::optional<std::int64_t>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  auto opt_int = [](const std::optional<Integer>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return polynomial_to_json(PolynomialQX::constant(*v))[0][0];
  };
  nlohmann::json j;
  j["satisfied"] = r.satisfied;
  j["m"] = opt(r.m);
  j["a"] = opt(r.a);
  j["b"] = opt(r.b);
  j["r1"] = opt(r.r1);
  j["r2"] = opt(r.r2);
  j["La"] = opt_int(r.La);
  j["Lb"] = opt_int(r.Lb);
  j["failure_reason"] = r.failure_reason ? nlohmann::json(*r.failure_reason)
                                         : nlohmann::json(nullptr);
  j["verified_horizon"] = r.verified_horizon;
  j["leading_tail_start_a"] = r.leading_tail_start_a;
  j["leading_tail_start_b"] = r.leading_tail_start_b;
  return j;
}

}  // namespace qcf
