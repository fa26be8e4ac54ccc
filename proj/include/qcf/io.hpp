#pragma once

// Text and JSON forms shared by the CLI and the library: complex literals
// ("1.5-2i", "3i", "inf") and the family-spec interchange format
//   {"k": int, "f": [poly...], "g": [poly...], "b0": poly}
// where poly is a list of [coeff, qexp, xexp] integer triples.

#include <complex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qcf/qpoly.hpp"

namespace qcf {

// Parses "a", "bi", "a+bi", "a-bi", "i", "-i". Throws FormatError.
std::complex<double> parse_complex(std::string_view text);

// Shortest round-trip decimal form of a double, e.g. "0.5", "-4", "1e-12".
std::string format_real(double v);
// "a+bi" / "a-bi" with shortest round-trip components; "inf" for the point
// at infinity (any non-finite component).
std::string format_complex(std::complex<double> z);

nlohmann::json polynomial_to_json(const PolynomialQX& p);
PolynomialQX polynomial_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const FamilySpec& fam);
FamilySpec family_from_json(const nlohmann::json& j);
FamilySpec load_family_file(const std::string& path);

nlohmann::json hypotheses_to_json(const HypothesisReport& r);

}  // namespace qcf
