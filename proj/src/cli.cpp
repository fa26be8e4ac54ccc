#include "qcf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcf/catalog.hpp"
#include "qcf/cfeval.hpp"
#include "qcf/classify.hpp"
#include "qcf/contract.hpp"
#include "qcf/errors.hpp"
#include "qcf/explore.hpp"
#include "qcf/io.hpp"
#include "qcf/precision.hpp"
#include "qcf/verdict.hpp"

namespace qcf {

namespace {

using json = nlohmann::json;

// Raised for bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceFlags {
  std::string catalog;
  std::string family;

  void add(CLI::App* cmd) {
    auto* c = cmd->add_option("--catalog", catalog, "built-in family name");
    auto* f = cmd->add_option("--family", family, "family-spec JSON file");
    c->excludes(f);
  }

  FamilySpec resolve() const {
    if (!catalog.empty()) {
      try {
        return catalog_get(catalog).fam;
      } catch (const UnknownNameError& e) {
        throw UsageError(e.what());
      }
    }
    if (!family.empty()) return load_family_file(family);
    throw UsageError("one of --catalog or --family is required");
  }
};

std::complex<double> complex_flag(const std::string& text, const char* flag) {
  try {
    return parse_complex(text);
  } catch (const FormatError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

struct EvalFlags {
  std::string q;
  double tol = 1e-10;
  std::size_t n_max = 2000;
  std::size_t window = 8;
  std::string part = "full";
  int precision = 0;

  void add(CLI::App* cmd, bool with_part) {
    cmd->add_option("--q", q, "evaluation point, e.g. 2, -2, 1+1i")->required();
    cmd->add_option("--tol", tol, "convergence tolerance (chordal metric)");
    cmd->add_option("--n-max", n_max, "maximum approximant index");
    cmd->add_option("--window", window, "convergence window length");
    if (with_part) {
      cmd->add_option("--part", part, "full, even or odd")
          ->check(CLI::IsMember({"full", "even", "odd"}));
    }
    cmd->add_option("--precision", precision,
                    "decimal digits of working precision (default binary64)");
  }

  ConvergenceOptions options() const {
    ConvergenceOptions o{tol, window, n_max};
    try {
      o.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return o;
  }
};

template <class R>
std::string format_real_r(const R& v) {
  if constexpr (std::is_same_v<R, double>) {
    return format_real(v);
  } else {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<R>::digits10 + 2) << v;
    return os.str();
  }
}

template <class R>
std::string format_complex_r(const Complex<R>& z) {
  if constexpr (std::is_same_v<R, double>) {
    return format_complex(z);
  } else {
    using std::isfinite;
    const R re = z.real();
    const R im = z.imag();
    if (!isfinite(re) || !isfinite(im)) return "inf";
    const bool neg = im < 0;
    return format_real_r<R>(re) + (neg ? "-" : "+") +
           format_real_r<R>(neg ? R(-im) : im) + "i";
  }
}

template <class R>
std::string format_value(const ExtendedValue<R>& v) {
  return v.infinite ? "inf" : format_complex_r<R>(v.z);
}

template <class R>
std::string format_scaled(const ScaledComplex<R>& s) {
  if (s.is_zero() || (s.exponent() > -900 && s.exponent() < 900)) {
    return format_complex_r<R>(s.value());
  }
  return "(" + format_complex_r<R>(s.mantissa()) + ")*2^" +
         std::to_string(s.exponent());
}

template <class R>
json report_to_json(const ConvergenceReport<R>& r) {
  json j;
  j["status"] = to_string(r.status);
  j["value"] = format_value<R>(r.value);
  j["n_used"] = r.n_used;
  j["final_gap"] = r.final_gap;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

int cmd_eval(const SourceFlags& src, const EvalFlags& ef, std::ostream& out) {
  const FamilySpec fam = src.resolve();
  const auto q = complex_flag(ef.q, "--q");
  const ConvergenceOptions opt = ef.options();
  const Part part = parse_part(ef.part);
  json j = with_precision(ef.precision, [&]<class R>() {
    ElementStream<R> s = family_stream<R>(fam, q);
    if (part == Part::kEven) s = even_part(std::move(s));
    if (part == Part::kOdd) s = odd_part(std::move(s));
    json r = report_to_json(limit_estimate(s, opt));
    r["precision_digits"] = std::numeric_limits<R>::digits10;
    return r;
  });
  j["q"] = format_complex(q);
  j["part"] = ef.part;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_contract(const SourceFlags& src, const EvalFlags& ef,
                 const std::string& kind_text, std::ostream& out) {
  const FamilySpec fam = src.resolve();
  const auto q = complex_flag(ef.q, "--q");
  const ContractionKind kind =
      kind_text == "odd" ? ContractionKind::kOdd : ContractionKind::kEven;
  with_precision(ef.precision, [&]<class R>() {
    ElementStream<R> s = contract(family_stream<R>(fam, q), kind);
    ApproximantState<R> st(s.b0());
    out << json{{"n", 0}, {"b0", format_scaled(s.b0())},
                {"approximant", format_value(st.value())}}
               .dump()
        << '\n';
    for (std::size_t n = 1; n <= ef.n_max; ++n) {
      const Element<R> e = s.at(n);
      st.step(e);
      out << json{{"n", n},
                  {"a", format_scaled(e.a)},
                  {"b", format_scaled(e.b)},
                  {"unit_element", format_scaled(e.a / e.b / (n >= 2 ? s.at(n - 1).b
                                                                     : ScaledComplex<R>(R(1))))},
                  {"approximant", format_value(st.value())}}
                 .dump()
          << '\n';
    }
  });
  return kExitOk;
}

int cmd_classify(const SourceFlags& src, const std::string& c_text,
                 const std::string& q_text, const std::string& part_text,
                 double boundary_tol, std::ostream& out) {
  json j;
  cplx c;
  if (!c_text.empty()) {
    c = complex_flag(c_text, "--c");
  } else {
    if (q_text.empty()) throw UsageError("classify needs --c or --q with a family");
    const FamilySpec fam = src.resolve();
    const cplx q = complex_flag(q_text, "--q");
    const TailParameter tp =
        tail_parameter(fam, check_hypotheses(fam), parse_part(part_text), q);
    c = tp.c;
    j["tail_parameter"] = {{"c", format_complex(tp.c)},
                           {"formula_used", to_string(tp.formula)},
                           {"q", format_complex(q)}};
  }
  if (c == cplx(0, 0)) throw UsageError("--c must be nonzero");
  j["c"] = format_complex(c);
  j["classification"] = classification_to_json(classify_lft(c, boundary_tol));
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_verdict(const SourceFlags& src, const std::string& q_text,
                std::ostream& out) {
  const FamilySpec fam = src.resolve();
  const cplx q = complex_flag(q_text, "--q");
  const HypothesisReport report = check_hypotheses(fam);
  json j = verdict_to_json(verdict(fam, report, q));
  j["q"] = format_complex(q);
  j["hypotheses"] = hypotheses_to_json(report);
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_scan(const SourceFlags& src, ScanOptions opt, const std::string& path,
             std::ostream& out) {
  const FamilySpec fam = src.resolve();
  try {
    opt.convergence.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (opt.grid < 2) throw UsageError("--grid must be >= 2");
  std::ofstream file;
  std::ostream* os = &out;
  if (!path.empty() && path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    os = &file;
  }
  write_scan_header(*os);
  scan_region(fam, opt, [&](const ScanRow& r) { write_scan_row(*os, r); });
  os->flush();
  return kExitOk;
}

int cmd_catalog(const std::string& action, const std::string& name,
                std::ostream& out) {
  if (action == "list") {
    for (const std::string& n : catalog_names()) out << n << '\n';
    return kExitOk;
  }
  if (action == "show") {
    if (name.empty()) throw UsageError("catalog show needs a name");
    const CatalogEntry e = [&] {
      try {
        return catalog_get(name);
      } catch (const UnknownNameError& ex) {
        throw UsageError(ex.what());
      }
    }();
    json j{{"name", e.name}, {"notes", e.notes}, {"family", family_to_json(e.fam)}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  throw UsageError("catalog action must be list or show");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"qcf: q-continued fractions outside the unit circle"};
  app.require_subcommand(1);

  SourceFlags eval_src, contract_src, classify_src, verdict_src, scan_src;
  EvalFlags eval_flags, contract_flags;

  auto* eval = app.add_subcommand("eval", "numerical limit of a family at q");
  eval_src.add(eval);
  eval_flags.add(eval, true);

  auto* contract_cmd =
      app.add_subcommand("contract", "elements and approximants of the even/odd part");
  contract_src.add(contract_cmd);
  contract_flags.n_max = 10;
  std::string contract_part = "even";
  contract_cmd->add_option("--q", contract_flags.q, "evaluation point")->required();
  contract_cmd->add_option("--part", contract_part, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));
  contract_cmd->add_option("--n-max", contract_flags.n_max,
                           "number of contraction elements to print");
  contract_cmd->add_option("--precision", contract_flags.precision,
                           "decimal digits of working precision");

  auto* classify = app.add_subcommand("classify", "classify t(w) = c/(1+w)");
  classify_src.add(classify);
  std::string c_text, classify_q, classify_part = "even";
  double boundary_tol = kDefaultBoundaryTol;
  classify->add_option("--c", c_text, "tail parameter c");
  classify->add_option("--q", classify_q, "evaluation point (with a family)");
  classify->add_option("--part", classify_part, "full, even or odd")
      ->check(CLI::IsMember({"full", "even", "odd"}));
  classify->add_option("--boundary-tol", boundary_tol,
                       "relative tolerance of the classification boundaries");

  auto* verdict_cmd = app.add_subcommand("verdict", "theoretical convergence verdict");
  verdict_src.add(verdict_cmd);
  std::string verdict_q;
  verdict_cmd->add_option("--q", verdict_q, "evaluation point")->required();

  auto* scan = app.add_subcommand("scan", "grid scan of verdicts and numerics (CSV)");
  scan_src.add(scan);
  ScanOptions scan_opt;
  std::string scan_out;
  scan->add_option("--re-min", scan_opt.re_min);
  scan->add_option("--re-max", scan_opt.re_max);
  scan->add_option("--im-min", scan_opt.im_min);
  scan->add_option("--im-max", scan_opt.im_max);
  scan->add_option("--grid", scan_opt.grid, "points per axis");
  scan->add_option("--tol", scan_opt.convergence.tol);
  scan->add_option("--n-max", scan_opt.convergence.n_max);
  scan->add_option("--window", scan_opt.convergence.window);
  scan->add_option("--threads", scan_opt.threads, "worker threads (0 = all cores)");
  scan->add_option("--out", scan_out, "CSV path (default stdout)");

  auto* catalog = app.add_subcommand("catalog", "built-in families");
  std::string catalog_action, catalog_name;
  catalog->add_option("action", catalog_action, "list or show")->required();
  catalog->add_option("name", catalog_name, "entry name for show");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qcf: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_src, eval_flags, out);
    if (contract_cmd->parsed()) {
      return cmd_contract(contract_src, contract_flags, contract_part, out);
    }
    if (classify->parsed()) {
      return cmd_classify(classify_src, c_text, classify_q, classify_part,
                          boundary_tol, out);
    }
    if (verdict_cmd->parsed()) return cmd_verdict(verdict_src, verdict_q, out);
    if (scan->parsed()) return cmd_scan(scan_src, scan_opt, scan_out, out);
    if (catalog->parsed()) return cmd_catalog(catalog_action, catalog_name, out);
  } catch (const UsageError& e) {
    err << "qcf: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qcf: " << e.what() << '\n';
    return kExitEvaluation;
  }
  err << "qcf: no subcommand\n";
  return kExitUsage;
}

}  // namespace qcf
