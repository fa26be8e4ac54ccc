#include "qcf/explore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qcf/catalog.hpp"
#include "qcf/io.hpp"
#include "qcf/stream.hpp"

namespace qcf {

namespace {

double abs_difference(const ExtendedValue<double>& u,
                      const ExtendedValue<double>& v) {
  if (u.infinite || v.infinite) {
    return u.infinite && v.infinite ? 0.0
                                    : std::numeric_limits<double>::infinity();
  }
  return std::abs(u.z - v.z);
}

void require_converged(const ConvergenceReport<double>& r, const char* what) {
  if (r.status != ConvergenceStatus::kConverged) {
    throw std::runtime_error(std::string(what) + " did not converge: " +
                             to_string(r.status));
  }
}

}  // namespace

RamanujanReport ramanujan_claim_check(std::complex<double> x, double tol,
                                      std::size_t n_max) {
  const double ax = std::abs(x);
  if (!(ax > 0.0 && ax < 1.0)) {
    throw std::domain_error("ramanujan_claim_check needs 0 < |x| < 1");
  }
  ConvergenceOptions opt{tol, 8, n_max};
  RamanujanReport out;
  out.x = x;

  const std::complex<double> q = 1.0 / x;
  auto inv_k = reciprocal(family_stream<double>(catalog_get("rr").fam, q));
  std::tie(out.odd, out.even) = odd_even_reports(inv_k, opt);

  using S = ScaledComplex<double>;
  const S one(1.0);
  const S sx = S::from_double(x);
  // 1 + K (-x)^n / 1.
  auto alternating = generator_stream<double>(one, [sx, one](std::size_t n) {
    return Element<double>{scaled_power(-sx, n), one};
  });
  // 0 + x/1 + K_{n>=2} x^(4(n-1)) / 1.
  auto quartic = generator_stream<double>(S(), [sx, one](std::size_t n) {
    return Element<double>{n == 1 ? sx : scaled_power(sx, 4 * (n - 1)), one};
  });
  out.alternating = limit_estimate(alternating, opt);
  out.quartic = limit_estimate(quartic, opt);

  require_converged(out.odd, "odd approximants of 1/K(1/x)");
  require_converged(out.even, "even approximants of 1/K(1/x)");
  require_converged(out.alternating, "1 - x/1 + x^2/1 - ...");
  require_converged(out.quartic, "x/1 + x^4/1 + x^8/1 + ...");

  out.odd_discrepancy = abs_difference(out.odd.value, out.alternating.value);
  out.even_discrepancy = abs_difference(out.even.value, out.quartic.value);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::complex<double>> grid_points(const ScanOptions& opt) {
  if (opt.grid < 2) throw std::invalid_argument("scan grid must be >= 2");
  std::vector<std::complex<double>> pts;
  const double den = static_cast<double>(opt.grid - 1);
  for (std::size_t j = 0; j < opt.grid; ++j) {
    const double im =
        opt.im_min + (opt.im_max - opt.im_min) * static_cast<double>(j) / den;
    for (std::size_t i = 0; i < opt.grid; ++i) {
      const double re =
          opt.re_min + (opt.re_max - opt.re_min) * static_cast<double>(i) / den;
      const std::complex<double> q(re, im);
      if (std::abs(q) > 1.0 + opt.guard) pts.push_back(q);
    }
  }
  return pts;
}

ScanRow evaluate_point(const FamilySpec& fam, const HypothesisReport& report,
                       std::complex<double> q, const ConvergenceOptions& copt) {
  ScanRow row{};
  row.q = q;
  const Verdict v = verdict(fam, report, q);
  row.conclusion = v.conclusion;
  row.theorem = v.theorem;
  const TripleReport<double> t = all_reports(family_stream<double>(fam, q), copt);
  row.full_status = t.full.status;
  row.odd_status = t.odd.status;
  row.even_status = t.even.status;
  row.n_used = t.n_used;
  return row;
}

}  // namespace

void scan_region(const FamilySpec& fam, const ScanOptions& opt,
                 const std::function<void(const ScanRow&)>& emit) {
  opt.convergence.validate();
  const std::vector<std::complex<double>> pts = grid_points(opt);
  const HypothesisReport report = check_hypotheses(fam);

  unsigned threads = opt.threads != 0 ? opt.threads
                                      : std::max(1U, std::thread::hardware_concurrency());
  // Rows are computed block by block and emitted in grid order.
  constexpr std::size_t kBlock = 512;
  std::vector<ScanRow> rows(kBlock);
  for (std::size_t base = 0; base < pts.size(); base += kBlock) {
    const std::size_t count = std::min(kBlock, pts.size() - base);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (std::size_t i = next++; i < count; i = next++) {
        rows[i] = evaluate_point(fam, report, pts[base + i], opt.convergence);
      }
    };
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (std::size_t i = 0; i < count; ++i) emit(rows[i]);
  }
}

std::vector<ScanRow> scan_region(const FamilySpec& fam, const ScanOptions& opt) {
  std::vector<ScanRow> out;
  scan_region(fam, opt, [&](const ScanRow& r) { out.push_back(r); });
  return out;
}

void write_scan_header(std::ostream& os) {
  os << "re_q,im_q,conclusion,theorem,full_status,odd_status,even_status,"
        "n_used\n";
}

void write_scan_row(std::ostream& os, const ScanRow& row) {
  os << format_real(row.q.real()) << ',' << format_real(row.q.imag()) << ','
     << to_string(row.conclusion) << ',' << to_string(row.theorem) << ','
     << to_string(row.full_status) << ',' << to_string(row.odd_status) << ','
     << to_string(row.even_status) << ',' << row.n_used << '\n';
}

}  // namespace qcf
