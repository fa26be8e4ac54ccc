#pragma once

// Numerical checks built on the catalog: the odd/even limits of 1/K(1/x),
// and grid scans of verdicts against numerical reports.

#include <complex>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qcf/cfeval.hpp"
#include "qcf/qpoly.hpp"
#include "qcf/verdict.hpp"

namespace qcf {

struct RamanujanReport {
  std::complex<double> x;
  ConvergenceReport<double> odd;   // odd approximants of 1/K(1/x)
  ConvergenceReport<double> even;  // even approximants of 1/K(1/x)
  ConvergenceReport<double> alternating;  // 1 - x/1 + x^2/1 - x^3/1 + ...
  ConvergenceReport<double> quartic;      // x/1 + x^4/1 + x^8/1 + ...
  double odd_discrepancy = 0;
  double even_discrepancy = 0;
};

// Requires 0 < |x| < 1 (std::domain_error otherwise). `tol` is the
// convergence tolerance of every limit computed. Throws std::runtime_error
// if any of the four limits fails to converge within n_max.
RamanujanReport ramanujan_claim_check(std::complex<double> x, double tol,
                                      std::size_t n_max = 2000);

struct ScanOptions {
  double re_min = -5, re_max = 5;
  double im_min = -5, im_max = 5;
  std::size_t grid = 101;
  ConvergenceOptions convergence{1e-10, 8, 1500};
  // Points with |q| <= 1 + guard are skipped.
  double guard = 1e-9;
  // 0 = hardware concurrency.
  unsigned threads = 0;
};

struct ScanRow {
  std::complex<double> q;
  Conclusion conclusion;
  TheoremUsed theorem;
  ConvergenceStatus full_status;
  ConvergenceStatus odd_status;
  ConvergenceStatus even_status;
  std::size_t n_used;
};

// Grid points are re_min + (re_max-re_min)*i/(grid-1) (likewise for im);
// rows are emitted with the imaginary index as the outer loop, both indices
// ascending. Emission order is fixed regardless of thread count.
void scan_region(const FamilySpec& fam, const ScanOptions& opt,
                 const std::function<void(const ScanRow&)>& emit);
std::vector<ScanRow> scan_region(const FamilySpec& fam, const ScanOptions& opt);

// CSV: re_q,im_q,conclusion,theorem,full_status,odd_status,even_status,n_used
void write_scan_header(std::ostream& os);
void write_scan_row(std::ostream& os, const ScanRow& row);

}  // namespace qcf
