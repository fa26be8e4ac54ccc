#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcf {

// A partial numerator evaluated to zero; the continued fraction terminates
// there and the element stream is invalid from that index on.
class ZeroElementError : public std::runtime_error {
 public:
  explicit ZeroElementError(std::size_t index)
      : std::runtime_error("partial numerator a_" + std::to_string(index) +
                           " is zero"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A partial denominator that must be divided by is zero.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ZeroContractionDenominatorError : public std::runtime_error {
 public:
  explicit ZeroContractionDenominatorError(std::size_t index)
      : std::runtime_error("contraction denominator " + std::to_string(index) +
                           " is zero"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// t(w) = c/(1+w) with c = 0.
class DegenerateMapError : public std::domain_error {
 public:
  DegenerateMapError() : std::domain_error("tail map parameter c is zero") {}
};

class OutOfDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotApplicableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnknownNameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed family JSON or complex literal.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcf
