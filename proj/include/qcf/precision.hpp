#pragma once

#include <stdexcept>
#include <string>

#include "qcf/scaled.hpp"

namespace qcf {

// Calls fn.template operator()<R>() with the narrowest supported real type
// carrying at least `digits` decimal digits: double (15), long double, or a
// 50-digit binary float. digits <= 0 selects double.
template <class Fn>
decltype(auto) with_precision(int digits, Fn&& fn) {
  if (digits <= std::numeric_limits<double>::digits10) {
    return fn.template operator()<double>();
  }
  if (digits <= std::numeric_limits<long double>::digits10) {
    return fn.template operator()<long double>();
  }
  if (digits <= std::numeric_limits<Float50>::digits10) {
    return fn.template operator()<Float50>();
  }
  throw std::invalid_argument("precision above " +
                              std::to_string(std::numeric_limits<Float50>::digits10) +
                              " decimal digits is not supported");
}

}  // namespace qcf
