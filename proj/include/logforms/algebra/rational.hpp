#pragma once

#include <gmpxx.h>

#include <string>

namespace logforms {

/// Exact rational number over arbitrary-precision integers.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace logforms
