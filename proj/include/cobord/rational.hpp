#pragma once

#include <gmpxx.h>

#include <string>

namespace cobord {

/// Exact rational scalar. Every coefficient in the library is built from these.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace cobord
