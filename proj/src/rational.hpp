#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fnlab {

using Rational = mpq_class;

/// Parses "n" or "n/d" (optional leading minus). Throws ValidationError.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form, denominator always present.
std::string format_rational(const Rational& q);

inline bool fnlab_is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace fnlab
