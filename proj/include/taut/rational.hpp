#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace taut {

/// Exact rational number. mpq_class keeps numerator/denominator reduced once
/// canonicalized; every constructor path below does that.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "a" or "a/b", reduced, sign on the numerator.
std::string to_string(const Rational& r);

/// Parses "[-]nat[/nat]". Throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace taut
