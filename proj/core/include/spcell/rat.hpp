#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spcell {

/// Arbitrary-precision rational scalar. Always canonical: lowest terms,
/// positive denominator, zero stored as 0/1.
using Rat = mpq_class;

[[nodiscard]] inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den" or "num". Throws on malformed input.
[[nodiscard]] inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_parse: malformed rational '" + s + "'");
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator");
  return q;
}

/// Canonical "num/den" rendering, denominator always explicit.
[[nodiscard]] inline std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

[[nodiscard]] inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

[[nodiscard]] inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

/// q^e for integer e of either sign; 0^0 = 1, negative power of zero throws.
[[nodiscard]] inline Rat rat_pow(const Rat& q, long e) {
  if (e == 0) return Rat(1);
  if (is_zero(q)) {
    if (e > 0) return Rat(0);
    throw std::domain_error("rat_pow: negative power of zero");
  }
  Rat base = e > 0 ? q : Rat(1 / q);
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  Rat acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

}  // namespace spcell
