#pragma once

#include <stdexcept>

#include "spcell/rat.hpp"

namespace spcell {

/// Dual number a + eps*b over Rat with eps^2 = 0. Carries one exact first
/// derivative through polynomial and rational evaluation.
struct DualRat {
  Rat a;  // value
  Rat b;  // derivative

  DualRat() : a(0), b(0) {}
  DualRat(const Rat& v) : a(v), b(0) {}
  DualRat(long v) : a(v), b(0) {}
  DualRat(Rat v, Rat d) : a(std::move(v)), b(std::move(d)) {}

  DualRat& operator+=(const DualRat& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  DualRat& operator-=(const DualRat& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  DualRat& operator*=(const DualRat& o) {
    b = a * o.b + b * o.a;
    a *= o.a;
    return *this;
  }
  DualRat& operator/=(const DualRat& o) {
    if (is_zero(o.a)) throw std::domain_error("DualRat: division by non-unit");
    // (a + eps b)/(c + eps d) = a/c + eps (b c - a d)/c^2
    Rat c = o.a;
    Rat d = o.b;
    b = (b * c - a * d) / (c * c);
    a = a / c;
    return *this;
  }
};

[[nodiscard]] inline DualRat operator+(DualRat x, const DualRat& y) { return x += y; }
[[nodiscard]] inline DualRat operator-(DualRat x, const DualRat& y) { return x -= y; }
[[nodiscard]] inline DualRat operator*(DualRat x, const DualRat& y) { return x *= y; }
[[nodiscard]] inline DualRat operator/(DualRat x, const DualRat& y) { return x /= y; }
[[nodiscard]] inline DualRat operator-(const DualRat& x) { return DualRat(-x.a, -x.b); }
[[nodiscard]] inline bool operator==(const DualRat& x, const DualRat& y) {
  return x.a == y.a && x.b == y.b;
}
[[nodiscard]] inline bool operator!=(const DualRat& x, const DualRat& y) { return !(x == y); }

/// Unit test used by pivoting: invertible iff the value part is nonzero.
[[nodiscard]] inline bool is_unit(const DualRat& x) { return !is_zero(x.a); }
[[nodiscard]] inline bool is_unit(const Rat& x) { return !is_zero(x); }

[[nodiscard]] inline bool is_zero(const DualRat& x) { return is_zero(x.a) && is_zero(x.b); }

}  // namespace spcell
