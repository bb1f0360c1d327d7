#pragma once

#include <cstdint>
#include <random>

#include "spcell/mat.hpp"
#include "spcell/rat.hpp"

namespace spcell {

[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable per-cell substream: the same (seed, r, m, sample, salt) always
/// yields the same generator regardless of evaluation order.
[[nodiscard]] inline std::mt19937_64 cell_rng(std::uint64_t seed, int r, int m, int sample,
                                              std::uint64_t salt = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (0x1000003ULL * static_cast<std::uint64_t>(r + 1)));
  h = splitmix64(h ^ (0x2000003ULL * static_cast<std::uint64_t>(m + 1)));
  h = splitmix64(h ^ (0x4000007ULL * static_cast<std::uint64_t>(sample + 1)));
  h = splitmix64(h ^ salt);
  return std::mt19937_64(h);
}

/// Rational sampler: numerator in [-bound, bound], denominator in [1, bound].
class Sampler {
 public:
  explicit Sampler(std::mt19937_64 eng, long bound = 10) : eng_(std::move(eng)), bound_(bound) {}

  [[nodiscard]] long integer(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  [[nodiscard]] Rat rational() {
    return rat(integer(-bound_, bound_), integer(1, bound_));
  }

  [[nodiscard]] Rat nonzero_rational() {
    for (;;) {
      Rat q = rational();
      if (!is_zero(q)) return q;
    }
  }

  /// p^v * n/d with n, d nonzero and coprime to p; exact valuation v.
  [[nodiscard]] Rat padic(long p, long vmin, long vmax) {
    long v = integer(vmin, vmax);
    long n = 0, d = 0;
    do n = integer(-bound_, bound_); while (n == 0 || n % p == 0);
    do d = integer(1, bound_); while (d % p == 0);
    return rat(n, d) * rat_pow(Rat(p), v);
  }

  /// p-adic unit: valuation exactly 0.
  [[nodiscard]] Rat padic_unit(long p) { return padic(p, 0, 0); }

  [[nodiscard]] MatQ matrix(std::size_t rows, std::size_t cols) {
    MatQ m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational();
    return m;
  }

  [[nodiscard]] MatQ padic_matrix(std::size_t rows, std::size_t cols, long p, long vmin,
                                  long vmax) {
    MatQ m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = padic(p, vmin, vmax);
    return m;
  }

  [[nodiscard]] MatQ symmetric_matrix(std::size_t n) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        m(i, j) = rational();
        m(j, i) = m(i, j);
      }
    return m;
  }

  [[nodiscard]] MatQ upper_unitriangular(std::size_t n) {
    MatQ m = MatQ::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = rational();
    return m;
  }

  [[nodiscard]] long bound() const { return bound_; }
  [[nodiscard]] std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  long bound_;
};

}  // namespace spcell
