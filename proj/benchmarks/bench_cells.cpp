#include <benchmark/benchmark.h>

#include <cstdint>

#include "spcell/bruhat.hpp"
#include "spcell/errors.hpp"
#include "spcell/forms.hpp"
#include "spcell/measures.hpp"
#include "spcell/orbit.hpp"
#include "spcell/rng.hpp"
#include "spcell/torus.hpp"

namespace spcell {
namespace {

constexpr std::uint64_t kSeed = 0xBE7C4ull;

/// Resamples until `probe` accepts the point, so the timed loop never throws.
template <typename Probe>
NilpotentPair generic_point(const GroupShape& s, std::uint64_t salt, Probe probe) {
  for (int attempt = 0;; ++attempt) {
    Sampler smp(cell_rng(kSeed, s.r, s.m, attempt, salt), 10);
    NilpotentPair n = make_n(s, smp.matrix(s.ur(), 2 * s.um()), smp.symmetric_matrix(s.ur()));
    try {
      probe(n);
      return n;
    } catch (const NonGenericError&) {
    } catch (const PivotError&) {
    }
  }
}

NilpotentPair toric_point(const GroupShape& s, std::uint64_t salt) {
  for (int attempt = 0;; ++attempt) {
    Sampler smp(cell_rng(kSeed, s.r, s.m, attempt, salt), 10);
    const std::size_t r = s.ur(), k = std::min(s.ur(), s.um());
    MatQ x(r, 2 * s.um());
    for (std::size_t j = 0; j < k; ++j) x(r - 1 - j, j) = smp.nonzero_rational();
    NilpotentPair n = make_n(s, x, smp.symmetric_matrix(r));
    try {
      (void)phi_minor_formula(n);
      return n;
    } catch (const NonGenericError&) {
    }
  }
}

void BM_decompose_w0(benchmark::State& state) {
  const GroupShape s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const NilpotentPair n = generic_point(s, 1, [](const NilpotentPair& p) { (void)decompose_w0(p); });
  for (auto _ : state) benchmark::DoNotOptimize(decompose_w0(n));
}
BENCHMARK(BM_decompose_w0)->Args({2, 2})->Args({3, 3})->Args({4, 2})->Args({5, 2});

void BM_reduce_to_canonical(benchmark::State& state) {
  const GroupShape s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const NilpotentPair n =
      generic_point(s, 2, [](const NilpotentPair& p) { (void)reduce_to_canonical(p); });
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_canonical(n));
}
BENCHMARK(BM_reduce_to_canonical)->Args({2, 3})->Args({3, 2})->Args({5, 2});

void BM_jacobian_monomial(benchmark::State& state) {
  const GroupShape s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const OrbitMask mask = canonical_mask(s);
  Sampler smp(cell_rng(kSeed, s.r, s.m, 0, 3), 10);
  MatQ x(s.ur(), 2 * s.um());
  for (std::size_t i = 0; i < s.ur(); ++i)
    for (std::size_t j = 0; j < 2 * s.um(); ++j)
      if (mask.X[i][j]) x(i, j) = smp.nonzero_rational();
  MatQ z(s.ur(), s.ur());
  for (std::size_t i = 0; i < s.ur(); ++i)
    for (std::size_t j = i; j < s.ur(); ++j)
      if (mask.Z[i][j]) {
        z(i, j) = smp.nonzero_rational();
        z(j, i) = z(i, j);
      }
  for (auto _ : state) benchmark::DoNotOptimize(verify_jacobian_monomial(s, x, z, false));
}
BENCHMARK(BM_jacobian_monomial)->Args({3, 3})->Args({4, 2})->Args({5, 2});

void BM_phi_minor_formula(benchmark::State& state) {
  const GroupShape s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const NilpotentPair n = toric_point(s, 4);
  for (auto _ : state) benchmark::DoNotOptimize(phi_minor_formula(n));
}
BENCHMARK(BM_phi_minor_formula)->Args({2, 3})->Args({3, 3})->Args({4, 2});

}  // namespace
}  // namespace spcell

BENCHMARK_MAIN();
