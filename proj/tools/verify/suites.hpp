#pragma once

#include "report.hpp"

namespace spcell::harness {

/// Attempts per sample before a genericity failure is reported as
/// inconclusive instead of retried.
inline constexpr int kResampleBudget = 100;

/// Runs the named property suite ("bruhat", "orbit", "measure", "torus",
/// "weyl", "cutoff", or "all") over every (r, m) cell of the config.
/// Deterministic given the seed: the results array is byte-identical across
/// reruns. Throws std::invalid_argument on an unknown suite name or an
/// invalid p-adic context.
[[nodiscard]] SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace spcell::harness
