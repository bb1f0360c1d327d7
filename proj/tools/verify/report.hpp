#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "spcell/mat.hpp"

namespace spcell::harness {

using Json = nlohmann::ordered_json;

struct SuiteConfig {
  std::string suite = "all";
  int r_lo = 1, r_hi = 3;
  int m_lo = 0, m_hi = 3;
  /// When positive, the cells are exactly { (r, n-r) : 1 <= r <= n } and the
  /// r/m ranges are ignored.
  int n_exact = 0;
  int samples = 25;
  long bound = 10;
  long prime = 3;
  long kappa = 1;
  long d = 0;
  long g = 0;
  std::uint64_t seed = 0;
  /// Testing hook: "bruhat" or "any" perturbs one reconstruction so the
  /// failure path is exercised end to end. Empty disables it.
  std::string inject_fault;
};

struct FailureRecord {
  Json input;
  std::string expected;
  std::string actual;
  std::string site;
};

struct CaseResult {
  int r = 0;
  int m = 0;
  std::string case_name;
  int samples = 0;
  std::vector<FailureRecord> failures;
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CaseResult> results;
  std::string status;  // "pass" | "fail" | "inconclusive"
  std::int64_t elapsed_ms = 0;
};

[[nodiscard]] bool operator==(const SuiteConfig& a, const SuiteConfig& b);
[[nodiscard]] bool operator==(const FailureRecord& a, const FailureRecord& b);
[[nodiscard]] bool operator==(const CaseResult& a, const CaseResult& b);
[[nodiscard]] bool operator==(const SuiteReport& a, const SuiteReport& b);

/// "A..B" (or a bare "A") -> [lo, hi]; throws std::invalid_argument on
/// malformed input or lo > hi.
[[nodiscard]] std::pair<int, int> parse_range(const std::string& text);

/// Matrix as a row-major array of arrays of "num/den" strings.
[[nodiscard]] Json matrix_json(const MatQ& a);

[[nodiscard]] Json report_json(const SuiteReport& rep);
[[nodiscard]] SuiteReport report_from_json(const Json& j);

/// Serialized results array alone, the part required to be byte-identical
/// across reruns with one seed.
[[nodiscard]] std::string results_bytes(const SuiteReport& rep);

[[nodiscard]] std::string render_text(const SuiteReport& rep);

/// format is "json" or "text"; either way the payload ends with a newline.
[[nodiscard]] std::string render(const SuiteReport& rep, const std::string& format);

/// Derives the status from the failure records: any failure outside a
/// */resample_budget site is a "fail", budget records alone are
/// "inconclusive", none is "pass".
[[nodiscard]] std::string derive_status(const std::vector<CaseResult>& results);

/// pass -> 0, fail -> 1, inconclusive -> 2.
[[nodiscard]] int exit_code(const SuiteReport& rep);

}  // namespace spcell::harness
