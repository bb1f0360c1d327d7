#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace {

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using spcell::harness::SuiteConfig;

  CLI::App app{"seeded exact-arithmetic property suites for symplectic cell decompositions"};

  SuiteConfig cfg;
  std::string r_range = "1..3";
  std::string m_range = "0..3";
  std::string format = "text";
  std::string out_path;

  const auto range_check = CLI::Validator(
      [](std::string& text) -> std::string {
        try {
          (void)spcell::harness::parse_range(text);
        } catch (const std::exception& e) {
          return e.what();
        }
        return {};
      },
      "RANGE");

  app.add_option("suite", cfg.suite, "suite to run")
      ->required()
      ->check(CLI::IsMember({"bruhat", "orbit", "measure", "torus", "weyl", "cutoff", "all"}));
  app.add_option("--r", r_range, "GL-rank range A..B")->capture_default_str()->check(range_check);
  app.add_option("--m", m_range, "symplectic half-rank range A..B")
      ->capture_default_str()
      ->check(range_check);
  app.add_option("--n", cfg.n_exact, "run exactly the cells with r + m = N (overrides --r/--m)")
      ->check(CLI::Range(1, 64));
  app.add_option("--samples", cfg.samples, "samples per case and cell")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  app.add_option("--bound", cfg.bound, "numerator/denominator bound for sampled rationals")
      ->capture_default_str()
      ->check(CLI::Range(1L, 1000000L));
  app.add_option("--prime", cfg.prime, "residue prime for the cutoff suite")
      ->capture_default_str()
      ->check(CLI::Validator(
          [](std::string& text) -> std::string {
            long p = 0;
            try {
              p = std::stol(text);
            } catch (const std::exception&) {
              return "not an integer";
            }
            return is_prime_long(p) ? std::string{} : "not a prime";
          },
          "PRIME"));
  app.add_option("--kappa", cfg.kappa, "congruence depth")
      ->capture_default_str()
      ->check(CLI::Range(0L, 64L));
  app.add_option("--d", cfg.d, "first cutoff shift")->capture_default_str()->check(
      CLI::Range(0L, 64L));
  app.add_option("--g", cfg.g, "second cutoff shift")->capture_default_str()->check(
      CLI::Range(0L, 64L));
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", format, "report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the report to this path instead of stdout");
  app.add_option("--inject-fault", cfg.inject_fault)->group("");

  CLI11_PARSE(app, argc, argv);

  std::tie(cfg.r_lo, cfg.r_hi) = spcell::harness::parse_range(r_range);
  std::tie(cfg.m_lo, cfg.m_hi) = spcell::harness::parse_range(m_range);

  spcell::harness::SuiteReport report;
  try {
    report = spcell::harness::run_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 64;
  }

  const std::string payload = spcell::harness::render(report, format);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "verify: cannot open " << out_path << " for writing\n";
      return 3;
    }
    out << payload;
    if (!out.good()) {
      std::cerr << "verify: write failed for " << out_path << "\n";
      return 3;
    }
  }
  return spcell::harness::exit_code(report);
}
