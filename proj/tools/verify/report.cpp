#include "report.hpp"

#include <sstream>
#include <stdexcept>

#include "spcell/rat.hpp"

namespace spcell::harness {

bool operator==(const SuiteConfig& a, const SuiteConfig& b) {
  return a.suite == b.suite && a.r_lo == b.r_lo && a.r_hi == b.r_hi && a.m_lo == b.m_lo &&
         a.m_hi == b.m_hi && a.n_exact == b.n_exact && a.samples == b.samples &&
         a.bound == b.bound && a.prime == b.prime && a.kappa == b.kappa && a.d == b.d &&
         a.g == b.g && a.seed == b.seed && a.inject_fault == b.inject_fault;
}

bool operator==(const FailureRecord& a, const FailureRecord& b) {
  return a.input == b.input && a.expected == b.expected && a.actual == b.actual &&
         a.site == b.site;
}

bool operator==(const CaseResult& a, const CaseResult& b) {
  return a.r == b.r && a.m == b.m && a.case_name == b.case_name && a.samples == b.samples &&
         a.failures == b.failures;
}

bool operator==(const SuiteReport& a, const SuiteReport& b) {
  return a.suite == b.suite && a.config == b.config && a.results == b.results &&
         a.status == b.status && a.elapsed_ms == b.elapsed_ms;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto parse_int = [](const std::string& part) {
    std::size_t used = 0;
    int value = std::stoi(part, &used);
    if (used != part.size()) throw std::invalid_argument("range: trailing characters in " + part);
    return value;
  };
  const std::size_t dots = text.find("..");
  std::pair<int, int> out;
  if (dots == std::string::npos) {
    out.first = out.second = parse_int(text);
  } else {
    out.first = parse_int(text.substr(0, dots));
    out.second = parse_int(text.substr(dots + 2));
  }
  if (out.first > out.second) throw std::invalid_argument("range: empty interval " + text);
  return out;
}

namespace {

std::string range_str(int lo, int hi) {
  return std::to_string(lo) + ".." + std::to_string(hi);
}

Json config_json(const SuiteConfig& c) {
  Json j;
  j["suite"] = c.suite;
  j["r"] = range_str(c.r_lo, c.r_hi);
  j["m"] = range_str(c.m_lo, c.m_hi);
  if (c.n_exact > 0) j["n"] = c.n_exact;
  j["samples"] = c.samples;
  j["bound"] = c.bound;
  j["prime"] = c.prime;
  j["kappa"] = c.kappa;
  j["d"] = c.d;
  j["g"] = c.g;
  j["seed"] = std::to_string(c.seed);
  if (!c.inject_fault.empty()) j["inject_fault"] = c.inject_fault;
  return j;
}

SuiteConfig config_from_json(const Json& j) {
  SuiteConfig c;
  c.suite = j.at("suite").get<std::string>();
  std::tie(c.r_lo, c.r_hi) = parse_range(j.at("r").get<std::string>());
  std::tie(c.m_lo, c.m_hi) = parse_range(j.at("m").get<std::string>());
  if (j.contains("n")) c.n_exact = j.at("n").get<int>();
  c.samples = j.at("samples").get<int>();
  c.bound = j.at("bound").get<long>();
  c.prime = j.at("prime").get<long>();
  c.kappa = j.at("kappa").get<long>();
  c.d = j.at("d").get<long>();
  c.g = j.at("g").get<long>();
  c.seed = std::stoull(j.at("seed").get<std::string>());
  if (j.contains("inject_fault")) c.inject_fault = j.at("inject_fault").get<std::string>();
  return c;
}

Json failure_json(const FailureRecord& f) {
  Json j;
  j["input"] = f.input;
  j["expected"] = f.expected;
  j["actual"] = f.actual;
  j["site"] = f.site;
  return j;
}

Json results_json(const std::vector<CaseResult>& results) {
  Json arr = Json::array();
  for (const CaseResult& c : results) {
    Json j;
    j["r"] = c.r;
    j["m"] = c.m;
    j["case"] = c.case_name;
    j["samples"] = c.samples;
    Json fl = Json::array();
    for (const FailureRecord& f : c.failures) fl.push_back(failure_json(f));
    j["failures"] = std::move(fl);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

Json matrix_json(const MatQ& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(rat_str(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json report_json(const SuiteReport& rep) {
  Json j;
  j["suite"] = rep.suite;
  j["config"] = config_json(rep.config);
  j["results"] = results_json(rep.results);
  j["status"] = rep.status;
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

SuiteReport report_from_json(const Json& j) {
  SuiteReport rep;
  rep.suite = j.at("suite").get<std::string>();
  rep.config = config_from_json(j.at("config"));
  for (const Json& cj : j.at("results")) {
    CaseResult c;
    c.r = cj.at("r").get<int>();
    c.m = cj.at("m").get<int>();
    c.case_name = cj.at("case").get<std::string>();
    c.samples = cj.at("samples").get<int>();
    for (const Json& fj : cj.at("failures")) {
      FailureRecord f;
      f.input = fj.at("input");
      f.expected = fj.at("expected").get<std::string>();
      f.actual = fj.at("actual").get<std::string>();
      f.site = fj.at("site").get<std::string>();
      c.failures.push_back(std::move(f));
    }
    rep.results.push_back(std::move(c));
  }
  rep.status = j.at("status").get<std::string>();
  rep.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  return rep;
}

std::string results_bytes(const SuiteReport& rep) { return results_json(rep.results).dump(); }

std::string render_text(const SuiteReport& rep) {
  std::ostringstream out;
  out << "suite: " << rep.suite << "\n";
  out << "config:";
  const Json cfg = config_json(rep.config);
  for (const auto& [key, value] : cfg.items()) {
    if (key == "suite") continue;
    out << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
  }
  out << "\n";
  for (const CaseResult& c : rep.results) {
    out << "  r=" << c.r << " m=" << c.m << " " << c.case_name << " samples=" << c.samples
        << " failures=" << c.failures.size() << "\n";
    for (const FailureRecord& f : c.failures) {
      out << "    site=" << f.site << "\n";
      out << "      expected: " << f.expected << "\n";
      out << "      actual:   " << f.actual << "\n";
      if (!f.input.empty()) out << "      input:    " << f.input.dump() << "\n";
    }
  }
  out << "status: " << rep.status << "\n";
  out << "elapsed_ms: " << rep.elapsed_ms << "\n";
  return out.str();
}

std::string render(const SuiteReport& rep, const std::string& format) {
  if (format == "json") return report_json(rep).dump(2) + "\n";
  if (format == "text") return render_text(rep);
  throw std::invalid_argument("unknown format: " + format);
}

std::string derive_status(const std::vector<CaseResult>& results) {
  bool inconclusive = false;
  for (const CaseResult& c : results)
    for (const FailureRecord& f : c.failures) {
      const std::string tail = "/resample_budget";
      if (f.site.size() >= tail.size() &&
          f.site.compare(f.site.size() - tail.size(), tail.size(), tail) == 0)
        inconclusive = true;
      else
        return "fail";
    }
  return inconclusive ? "inconclusive" : "pass";
}

int exit_code(const SuiteReport& rep) {
  if (rep.status == "pass") return 0;
  if (rep.status == "fail") return 1;
  return 2;
}

}  // namespace spcell::harness
