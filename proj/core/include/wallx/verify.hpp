#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wallx {

struct CaseResult {
  std::string name;
  std::vector<std::pair<std::string, bool>> checks;
  std::string detail;
  bool passed() const;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  std::vector<CaseResult> cases;
  bool passed() const;
  std::size_t failures() const;
};

// appendixA, functor-laws, hypercube-edges, ordweight, cross-backend.
std::vector<std::string> suite_names();
std::size_t default_size(const std::string& suite);

// size = 0 picks the suite's default. Cases run in parallel when `parallel`
// is set; the report is assembled in case order either way. Throws
// std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::size_t size = 0, bool parallel = true);
// "all" runs every suite.
std::vector<SuiteReport> run_suites(const std::string& suite, std::uint64_t seed, std::size_t size = 0,
                                    bool parallel = true);

std::string report_to_json(const std::vector<SuiteReport>& reports);

}  // namespace wallx
