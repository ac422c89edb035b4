#pragma once

#include <cstdint>

#include "metallic/registry.hpp"
#include "metallic/sampler.hpp"

namespace metallic {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct Tolerances {
  double algebraic = 1e-9;   // pointwise operator identities
  double d1 = 1e-7;          // first-derivative identities
  double d2 = 1e-6;          // second-derivative identities
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> s = {"fundamental", "slant",
                                             "extrinsic",   "bislant",
                                             "warped",      "theorems"};
  return s;
}

struct RunConfig {
  std::string target;
  int p = 1;
  int q = 1;
  std::vector<std::string> suites = all_suites();
  int samples = 25;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string format = "text";  // json | csv | text
};

struct SuiteResult {
  std::string id;
  std::vector<IdentityCase> cases;
  double max_residual = 0.0;
  int pass = 0, fail = 0, not_applicable = 0;
};

struct Report {
  RunConfig config;
  std::string target_name;
  std::string target_note;
  ClassificationSummary classification;
  std::string verdict;  // classification label, warped-product aware
  std::vector<SuiteResult> suites;
  double elapsed_seconds = 0.0;  // reported in text format only

  bool all_pass() const {
    for (const auto& s : suites)
      if (s.fail > 0) return false;
    return true;
  }
};

Report run(const RunConfig& config);

// Serializes the report. JSON output is key-sorted and timing-free, so that
// identical (config, seed) runs are byte-identical.
std::string emit(const Report& report, const std::string& format);

}  // namespace metallic
