#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetlc/check.hpp"
#include "jetlc/jet_actions.hpp"
#include "json.hpp"

namespace jetlc {

/// Malformed or unreadable verification config (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleCounts {
  int identity = 50;              // sampled curvature and closedness identities
  int metric_compatibility = 100;
  int invariance = 20;            // matched points per diffeomorphism
  int oracle_points = 10;         // base points per metric
  int euler_flip = 10;
  int high_degree = 3;            // n = 4 closedness of p_1 and Pf
  int health = 10;                // random instances per engine self-check shape
};

struct SuiteConfig {
  std::vector<int> dimensions{2, 3, 4};
  std::uint64_t seed = 1;
  int trials = 24;
  /// Auto: symbolic where available; Sampled forces sampled checks everywhere.
  CheckMode mode = CheckMode::Auto;
  SampleCounts samples;
  std::vector<MetricSection> metrics;
  std::vector<PolyDiffeo> diffeomorphisms;
  std::vector<Rational> scales{Rational(1, 4), Rational(4), Rational(9)};
  std::vector<std::pair<Rational, Rational>> uniqueness{{1, 0}, {0, 1}, {1, 1}, {-2, 3}};
  bool invariants = true;
  bool health = true;
  std::string out;  // report path (JSON); the markdown report sits next to it
  bool corrupt_christoffel_sign = false;

  /// Throws ConfigError on any malformed field.
  static SuiteConfig from_json(const nlohmann::json& j);
  /// Reads and parses a file; a missing file is a ConfigError as well.
  static SuiteConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

struct CheckRecord {
  std::string suite;
  std::string name;
  int dimension = 0;  // 0 for dimension-free checks
  CheckMode mode = CheckMode::Symbolic;
  std::uint64_t seed = 0;
  int cases = 0;
  bool passed = false;
  std::string detail;
  nlohmann::json witness;
};

struct VerifyReport {
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  bool passed() const;
  int failures() const;
};

/// Runs every suite for the configured dimensions. `progress` sees each
/// record as soon as it is complete.
VerifyReport run_verify(const SuiteConfig& config, const std::function<void(const CheckRecord&)>& progress = {});

nlohmann::json to_json(const CheckRecord& r);
nlohmann::json to_json(const VerifyReport& r);
std::string to_markdown(const VerifyReport& r);

}  // namespace jetlc
