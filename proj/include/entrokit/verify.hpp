#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entrokit/distributions.hpp"

namespace entrokit {

enum class PropertyKind { identity, inequality };

/// Registry entry: a named, checkable statement.
struct PropertyInfo {
  std::string name;
  std::string statement;
  PropertyKind kind;
};

/// Every registered property, in a fixed order.
std::vector<PropertyInfo> list_properties();

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kInequalityTolerance = 1e-9;
inline constexpr std::size_t kMaxSupportSize = 64;
inline constexpr std::size_t kMaxThreads = 256;

struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 16;
};

struct RealRange {
  double lo;
  double hi;
};

struct SweepConfig {
  RngSeed seed{0};
  std::size_t trials = 100;
  SizeRange sizes{};
  RealRange k_range{0.01, 0.5};
  RealRange r_range{0.05, 2.0};
  /// Overrides the per-kind defaults (1e-12 identities, 1e-9 inequalities).
  std::optional<double> tol;
  /// Empty selects every property.
  std::vector<std::string> properties;
  /// Worker threads per property sweep; does not affect the report.
  std::size_t threads = 1;
  /// Cap on the failing checks kept per property.
  std::size_t max_failures = 20;
};

/// Throws ConfigError on an invalid range, zero trials, an out-of-range size
/// or thread count, or an unknown or repeated property name.
void validate(const SweepConfig& config);

struct CheckResult {
  std::string property;
  std::size_t trial_index = 0;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Identities: (lhs - rhs) / max(1, magnitude of the summed terms).
  /// Inequalities: lhs - rhs, where the property asserts lhs >= rhs.
  double slack = 0.0;
  /// Master seed, child seed, and the drawn sizes and parameters.
  std::string instance_digest;
};

struct PropertySummary {
  PropertyInfo info;
  double tolerance = 0.0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  /// Largest |slack| for identities, smallest slack for inequalities.
  double worst_slack = 0.0;
  /// Failing checks sorted by trial index, at most max_failures.
  std::vector<CheckResult> failures;
};

struct VerificationReport {
  SweepConfig config;
  std::vector<PropertySummary> properties;

  bool all_passed() const noexcept;
};

/// Child seed for one (property, trial) pair; counterexamples are
/// reproducible from these three values alone.
RngSeed derive_seed(RngSeed master, const std::string& property, std::size_t trial) noexcept;

/// Evaluates one trial of one property.
CheckResult run_check(const SweepConfig& config, const std::string& property, std::size_t trial);

/// Runs every selected property for `config.trials` trials. Deterministic
/// for a fixed config, whatever the thread count.
VerificationReport run_suite(const SweepConfig& config);

/// Report as JSON text: {config, properties: [{name, pass, fail,
/// worst_slack, failures}], summary}.
std::string report_to_json(const VerificationReport& report, int indent = 2);

}  // namespace entrokit
