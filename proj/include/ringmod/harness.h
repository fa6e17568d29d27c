#ifndef RINGMOD_HARNESS_H_
#define RINGMOD_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringmod/bounds.h"

namespace ringmod {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum class Provenance { kPaper, kTrivial, kDerived };
enum class CheckVerdict { kPass, kFail, kInconclusiveAllowed };

std::string to_string(Provenance p);
std::string to_string(CheckVerdict v);

struct CheckRecord {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  Provenance provenance = Provenance::kTrivial;
  CheckVerdict verdict = CheckVerdict::kFail;
  std::string note;
};

// Knobs a user may tighten. Tolerances are divided by tol_scale and grid
// counts multiplied by grid_scale; both must be >= 1.
struct HarnessConfig {
  double tol_scale = 1.0;
  int grid_scale = 1;
  int jobs = 1;

  void validate() const;
  std::string canonical() const;
  std::uint64_t hash() const;
};

struct Report {
  std::string scenario;
  std::vector<std::string> tags;
  std::vector<CheckRecord> checks;
  double wall_time = 0.0;
  std::string version = kToolkitVersion;
  std::uint64_t config_hash = 0;

  bool passed() const;
};

struct AggregateReport {
  std::vector<Report> reports;
  std::string filter;
  double wall_time = 0.0;
  std::uint64_t config_hash = 0;

  bool passed() const;
};

// Collects checks for one scenario run. Every helper catches exceptions
// thrown while computing the actual value and records them as failures.
class ScenarioContext {
 public:
  explicit ScenarioContext(const HarnessConfig& config) : config_(config) {}

  const HarnessConfig& config() const { return config_; }
  double tol(double base) const { return base / config_.tol_scale; }
  int grid(int base) const { return base * config_.grid_scale; }

  // |actual - expected| <= tolerance (already scaled by the caller).
  void near(const std::string& name, double expected, double tolerance, Provenance provenance,
            const std::function<double()>& actual);
  // |actual / expected - 1| <= tolerance.
  void near_rel(const std::string& name, double expected, double tolerance,
                Provenance provenance, const std::function<double()>& actual);
  // Records a boolean property as 1 (expected) vs 0.
  void holds(const std::string& name, Provenance provenance, const std::function<bool()>& cond);
  // Records a bound report: pass for kHolds, inconclusive-allowed for
  // kInconclusive when `allow_inconclusive`, failure otherwise.
  void bound(const std::string& name, Provenance provenance, bool allow_inconclusive,
             const std::function<BoundReport()>& compute);
  void add(CheckRecord record) { checks_.push_back(std::move(record)); }

  std::vector<CheckRecord> take() { return std::move(checks_); }

 private:
  HarnessConfig config_;
  std::vector<CheckRecord> checks_;
};

struct Scenario {
  std::string id;
  std::vector<std::string> tags;
  std::string summary;
  std::function<void(ScenarioContext&)> body;
};

// Code-defined scenarios, sorted by id.
const std::vector<Scenario>& scenario_registry();

std::vector<std::string> scenario_ids(const std::optional<std::string>& tag = std::nullopt);

// Throws std::out_of_range for an unknown id.
Report run_scenario(const std::string& id, const HarnessConfig& config = {});

// Runs every scenario carrying `tag` (all when empty) on config.jobs
// threads. Reports are ordered by scenario id.
AggregateReport run_all(const std::optional<std::string>& tag = std::nullopt,
                        const HarnessConfig& config = {});

// Deterministic JSON apart from the wall_time fields.
std::string report_json(const Report& report);
std::string report_json(const AggregateReport& report);

// 0 when every scenario passed, 1 otherwise.
int exit_code(const AggregateReport& report);

}  // namespace ringmod

#endif  // RINGMOD_HARNESS_H_
