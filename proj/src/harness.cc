#include "ringmod/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace ringmod {

namespace {

using Json = nlohmann::ordered_json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CheckRecord failed_record(const std::string& name, double expected, double tolerance,
                          Provenance provenance, const std::exception& e) {
  CheckRecord r;
  r.name = name;
  r.expected = expected;
  r.actual = std::nan("");
  r.tolerance = tolerance;
  r.provenance = provenance;
  r.verdict = CheckVerdict::kFail;
  r.note = std::string("error: ") + e.what();
  return r;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["expected"] = number(c.expected);
    j["actual"] = number(c.actual);
    j["tolerance"] = number(c.tolerance);
    j["provenance"] = to_string(c.provenance);
    j["verdict"] = to_string(c.verdict);
    if (!c.note.empty()) j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  Json j;
  j["scenario"] = r.scenario;
  j["tags"] = r.tags;
  j["verdict"] = r.passed() ? "pass" : "fail";
  j["version"] = r.version;
  j["config_hash"] = hex64(r.config_hash);
  j["checks"] = std::move(checks);
  j["wall_time"] = r.wall_time;
  return j;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kPaper:
      return "paper";
    case Provenance::kTrivial:
      return "trivial";
    case Provenance::kDerived:
      return "derived";
  }
  return "?";
}

std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::kPass:
      return "pass";
    case CheckVerdict::kFail:
      return "fail";
    case CheckVerdict::kInconclusiveAllowed:
      return "inconclusive-allowed";
  }
  return "?";
}

void HarnessConfig::validate() const {
  if (!(tol_scale >= 1.0) || !std::isfinite(tol_scale))
    throw std::invalid_argument("tol-scale must be a finite number >= 1");
  if (grid_scale < 1 || grid_scale > 8) throw std::invalid_argument("grid-scale must be in [1, 8]");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

// jobs only affects scheduling, so it is left out.
std::string HarnessConfig::canonical() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "tol_scale=%.17g;grid_scale=%d;version=%s", tol_scale,
                grid_scale, kToolkitVersion);
  return buf;
}

std::uint64_t HarnessConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.verdict != CheckVerdict::kFail; });
}

bool AggregateReport::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
}

void ScenarioContext::near(const std::string& name, double expected, double tolerance,
                           Provenance provenance, const std::function<double()>& actual) {
  try {
    CheckRecord r;
    r.name = name;
    r.expected = expected;
    r.actual = actual();
    r.tolerance = tolerance;
    r.provenance = provenance;
    r.verdict = std::abs(r.actual - expected) <= tolerance ? CheckVerdict::kPass
                                                           : CheckVerdict::kFail;
    checks_.push_back(std::move(r));
  } catch (const std::exception& e) {
    checks_.push_back(failed_record(name, expected, tolerance, provenance, e));
  }
}

void ScenarioContext::near_rel(const std::string& name, double expected, double tolerance,
                               Provenance provenance, const std::function<double()>& actual) {
  try {
    CheckRecord r;
    r.name = name;
    r.expected = expected;
    r.actual = actual();
    r.tolerance = tolerance;
    r.provenance = provenance;
    r.note = "relative";
    r.verdict = std::abs(r.actual - expected) <= tolerance * std::abs(expected)
                    ? CheckVerdict::kPass
                    : CheckVerdict::kFail;
    checks_.push_back(std::move(r));
  } catch (const std::exception& e) {
    checks_.push_back(failed_record(name, expected, tolerance, provenance, e));
  }
}

void ScenarioContext::holds(const std::string& name, Provenance provenance,
                            const std::function<bool()>& cond) {
  try {
    CheckRecord r;
    r.name = name;
    r.expected = 1.0;
    r.actual = cond() ? 1.0 : 0.0;
    r.tolerance = 0.0;
    r.provenance = provenance;
    r.verdict = r.actual == 1.0 ? CheckVerdict::kPass : CheckVerdict::kFail;
    checks_.push_back(std::move(r));
  } catch (const std::exception& e) {
    checks_.push_back(failed_record(name, 1.0, 0.0, provenance, e));
  }
}

void ScenarioContext::bound(const std::string& name, Provenance provenance,
                            bool allow_inconclusive,
                            const std::function<BoundReport()>& compute) {
  try {
    BoundReport b = compute();
    CheckRecord r;
    r.name = name;
    // left is the lower side; actual is the bracketed quantity when there is
    // one, else the upper side
    r.expected = b.left;
    r.actual = b.middle ? b.middle.value() : b.right;
    r.tolerance = b.error;
    r.provenance = provenance;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s left=%.12g right=%.12g bound=%s", b.id.c_str(), b.left,
                  b.right, to_string(b.verdict).c_str());
    r.note = buf;
    if (b.verdict == Verdict::kHolds)
      r.verdict = CheckVerdict::kPass;
    else if (b.verdict == Verdict::kInconclusive && allow_inconclusive)
      r.verdict = CheckVerdict::kInconclusiveAllowed;
    else
      r.verdict = CheckVerdict::kFail;
    checks_.push_back(std::move(r));
  } catch (const std::exception& e) {
    checks_.push_back(failed_record(name, 0.0, 0.0, provenance, e));
  }
}

std::vector<std::string> scenario_ids(const std::optional<std::string>& tag) {
  std::vector<std::string> ids;
  for (const auto& s : scenario_registry()) {
    if (tag && !tag->empty() &&
        std::find(s.tags.begin(), s.tags.end(), *tag) == s.tags.end())
      continue;
    ids.push_back(s.id);
  }
  return ids;
}

Report run_scenario(const std::string& id, const HarnessConfig& config) {
  config.validate();
  const auto& registry = scenario_registry();
  auto it = std::find_if(registry.begin(), registry.end(),
                         [&](const Scenario& s) { return s.id == id; });
  if (it == registry.end()) throw std::out_of_range("unknown scenario: " + id);
  auto start = std::chrono::steady_clock::now();
  ScenarioContext ctx(config);
  Report report;
  report.scenario = it->id;
  report.tags = it->tags;
  report.config_hash = config.hash();
  try {
    it->body(ctx);
  } catch (const std::exception& e) {
    ctx.add(failed_record("scenario", 0.0, 0.0, Provenance::kTrivial, e));
  }
  report.checks = ctx.take();
  if (report.checks.empty()) {
    CheckRecord r;
    r.name = "scenario";
    r.note = "no checks recorded";
    report.checks.push_back(r);
  }
  report.wall_time = seconds_since(start);
  return report;
}

AggregateReport run_all(const std::optional<std::string>& tag, const HarnessConfig& config) {
  config.validate();
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> ids = scenario_ids(tag);
  AggregateReport agg;
  agg.filter = tag.value_or("");
  agg.config_hash = config.hash();
  agg.reports.resize(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < ids.size(); i = next++)
      agg.reports[i] = run_scenario(ids[i], config);
  };
  int threads = std::max(1, std::min<int>(config.jobs, static_cast<int>(ids.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  agg.wall_time = seconds_since(start);
  return agg;
}

std::string report_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string report_json(const AggregateReport& report) {
  Json j;
  j["version"] = kToolkitVersion;
  j["filter"] = report.filter;
  j["config_hash"] = hex64(report.config_hash);
  j["verdict"] = report.passed() ? "pass" : "fail";
  int passed = 0;
  for (const auto& r : report.reports) passed += r.passed() ? 1 : 0;
  j["scenarios_passed"] = passed;
  j["scenarios_total"] = report.reports.size();
  Json list = Json::array();
  for (const auto& r : report.reports) list.push_back(to_json(r));
  j["reports"] = std::move(list);
  j["wall_time"] = report.wall_time;
  return j.dump(2) + "\n";
}

int exit_code(const AggregateReport& report) { return report.passed() ? 0 : 1; }

}  // namespace ringmod
