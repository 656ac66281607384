#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinwork/numdiff.hpp"

namespace spinwork {

inline constexpr const char* kToolVersion = "0.1.0";

// Outcome of one check.  `PaperDiscrepancy` is reserved for checks whose
// independently computed value disagrees with the published one; such a
// record must cite both numbers and is tallied apart from plain failures.
enum class Verdict { Pass, Fail, NotApplicable, PaperDiscrepancy };

const char* verdict_name(Verdict v);

// One verification record.  `claim` names the published statement the check
// answers to, `inputs` echoes the parameters that produced the numbers in
// `values`, and `notes` carries any free-form explanation (mandatory for
// not-applicable and paper-discrepancy verdicts).
struct CheckRecord {
  std::string id;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> values;
  Verdict verdict = Verdict::Pass;
  std::string notes;
};

struct SuiteConfig {
  std::string suite = "all";
  std::string model;  // optional focus; empty runs each suite's full roster
  // Headline tolerance override; 0 keeps every check's documented default.
  double tol = 0.0;
  // Step for the finite-difference curvature path (second-derivative tier).
  double fd_step = kFdStep2;
  int samples = 6;
  std::uint64_t seed = 11;
  std::string out;              // output path; empty writes to stdout
  std::string format = "json";  // "json" or "text-table"
  // Model / equation parameter overrides (a2, a, b, c, lambda, r).
  std::map<std::string, double> params;
};

struct Report {
  std::string version = kToolVersion;
  SuiteConfig config;
  std::vector<CheckRecord> checks;

  int count(Verdict v) const;
  bool ok() const;  // true when no check failed
};

std::vector<std::string> suite_names();

// Runs one suite (or "all") and returns the collected records, sorted by
// check id.  Throws std::invalid_argument for an unknown suite or model and
// for out-of-range configuration values.
Report run_suite(const SuiteConfig& config);

// Serialization.  JSON keys are emitted in a fixed order so that two runs of
// the same build with identical configuration produce byte-identical output.
std::string to_json(const Report& report);
std::string to_text_table(const Report& report);

// Configuration files are a single JSON object mirroring SuiteConfig field
// by field; unknown keys and ill-typed values are rejected.
SuiteConfig config_from_json(const std::string& text);

}  // namespace spinwork
