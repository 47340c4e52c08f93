#pragma once

// Batch front-end: parse a JSON job description, run the requested tasks
// (check / solve / verify / vector / spectrum) and emit a machine-readable
// report.

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace spinbench {

struct JobConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobResult {
  nlohmann::json report;
  bool all_pass = true;
};

// Parse and validate a config document; throws JobConfigError on schema
// violations.
JobResult run(const nlohmann::json& config);

// Serialize: "json" writes the full report, "csv" flattens the root tables
// (columns level, index, re, im, residual).
void emit_report(const nlohmann::json& report, const std::string& format,
                 const std::string& path);

std::string report_to_csv(const nlohmann::json& report);

// Canonical byte serialization used for determinism comparisons
// (timings stripped).
std::string report_bytes(const nlohmann::json& report);

}  // namespace spinbench
