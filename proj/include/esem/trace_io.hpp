// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esem/termination.hpp"

namespace esem {

// Line-delimited JSON: one header record, one record per step, one final record.
struct TraceHeader {
  int version = 1;
  std::string problem_digest;
  std::string scheduler;
  std::uint64_t seed = 0;
  std::string initial_digest;

  bool operator==(const TraceHeader&) const = default;
};

struct TraceStepRecord {
  long index = 0;
  std::string rule;  // split | inst | bot | sat
  std::string choice;
  std::string before;
  std::string after;
  std::optional<MeasureValue> measure_before;
  std::optional<MeasureValue> measure_after;
  std::vector<std::string> violations;  // "check: detail"

  bool operator==(const TraceStepRecord&) const = default;
};

struct TraceDocument {
  TraceHeader header;
  std::vector<TraceStepRecord> steps;
  std::string terminal;  // saturated | inconsistent | budget-exhausted
  std::optional<MeasureValue> final_measure;

  bool operator==(const TraceDocument&) const = default;
};

std::string serialize_trace(const TraceDocument& t);

// Throws std::runtime_error on malformed input, a step count that does not
// match the final record, or a broken digest chain.
TraceDocument parse_trace(const std::string& text);

}  // namespace esem
