// SPDX-License-Identifier: Apache-2.0
#include "esem/trace_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace esem {

using json = nlohmann::ordered_json;

namespace {

json measure_json(const std::optional<MeasureValue>& m) {
  if (!m) return nullptr;
  return json::array({m->sigma, m->theta});
}

std::optional<MeasureValue> measure_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("bad measure");
  return MeasureValue{j[0].get<long>(), j[1].get<long>()};
}

}  // namespace

std::string serialize_trace(const TraceDocument& t) {
  std::string out;
  json h;
  h["record"] = "header";
  h["version"] = t.header.version;
  h["problemDigest"] = t.header.problem_digest;
  h["scheduler"] = t.header.scheduler;
  h["seed"] = t.header.seed;
  h["initialDigest"] = t.header.initial_digest;
  out += h.dump() + "\n";
  for (const auto& s : t.steps) {
    json j;
    j["record"] = "step";
    j["index"] = s.index;
    j["rule"] = s.rule;
    j["choice"] = s.choice;
    j["before"] = s.before;
    j["after"] = s.after;
    j["measureBefore"] = measure_json(s.measure_before);
    j["measureAfter"] = measure_json(s.measure_after);
    j["violations"] = s.violations;
    out += j.dump() + "\n";
  }
  json f;
  f["record"] = "final";
  f["terminal"] = t.terminal;
  f["steps"] = t.steps.size();
  f["finalMeasure"] = measure_json(t.final_measure);
  out += f.dump() + "\n";
  return out;
}

TraceDocument parse_trace(const std::string& text) {
  TraceDocument t;
  std::istringstream in(text);
  std::string line;
  bool header = false, final = false;
  long declared = -1;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (final) throw std::runtime_error("line " + std::to_string(lineno) + ": record after final");
    json j;
    try {
      j = json::parse(line);
      std::string kind = j.at("record").get<std::string>();
      if (kind == "header") {
        if (header) throw std::runtime_error("duplicate header");
        header = true;
        t.header.version = j.at("version").get<int>();
        t.header.problem_digest = j.at("problemDigest").get<std::string>();
        t.header.scheduler = j.at("scheduler").get<std::string>();
        t.header.seed = j.at("seed").get<std::uint64_t>();
        t.header.initial_digest = j.at("initialDigest").get<std::string>();
      } else if (kind == "step") {
        if (!header) throw std::runtime_error("step before header");
        TraceStepRecord s;
        s.index = j.at("index").get<long>();
        s.rule = j.at("rule").get<std::string>();
        s.choice = j.at("choice").get<std::string>();
        s.before = j.at("before").get<std::string>();
        s.after = j.at("after").get<std::string>();
        s.measure_before = measure_from(j.at("measureBefore"));
        s.measure_after = measure_from(j.at("measureAfter"));
        s.violations = j.at("violations").get<std::vector<std::string>>();
        t.steps.push_back(std::move(s));
      } else if (kind == "final") {
        if (!header) throw std::runtime_error("final before header");
        final = true;
        t.terminal = j.at("terminal").get<std::string>();
        declared = j.at("steps").get<long>();
        t.final_measure = measure_from(j.at("finalMeasure"));
      } else {
        throw std::runtime_error("unknown record " + kind);
      }
    } catch (const json::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header || !final) throw std::runtime_error("incomplete trace");
  if (declared != static_cast<long>(t.steps.size())) throw std::runtime_error("step count mismatch");
  std::string prev = t.header.initial_digest;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (t.steps[i].index != static_cast<long>(i)) throw std::runtime_error("step index out of order");
    if (t.steps[i].before != prev) throw std::runtime_error("digest chain broken at step " + std::to_string(i));
    prev = t.steps[i].after;
  }
  return t;
}

}  // namespace esem
