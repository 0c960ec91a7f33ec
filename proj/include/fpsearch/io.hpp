// Copyright 2026 The fpsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and CSV encodings of schedules, sweeps and state-vector runs.

#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "fpsearch/schedule.hpp"
#include "fpsearch/sim2d.hpp"
#include "fpsearch/statevector.hpp"

namespace fpsearch {

inline nlohmann::ordered_json to_json(const AngleSchedule& schedule) {
  nlohmann::ordered_json j;
  j["w"] = schedule.w;
  if (schedule.delta) j["delta"] = *schedule.delta;
  j["l"] = schedule.l;
  j["L"] = schedule.L();
  j["alpha_radians"] = schedule.alpha;
  j["beta_radians"] = schedule.beta;
  j["phi_radians"] = schedule.phi;
  return j;
}

inline AngleSchedule schedule_from_json(const nlohmann::json& j) {
  AngleSchedule schedule;
  schedule.w = j.at("w").get<double>();
  if (j.contains("delta")) schedule.delta = j.at("delta").get<double>();
  schedule.l = j.at("l").get<int>();
  schedule.alpha = j.at("alpha_radians").get<std::vector<double>>();
  schedule.beta = j.at("beta_radians").get<std::vector<double>>();
  schedule.phi = j.at("phi_radians").get<std::vector<double>>();
  if (j.at("L").get<int>() != schedule.L() || schedule.alpha.size() != static_cast<std::size_t>(schedule.l) ||
      schedule.beta.size() != static_cast<std::size_t>(schedule.l) ||
      schedule.phi.size() != static_cast<std::size_t>(2 * schedule.l)) {
    throw DomainError("schedule JSON has inconsistent lengths");
  }
  return schedule;
}

inline nlohmann::ordered_json to_json(const FullSearchResult& result, int l) {
  nlohmann::ordered_json j;
  j["lambda"] = result.lambda;
  j["l"] = l;
  j["success_probability"] = result.success_probability;
  j["phase_oracle_calls"] = result.phase_oracle_calls;
  j["standard_oracle_calls"] = result.standard_oracle_calls;
  return j;
}

/// Shortest-free, 17-significant-digit rendering used in every CSV cell.
inline std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

inline constexpr const char* kSweepCsvHeader = "lambda,p_sim,p_closed,abs_err";

inline void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    out << format_double(row.lambda) << ',' << format_double(row.p_sim) << ',' << format_double(row.p_closed) << ','
        << format_double(row.abs_err) << '\n';
  }
}

inline nlohmann::ordered_json to_json(std::span<const SweepRow> rows) {
  auto array = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    array.push_back(nlohmann::ordered_json{
        {"lambda", row.lambda}, {"p_sim", row.p_sim}, {"p_closed", row.p_closed}, {"abs_err", row.abs_err}});
  }
  return array;
}

}  // namespace fpsearch
