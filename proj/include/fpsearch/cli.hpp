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

/**
 * @file cli.hpp
 * @brief The `fpsearch` command line, callable in-process for testing.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpsearch/errors.hpp"
#include "fpsearch/io.hpp"
#include "fpsearch/schedule.hpp"
#include "fpsearch/sim2d.hpp"
#include "fpsearch/statevector.hpp"
#include "fpsearch/verify.hpp"

namespace fpsearch::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string output;
  std::string format;
};

struct ScheduleOptions {
  double w = 0.0;
  std::optional<double> delta;
  std::optional<int> l;

  [[nodiscard]] AngleSchedule build() const {
    if (!(w > 0.0 && w < 1.0)) throw UsageError("--w must lie in the open interval (0, 1)");
    if (l) {
      if (*l < 1) throw UsageError("--l must be >= 1");
      auto schedule = make_schedule(w, *l);
      schedule.delta = delta;
      return schedule;
    }
    if (!delta) throw UsageError("one of --delta or --l is required");
    if (!(*delta > 0.0 && *delta < 1.0)) throw UsageError("--delta must lie in the open interval (0, 1)");
    return make_schedule(SearchParams{w, *delta});
  }
};

inline void add_schedule_options(CLI::App& sub, ScheduleOptions& opts) {
  sub.add_option("--w", opts.w, "Lower bound on the marked amplitude, in (0, 1)")->required();
  sub.add_option("--delta", opts.delta, "Target failure amplitude, in (0, 1)");
  sub.add_option("--l", opts.l, "Explicit iteration count (overrides the minimal one)");
}

/// Sends text to --output when given, otherwise to `out`.
inline void emit(const GlobalOptions& global, std::ostream& out, const std::string& text) {
  if (global.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(global.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + global.output + "'");
  file << text;
  if (!file.flush()) throw IoError("failed writing output file '" + global.output + "'");
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline void require_json(const GlobalOptions& global, const char* command) {
  if (!global.format.empty() && global.format != "json") {
    throw UsageError(std::string(command) + " only supports --format json");
  }
}

inline int cmd_angles(const GlobalOptions& global, const ScheduleOptions& opts, std::ostream& out) {
  require_json(global, "angles");
  emit(global, out, dump(to_json(opts.build())));
  return kOk;
}

struct SweepOptions {
  ScheduleOptions schedule;
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  int points = 500;
};

inline constexpr double kSweepTolerance = 1e-9;

inline int cmd_sweep(const GlobalOptions& global, const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.points < 2 || opts.points > 1'000'000) throw UsageError("--points must lie in 2..1000000");
  if (!(opts.lambda_min >= 0.0 && opts.lambda_max <= 1.0 && opts.lambda_min < opts.lambda_max)) {
    throw UsageError("need 0 <= --lambda-min < --lambda-max <= 1");
  }
  const auto schedule = opts.schedule.build();
  const auto rows = sweep(schedule, opts.lambda_min, opts.lambda_max, opts.points);

  std::ostringstream text;
  if (global.format == "json") {
    text << dump(to_json(rows));
  } else {
    write_sweep_csv(text, rows);
  }
  emit(global, out, text.str());

  double worst_err = 0.0;
  std::optional<double> min_above_w;
  for (const auto& row : rows) {
    worst_err = std::max(worst_err, row.abs_err);
    if (row.lambda >= schedule.w) min_above_w = std::min(min_above_w.value_or(1.0), row.p_closed);
  }
  err << "l = " << schedule.l << ", max abs_err = " << format_double(worst_err);
  if (min_above_w) err << ", min P(lambda) over lambda >= w: " << format_double(*min_above_w);
  if (schedule.delta) err << " (guarantee sqrt(1 - delta^2) = " << format_double(std::sqrt(1.0 - *schedule.delta * *schedule.delta)) << ")";
  err << '\n';
  if (!(worst_err <= kSweepTolerance)) {
    err << "error: simulation and closed form disagree beyond " << kSweepTolerance << '\n';
    return kCheckFailed;
  }
  return kOk;
}

inline int cmd_simulate(const GlobalOptions& global, const ScheduleOptions& opts, double lambda, std::ostream& out) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
  const auto schedule = opts.build();
  const auto overlap = OverlapX::from_lambda(lambda);
  const auto state = run_search(overlap.x, schedule);
  const auto row = sweep_point(lambda, schedule);
  const Complex failure = failure_amplitude_recursion(overlap.x, schedule.phi);

  if (global.format == "csv") {
    std::ostringstream text;
    write_sweep_csv(text, std::span<const SweepRow>(&row, 1));
    emit(global, out, text.str());
    return kOk;
  }
  nlohmann::ordered_json j;
  j["lambda"] = lambda;
  j["x"] = overlap.x;
  j["w"] = schedule.w;
  if (schedule.delta) j["delta"] = *schedule.delta;
  j["l"] = schedule.l;
  j["L"] = schedule.L();
  j["p_sim"] = row.p_sim;
  j["p_closed"] = row.p_closed;
  j["abs_err"] = row.abs_err;
  j["failure_amplitude_sim"] = std::abs(state.r_amp);
  j["failure_amplitude_recursion"] = std::abs(failure);
  j["phase_oracle_calls"] = schedule.l;
  j["standard_oracle_calls"] = 2 * schedule.l;
  emit(global, out, dump(j));
  return kOk;
}

struct StateVectorOptions {
  ScheduleOptions schedule;
  int qubits = 0;
  std::vector<std::size_t> marked;
  std::optional<std::size_t> marked_count;
  std::uint64_t seed = 0;
};

inline int cmd_statevector(const GlobalOptions& global, const StateVectorOptions& opts, std::ostream& out) {
  require_json(global, "statevector");
  if (opts.qubits < 1 || opts.qubits > kMaxQubits) {
    throw UsageError("--qubits must lie in 1.." + std::to_string(kMaxQubits) + " (dense simulation cap n <= " +
                     std::to_string(kMaxQubits) + ")");
  }
  if (opts.marked.empty() == !opts.marked_count) throw UsageError("give exactly one of --marked or --marked-count");
  const auto schedule = opts.schedule.build();
  const MarkedSet marked = opts.marked_count ? random_marked_set(opts.qubits, *opts.marked_count, opts.seed)
                                             : MarkedSet(opts.qubits, opts.marked);
  const auto result = run_full_search(opts.qubits, marked, schedule);
  emit(global, out, dump(to_json(result, schedule.l)));
  return kOk;
}

/// Reports the pass count on `err`; exit 1 when any check failed.
inline int verify_exit_code(const std::vector<CheckResult>& checks, std::ostream& err) {
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
  err << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

inline int cmd_verify(const GlobalOptions& global, const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  require_json(global, "verify");
  if (opts.max_L < 3 || opts.max_L > kMaxTangentLength || opts.max_L % 2 == 0) {
    throw UsageError("--max-L must be odd and lie in 3..25 (L must be odd)");
  }
  const auto checks = run_verification(opts);
  emit(global, out, dump(to_json(checks)));
  return verify_exit_code(checks, err);
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point quantum search: angle schedules, simulation and identity checks", "fpsearch"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--output", global.output, "Write the result to this path instead of stdout");
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  ScheduleOptions angles_opts;
  auto* angles = app.add_subcommand("angles", "Print the angle schedule as JSON");
  add_schedule_options(*angles, angles_opts);

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate P(lambda) by simulation and closed form");
  add_schedule_options(*sweep_cmd, sweep_opts.schedule);
  sweep_cmd->add_option("--lambda-min", sweep_opts.lambda_min, "Smallest lambda on the grid");
  sweep_cmd->add_option("--lambda-max", sweep_opts.lambda_max, "Largest lambda on the grid");
  sweep_cmd->add_option("--points", sweep_opts.points, "Number of grid points");

  ScheduleOptions simulate_opts;
  double lambda = 0.0;
  auto* simulate = app.add_subcommand("simulate", "Run the two-dimensional simulation at one lambda");
  add_schedule_options(*simulate, simulate_opts);
  simulate->add_option("--lambda", lambda, "Marked amplitude of the initial state")->required();

  StateVectorOptions sv_opts;
  auto* statevector = app.add_subcommand("statevector", "Run the full 2^n state-vector simulation");
  add_schedule_options(*statevector, sv_opts.schedule);
  statevector->add_option("--qubits", sv_opts.qubits, "Number of qubits n")->required();
  auto* marked_opt = statevector->add_option("--marked", sv_opts.marked, "Marked basis indices")->delimiter(',');
  statevector->add_option("--marked-count", sv_opts.marked_count, "Number of randomly chosen marked indices")
      ->excludes(marked_opt);
  statevector->add_option("--seed", sv_opts.seed, "Seed for --marked-count");

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run every identity check and print a JSON report");
  verify->add_option("--max-L", verify_opts.max_L, "Largest odd L to check (3..25)");
  verify->add_option("--seed", verify_opts.seed, "Seed for randomized checks");

  for (auto* sub : {angles, sweep_cmd, simulate, statevector, verify}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (angles->parsed()) return cmd_angles(global, angles_opts, out);
    if (sweep_cmd->parsed()) return cmd_sweep(global, sweep_opts, out, err);
    if (simulate->parsed()) return cmd_simulate(global, simulate_opts, lambda, out);
    if (statevector->parsed()) return cmd_statevector(global, sv_opts, out);
    if (verify->parsed()) return cmd_verify(global, verify_opts, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapabilityError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace fpsearch::cli
