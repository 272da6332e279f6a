// Copyright 2026 The qfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfreq/optimize.hpp"
#include "qfreq/oracle.hpp"

namespace qfreq::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kIoError = 2, kVerificationFailure = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand needs. Defaults are the reference parameters
/// omega = 1, T = 200, gamma0 = 1e-4, lambda = 5.
struct RunConfig {
  double omega = 1.0;
  double temperature = 200.0;
  double gamma0 = 1e-4;
  double lambda = 5.0;

  std::optional<int> n;  // per-command default when unset
  int n_min = 10;
  int n_max = 200;
  int n_step = 10;

  double t = 1.0;
  double t_max = 0.0;  // 0: command default
  int t_points = 100;
  int zeta2_points = 721;

  double lambda_min = 1.0;
  double lambda_max = 100.0;
  int lambda_points = 12;

  FisherMode fisher_mode = FisherMode::small_R;
  Objective objective = Objective::eta_energy;

  std::string out;  // empty: standard output
  std::uint64_t seed = 20260101;
  int jobs = 1;
  int draws = 200;
  oracle::Fault fault = oracle::Fault::none;

  NoiseParams params() const { return {omega, temperature, gamma0, lambda}; }
};

/// Overlays the keys of a JSON object onto `config`. Unknown keys and wrong
/// types raise ConfigError.
void apply_json(RunConfig& config, const std::string& json_text);

/// Throws ConfigError for nonpositive physical parameters or empty ranges.
void validate(const RunConfig& config);

/// Compact JSON echo of the configuration, written into CSV headers.
std::string to_json(const RunConfig& config);

/// Numbers printed with 17 significant digits.
std::string format_number(double value);

/// Tabular output with a `# schema=1` line, a config comment, a header row,
/// data rows and optional trailing comment records.
class CsvTable {
 public:
  CsvTable(std::string command, std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_text_row(const std::vector<std::string>& cells);
  void add_footer(const std::string& line);
  std::size_t rows() const noexcept { return rows_.size(); }

  void write(std::ostream& os, const RunConfig& config) const;

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
  std::vector<std::string> footer_;
};

CsvTable cmd_channel(const RunConfig& config);
CsvTable cmd_fisher(const RunConfig& config);
CsvTable cmd_scan_size(const RunConfig& config);
CsvTable cmd_scan_lambda(const RunConfig& config);
CsvTable cmd_optimal_time(const RunConfig& config);

/// Runs the oracle checks and prints one line per check. Returns kOk or
/// kVerificationFailure.
int cmd_verify(const RunConfig& config, std::ostream& out);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfreq::cli
