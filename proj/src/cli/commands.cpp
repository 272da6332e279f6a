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

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qfreq/cli.hpp"
#include "qfreq/errors.hpp"
#include "qfreq/metrology.hpp"
#include "qfreq/parallel.hpp"

namespace qfreq::cli {

namespace {

constexpr int kVerifyMaxQubits = 6;

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
  }
  if (points > 1) g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = points == 1 ? lo : std::exp(a + (b - a) * i / (points - 1));
  }
  g.front() = lo;
  if (points > 1) g.back() = hi;
  return g;
}

std::string fit_record(const char* quantity, const ScalingFit& f) {
  std::ostringstream s;
  s << "fit quantity=" << quantity << " exponent=" << format_number(f.exponent)
    << " intercept=" << format_number(f.intercept) << " r_squared=" << format_number(f.r_squared)
    << " n_min=" << format_number(f.n_min) << " n_max=" << format_number(f.n_max);
  return s.str();
}

const char* mode_name(FisherMode m) { return m == FisherMode::exact ? "exact" : "small-r"; }
const char* objective_name(Objective o) { return o == Objective::eta_time ? "time" : "energy"; }

}  // namespace

CsvTable cmd_channel(const RunConfig& c) {
  const NoiseParams p = c.params();
  const double t_max = c.t_max > 0.0 ? c.t_max : 10.0 / c.lambda;
  CsvTable table("channel", {"t", "eta_par", "eta_perp", "kappa", "gamma_plus", "gamma_minus",
                             "gamma_z", "cp_margin"});
  for (double t : linear_grid(0.0, t_max, c.t_points)) {
    const ChannelSnapshot s = channel_at(p, t);
    TimeLocalRates r;
    try {
      r = time_local_rates(p, t);
    } catch (const SingularRateError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r = {nan, nan, nan};
    }
    table.add_row({t, s.eta_par, s.eta_perp, s.kappa, r.gamma_plus, r.gamma_minus, r.gamma_z,
                   cp_check(s).margin});
  }
  return table;
}

CsvTable cmd_fisher(const RunConfig& c) {
  const NoiseParams p = c.params();
  const int n = c.n.value_or(9);
  MeasurementSetting base = optimal_setting(n, c.omega, c.t);
  const double q_exact = qfi_exact(p, n, c.t);
  const double q_small = qfi_small_R(p, n, c.t);
  const std::vector<double> zeta2 = linear_grid(0.0, 2.0 * std::numbers::pi, c.zeta2_points);
  struct Row {
    double exact = 0.0, small = 0.0;
  };
  const auto rows = parallel_map<Row>(zeta2.size(), c.jobs, [&](std::size_t i) {
    MeasurementSetting s = base;
    s.zeta2 = zeta2[i];
    return Row{cfi(p, n, c.t, s, DerivativeMode::finite_difference),
               cfi(p, n, c.t, s, DerivativeMode::frozen_R_epsilon)};
  });
  CsvTable table("fisher", {"zeta2", "cfi_exact", "cfi_small_R", "qfi_exact", "qfi_small_R"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.add_row({zeta2[i], rows[i].exact, rows[i].small, q_exact, q_small});
  }
  return table;
}

CsvTable cmd_scan_size(const RunConfig& c) {
  const NoiseParams p = c.params();
  std::vector<int> sizes;
  for (int n = c.n_min; n <= c.n_max; n += c.n_step) sizes.push_back(n);
  TimeSearchOptions opts;
  opts.t_max = c.t_max;
  struct Row {
    OptimalTime time, energy;
    EnergyLedger ledger;
    double fisher = 0.0;
  };
  const auto rows = parallel_map<Row>(sizes.size(), c.jobs, [&](std::size_t i) {
    const int n = sizes[i];
    Row r;
    r.time = optimal_time(p, n, Objective::eta_time, c.fisher_mode, opts);
    r.energy = optimal_time(p, n, Objective::eta_energy, c.fisher_mode, opts);
    const double ts = r.energy.t_star;
    r.ledger = ledger(p, n, ts, optimal_setting(n, c.omega, ts));
    r.fisher = fisher_value(p, n, ts, c.fisher_mode);
    return r;
  });
  CsvTable table("scan-size", {"n", "t_star_time", "eta_time", "t_star_energy", "omega_t_star",
                               "eta_energy", "e_init", "e_meas", "fisher"});
  std::vector<std::pair<double, double>> fit_time, fit_energy, fit_tstar;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const double n = sizes[i];
    table.add_row({n, r.time.t_star, r.time.value, r.energy.t_star, c.omega * r.energy.t_star,
                   r.energy.value, r.ledger.e_init, r.ledger.e_meas, r.fisher});
    fit_time.emplace_back(n, r.time.value);
    fit_energy.emplace_back(n, r.energy.value);
    fit_tstar.emplace_back(n, c.omega * r.energy.t_star);
  }
  if (sizes.size() >= 3) {
    table.add_footer(fit_record("eta_time", scaling_fit(fit_time)));
    table.add_footer(fit_record("eta_energy", scaling_fit(fit_energy)));
    table.add_footer(fit_record("omega_t_star", scaling_fit(fit_tstar)));
  }
  return table;
}

CsvTable cmd_scan_lambda(const RunConfig& c) {
  const int n = c.n.value_or(2);
  const std::vector<double> lambdas = log_grid(c.lambda_min, c.lambda_max, c.lambda_points);
  TimeSearchOptions opts;
  opts.t_max = c.t_max;
  const auto rows = parallel_map<OptimalTime>(lambdas.size(), c.jobs, [&](std::size_t i) {
    return optimal_time(c.params().with_lambda(lambdas[i]), n, Objective::eta_energy,
                        c.fisher_mode, opts);
  });
  CsvTable table("scan-lambda", {"lambda", "t_star", "eta_energy"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.add_row({lambdas[i], rows[i].t_star, rows[i].value});
  }
  return table;
}

CsvTable cmd_optimal_time(const RunConfig& c) {
  const int n = c.n.value_or(9);
  TimeSearchOptions opts;
  opts.t_max = c.t_max;
  const OptimalTime r = optimal_time(c.params(), n, c.objective, c.fisher_mode, opts);
  CsvTable table("optimal-time", {"n", "objective", "fisher_mode", "t_star", "value",
                                  "bracket_lo", "bracket_hi", "steps"});
  table.add_text_row({std::to_string(n), objective_name(c.objective), mode_name(c.fisher_mode),
                      format_number(r.t_star), format_number(r.value),
                      format_number(r.bracket_lo), format_number(r.bracket_hi),
                      std::to_string(r.steps)});
  return table;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  oracle::VerifyOptions o;
  o.seed = c.seed;
  o.draws = c.draws;
  o.fault = c.fault;
  if (c.n) {
    if (*c.n > kVerifyMaxQubits) {
      std::ostringstream msg;
      msg << "verify: n = " << *c.n << " exceeds the dense verification limit of "
          << kVerifyMaxQubits << " qubits";
      throw ConfigError(msg.str());
    }
    o.n_max = *c.n;
    o.n_min = std::min(o.n_min, *c.n);
  }
  const oracle::VerifyReport report = oracle::verify_equivalence(o);
  for (const oracle::CheckResult& check : report.checks) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name
        << " max_deviation=" << format_number(check.max_deviation)
        << " tolerance=" << check.tolerance
        << (check.relative ? " (relative)" : " (absolute)") << '\n';
  }
  out << (report.all_passed() ? "verify: all checks passed" : "verify: FAILED") << " over "
      << report.draws << " draws, n in [" << o.n_min << ", " << o.n_max << "], seed " << c.seed
      << '\n';
  return report.all_passed() ? kOk : kVerificationFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qfreq: energy-aware frequency estimation with noisy GHZ-diagonal probes"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::string fisher_mode;
  std::string objective;
  std::string fault;
  int n_value = 0;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;

  auto add_common = [&](CLI::App* sub) {
    auto bind = [&](const char* name, auto member, const char* help) {
      CLI::Option* o = sub->add_option(name, flags.*member, help);
      overrides.emplace_back(o, [member, &flags](RunConfig& c) { c.*member = flags.*member; });
    };
    bind("--omega", &RunConfig::omega, "Atomic frequency omega");
    bind("--temp", &RunConfig::temperature, "Bath temperature T");
    bind("--gamma0", &RunConfig::gamma0, "Bare decay rate gamma0");
    bind("--lambda", &RunConfig::lambda, "Inverse memory time lambda");
    bind("--n-min", &RunConfig::n_min, "Smallest probe size of a scan");
    bind("--n-max", &RunConfig::n_max, "Largest probe size of a scan");
    bind("--n-step", &RunConfig::n_step, "Probe size step of a scan");
    bind("--t", &RunConfig::t, "Interrogation time");
    bind("--t-max", &RunConfig::t_max, "Upper end of the time grid or search");
    bind("--t-points", &RunConfig::t_points, "Number of time points");
    bind("--zeta2-points", &RunConfig::zeta2_points, "Number of zeta2 points in [0, 2 pi]");
    bind("--lambda-min", &RunConfig::lambda_min, "Smallest lambda of a scan");
    bind("--lambda-max", &RunConfig::lambda_max, "Largest lambda of a scan");
    bind("--lambda-points", &RunConfig::lambda_points, "Number of lambda points (log grid)");
    bind("--seed", &RunConfig::seed, "Seed for randomized verification");
    bind("--jobs", &RunConfig::jobs, "Worker threads for sweeps");
    bind("--draws", &RunConfig::draws, "Random draws for verify");
    bind("--out", &RunConfig::out, "Output CSV file (default: standard output)");
    CLI::Option* n_opt = sub->add_option("--n", n_value, "Probe size");
    overrides.emplace_back(n_opt, [&n_value](RunConfig& c) { c.n = n_value; });
    CLI::Option* fm = sub->add_option("--fisher-mode", fisher_mode, "Fisher value: exact or small-r")
                          ->check(CLI::IsMember({"exact", "small-r"}));
    overrides.emplace_back(fm, [&fisher_mode](RunConfig& c) {
      c.fisher_mode = fisher_mode == "exact" ? FisherMode::exact : FisherMode::small_R;
    });
    CLI::Option* ob = sub->add_option("--objective", objective, "Efficiency to maximise: time or energy")
                          ->check(CLI::IsMember({"time", "energy"}));
    overrides.emplace_back(ob, [&objective](RunConfig& c) {
      c.objective = objective == "time" ? Objective::eta_time : Objective::eta_energy;
    });
    sub->add_option("--config", config_path, "JSON file with configuration keys");
  };

  CLI::App* channel = app.add_subcommand("channel", "Channel parameters and rates over time");
  CLI::App* fisher = app.add_subcommand("fisher", "Fisher information versus zeta2");
  CLI::App* scan_size = app.add_subcommand("scan-size", "Optimal efficiencies versus probe size");
  CLI::App* scan_lambda = app.add_subcommand("scan-lambda", "Optimal energy efficiency versus lambda");
  CLI::App* opt_time = app.add_subcommand("optimal-time", "Optimal interrogation time");
  CLI::App* verify = app.add_subcommand("verify", "Check the block model against the dense oracle");
  for (CLI::App* sub : {channel, fisher, scan_size, scan_lambda, opt_time, verify}) add_common(sub);
  CLI::Option* fault_opt = verify->add_option("--inject-fault", fault, "Testing hook: coherence-sign")
                               ->check(CLI::IsMember({"coherence-sign"}));
  fault_opt->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qfreq: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      apply_json(config, buf.str());
    }
    for (auto& [option, apply] : overrides) {
      if (option->count() > 0) apply(config);
    }
    if (fault_opt->count() > 0) config.fault = oracle::Fault::flip_coherence_sign;
    validate(config);

    std::ostringstream report;
    std::optional<CsvTable> table;
    int code = kOk;
    if (channel->parsed()) table = cmd_channel(config);
    else if (fisher->parsed()) table = cmd_fisher(config);
    else if (scan_size->parsed()) table = cmd_scan_size(config);
    else if (scan_lambda->parsed()) table = cmd_scan_lambda(config);
    else if (opt_time->parsed()) table = cmd_optimal_time(config);
    else code = cmd_verify(config, report);
    if (table) table->write(report, config);

    if (config.out.empty()) {
      out << report.str();
    } else {
      std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot open output file '" + config.out + "'");
      file << report.str();
      file.flush();
      if (!file) throw IoError("failed writing output file '" + config.out + "'");
    }
    return code;
  } catch (const IoError& e) {
    err << "qfreq: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "qfreq: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SizeError& e) {
    err << "qfreq: size error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "qfreq: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace qfreq::cli
