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
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qfreq/cli.hpp"

namespace qfreq::cli {

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: key '" + key + "' has the wrong type");
  }
}

FisherMode parse_fisher_mode(const std::string& s) {
  if (s == "exact") return FisherMode::exact;
  if (s == "small-r") return FisherMode::small_R;
  throw ConfigError("config: fisher_mode must be 'exact' or 'small-r', got '" + s + "'");
}

Objective parse_objective(const std::string& s) {
  if (s == "time") return Objective::eta_time;
  if (s == "energy") return Objective::eta_energy;
  throw ConfigError("config: objective must be 'time' or 'energy', got '" + s + "'");
}

}  // namespace

void apply_json(RunConfig& c, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "omega") c.omega = get_as<double>(value, key);
    else if (key == "temp") c.temperature = get_as<double>(value, key);
    else if (key == "gamma0") c.gamma0 = get_as<double>(value, key);
    else if (key == "lambda") c.lambda = get_as<double>(value, key);
    else if (key == "n") c.n = get_as<int>(value, key);
    else if (key == "n_min") c.n_min = get_as<int>(value, key);
    else if (key == "n_max") c.n_max = get_as<int>(value, key);
    else if (key == "n_step") c.n_step = get_as<int>(value, key);
    else if (key == "t") c.t = get_as<double>(value, key);
    else if (key == "t_max") c.t_max = get_as<double>(value, key);
    else if (key == "t_points") c.t_points = get_as<int>(value, key);
    else if (key == "zeta2_points") c.zeta2_points = get_as<int>(value, key);
    else if (key == "lambda_min") c.lambda_min = get_as<double>(value, key);
    else if (key == "lambda_max") c.lambda_max = get_as<double>(value, key);
    else if (key == "lambda_points") c.lambda_points = get_as<int>(value, key);
    else if (key == "fisher_mode") c.fisher_mode = parse_fisher_mode(get_as<std::string>(value, key));
    else if (key == "objective") c.objective = parse_objective(get_as<std::string>(value, key));
    else if (key == "seed") c.seed = get_as<std::uint64_t>(value, key);
    else if (key == "jobs") c.jobs = get_as<int>(value, key);
    else if (key == "draws") c.draws = get_as<int>(value, key);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("config: ") + name + " must be positive and finite");
    }
  };
  positive(c.omega, "omega");
  positive(c.temperature, "temp");
  positive(c.lambda, "lambda");
  if (!(c.gamma0 >= 0.0) || !std::isfinite(c.gamma0)) {
    throw ConfigError("config: gamma0 must be nonnegative and finite");
  }
  positive(c.t, "t");
  if (c.t_max < 0.0) throw ConfigError("config: t_max must be nonnegative");
  if (c.n && *c.n < 1) throw ConfigError("config: n must be at least 1");
  if (c.n_min < 1 || c.n_max < c.n_min || c.n_step < 1) {
    throw ConfigError("config: n range must satisfy 1 <= n_min <= n_max and n_step >= 1");
  }
  if (c.t_points < 1) throw ConfigError("config: t_points must be at least 1");
  if (c.zeta2_points < 1) throw ConfigError("config: zeta2_points must be at least 1");
  positive(c.lambda_min, "lambda_min");
  if (c.lambda_max < c.lambda_min || c.lambda_points < 1) {
    throw ConfigError("config: lambda range is empty");
  }
  if (c.jobs < 1) throw ConfigError("config: jobs must be at least 1");
  if (c.draws < 1) throw ConfigError("config: draws must be at least 1");
}

std::string to_json(const RunConfig& c) {
  json doc = {
      {"omega", c.omega},
      {"temp", c.temperature},
      {"gamma0", c.gamma0},
      {"lambda", c.lambda},
      {"n_min", c.n_min},
      {"n_max", c.n_max},
      {"n_step", c.n_step},
      {"t", c.t},
      {"t_max", c.t_max},
      {"t_points", c.t_points},
      {"zeta2_points", c.zeta2_points},
      {"lambda_min", c.lambda_min},
      {"lambda_max", c.lambda_max},
      {"lambda_points", c.lambda_points},
      {"fisher_mode", c.fisher_mode == FisherMode::exact ? "exact" : "small-r"},
      {"objective", c.objective == Objective::eta_time ? "time" : "energy"},
      {"seed", c.seed},
  };
  if (c.n) doc["n"] = *c.n;
  // jobs and the output path do not change results, so they stay out
  return doc.dump();
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace qfreq::cli
