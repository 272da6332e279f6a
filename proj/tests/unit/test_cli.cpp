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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qfreq/channel.hpp"
#include "qfreq/cli.hpp"

using namespace qfreq;
using namespace qfreq::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qfreq");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// data rows: everything after the header that is not a comment
std::vector<std::vector<double>> rows(const std::string& text) {
  std::vector<std::vector<double>> out;
  bool header = false;
  for (const std::string& l : lines(text)) {
    if (l.empty() || l[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<double> r;
    std::istringstream is(l);
    for (std::string cell; std::getline(is, cell, ',');) r.push_back(std::strtod(cell.c_str(), nullptr));
    out.push_back(r);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qfreq_test_" + name);
}

}  // namespace

TEST(FormatNumber, RoundTripsAndNormalisesZero) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::strtod(format_number(x).c_str(), nullptr), x);
  EXPECT_EQ(format_number(x), "0.30000000000000004");
}

TEST(Csv, HeaderLines) {
  const CliRun r = run({"channel", "--t-points", "5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::vector<std::string> l = lines(r.out);
  ASSERT_GE(l.size(), 3u);
  EXPECT_EQ(l[0], "# schema=1");
  EXPECT_EQ(l[1].rfind("# command=channel config={", 0), 0u);
  EXPECT_EQ(l[2], "t,eta_par,eta_perp,kappa,gamma_plus,gamma_minus,gamma_z,cp_margin");
}

TEST(Channel, DefaultRowCountAndIdentityRow) {
  const CliRun r = run({"channel"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(rows(r.out).size(), 100u);
  EXPECT_NE(r.out.find("\n0,1,1,0,0,0,0,0\n"), std::string::npos);
}

TEST(Channel, ValuesMatchLibrary) {
  const CliRun r = run({"channel", "--t-max", "2", "--t-points", "3"});
  ASSERT_EQ(r.code, kOk);
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 3u);
  const ChannelSnapshot s = channel_at(NoiseParams(1.0, 200.0, 1e-4, 5.0), 1.0);
  EXPECT_EQ(data[1][0], 1.0);
  EXPECT_EQ(data[1][1], s.eta_par);
  EXPECT_EQ(data[1][2], s.eta_perp);
  EXPECT_EQ(data[1][3], s.kappa);
}

TEST(Fisher, ColumnsAndProperties) {
  const CliRun r = run({"fisher", "--zeta2-points", "9"});
  ASSERT_EQ(r.code, kOk);
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 9u);
  for (const auto& row : data) {
    ASSERT_EQ(row.size(), 5u);
    EXPECT_LE(row[1], row[3] * (1 + 1e-9));
    EXPECT_LE(row[2], row[3] * (1 + 1e-9));
  }
  // rows 0, 4, 8 are zeta2 = 0, pi, 2 pi
  EXPECT_NEAR(data[0][1], data[4][1], 1e-9 * data[0][4]);
  EXPECT_NEAR(data[0][2], data[8][2], 1e-9 * data[0][4]);
  // n = 9: cfi_small_R touches qfi_small_R at zeta2 = 0
  EXPECT_NEAR(data[0][2], data[0][4], 1e-8 * data[0][4]);
}

TEST(ScanLambda, DecreasingAndSingleRow) {
  const CliRun r = run({"scan-lambda"});
  ASSERT_EQ(r.code, kOk);
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 12u);
  EXPECT_EQ(data.front()[0], 1.0);
  EXPECT_EQ(data.back()[0], 100.0);
  for (std::size_t i = 1; i < data.size(); ++i) EXPECT_LT(data[i][2], data[i - 1][2]);

  const CliRun one = run({"scan-lambda", "--lambda-min", "3", "--lambda-max", "3", "--lambda-points", "1"});
  ASSERT_EQ(one.code, kOk);
  EXPECT_EQ(rows(one.out).size(), 1u);

  const CliRun dense = run({"scan-lambda", "--lambda-points", "23"});
  const auto d2 = rows(dense.out);
  EXPECT_EQ(d2.front(), data.front());
  EXPECT_EQ(d2.back(), data.back());
}

TEST(ScanSize, FootersAndDecrease) {
  const CliRun r = run({"scan-size", "--n-min", "10", "--n-max", "40", "--n-step", "10"});
  ASSERT_EQ(r.code, kOk);
  const auto data = rows(r.out);
  ASSERT_EQ(data.size(), 4u);
  for (std::size_t i = 1; i < data.size(); ++i) EXPECT_LT(data[i][5], data[i - 1][5]);
  for (const char* q : {"fit quantity=eta_time ", "fit quantity=eta_energy ", "fit quantity=omega_t_star "}) {
    EXPECT_NE(r.out.find(std::string("# ") + q), std::string::npos) << q;
  }
}

TEST(OptimalTime, SingleRow) {
  const CliRun r = run({"optimal-time", "--n", "4", "--objective", "time"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto l = lines(r.out);
  EXPECT_EQ(l[2], "n,objective,fisher_mode,t_star,value,bracket_lo,bracket_hi,steps");
  EXPECT_EQ(l[3].rfind("4,time,small-r,", 0), 0u);
}

TEST(Determinism, ByteIdenticalOutputAcrossJobs) {
  const CliRun a = run({"scan-size", "--n-min", "2", "--n-max", "30", "--n-step", "4"});
  const CliRun b = run({"scan-size", "--n-min", "2", "--n-max", "30", "--n-step", "4", "--jobs", "4"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Config, JsonFileAndFlagPrecedence) {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"lambda": 7.5, "t_points": 4, "omega": 2.0})";
  }
  const CliRun r = run({"channel", "--config", path.string(), "--omega", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("\"lambda\":7.5"), std::string::npos);
  EXPECT_NE(r.out.find("\"omega\":3.0"), std::string::npos);
  EXPECT_EQ(rows(r.out).size(), 4u);
  std::filesystem::remove(path);
}

TEST(Config, Errors) {
  EXPECT_EQ(run({"channel", "--omega", "-1"}).code, kConfigError);
  EXPECT_EQ(run({"channel", "--bogus"}).code, kConfigError);
  EXPECT_EQ(run({"fisher", "--fisher-mode", "approximate"}).code, kConfigError);
  EXPECT_EQ(run({}).code, kConfigError);
  EXPECT_EQ(run({"--help"}).code, kOk);

  const auto path = temp_file("bad.json");
  {
    std::ofstream f(path);
    f << R"({"lamda": 7.5})";
  }
  EXPECT_EQ(run({"channel", "--config", path.string()}).code, kConfigError);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_EQ(run({"channel", "--config", path.string()}).code, kConfigError);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"channel", "--config", path.string()}).code, kIoError);
}

TEST(Output, FileWritingAndIoErrors) {
  const auto path = temp_file("out.csv");
  const CliRun r = run({"channel", "--t-points", "3", "--out", path.string()});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(rows(ss.str()).size(), 3u);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"channel", "--out", "/nonexistent-dir/x.csv"}).code, kIoError);
}

TEST(Verify, PassesFailsAndGuards) {
  const CliRun ok = run({"verify", "--draws", "20"});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(ok.out.find("PASS probabilities"), std::string::npos);
  EXPECT_NE(ok.out.find("PASS cfi"), std::string::npos);

  const CliRun bad = run({"verify", "--draws", "20", "--inject-fault", "coherence-sign"});
  EXPECT_EQ(bad.code, kVerificationFailure);
  EXPECT_NE(bad.out.find("FAIL probabilities"), std::string::npos);

  const CliRun big = run({"verify", "--n", "7"});
  EXPECT_EQ(big.code, kConfigError);
  EXPECT_NE(big.err.find("6 qubits"), std::string::npos);
}
