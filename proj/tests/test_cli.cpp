// Copyright 2026 The ldp-rsfd Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rsfd/bench.hpp"
#include "rsfd/cli.hpp"

using namespace rsfd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("audit prints the golden ratios") {
  const auto r = cli({"audit", "--protocol", "rsfd-grr", "--d", "2", "--k", "2,2", "--eps", "0.693147"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("one-attribute max ratio: 1.999999") != std::string::npos);
  CHECK(r.out.find("any-pair max ratio: 2.999999") != std::string::npos);
  CHECK(r.out.find("notion,max_ratio,input,other,output\n") != std::string::npos);

  const auto exact = cli({"audit", "--protocol", "rsfd-grr", "--d", "2", "--k", "2", "--eps", "ln2",
                          "--neighboring", "one"});
  CHECK(exact.code == kExitOk);
  CHECK(exact.out.find("one-attribute max ratio: 2.000000000") != std::string::npos);
  CHECK(exact.out.find("any-pair") == std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  const auto budget = cli({"run", "--synthetic", "100,2,2x2", "--eps", "0", "--out", "x.csv"});
  CHECK(budget.code == kExitUsage);
  CHECK(budget.err.find("InvalidBudget") != std::string::npos);
  CHECK(cli({"run", "--bogus"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"audit", "--protocol", "nope", "--d", "1", "--k", "2", "--eps", "1"}).code == kExitUsage);
  CHECK(cli({"audit", "--protocol", "rsfd-grr", "--d", "3", "--k", "2,2", "--eps", "1"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("data errors exit 2") {
  const auto missing = cli({"run", "--dataset", "/nonexistent/rsfd.csv", "--eps", "ln2", "--runs", "1",
                            "--out", (fs::temp_directory_path() / "rsfd_cli_never.csv").string()});
  CHECK(missing.code == kExitData);
  CHECK(missing.err.find("FileNotFound") != std::string::npos);
  const auto big = cli({"audit", "--protocol", "rsfd-oue-z", "--d", "3", "--k", "10", "--eps", "1"});
  CHECK(big.code == kExitData);
}

TEST_CASE("run then summarize") {
  const auto dir = fs::temp_directory_path();
  const auto results = dir / "rsfd_cli_results.csv";
  const auto summary = dir / "rsfd_cli_summary.csv";
  const auto again = dir / "rsfd_cli_again.csv";
  const auto r = cli({"run", "--synthetic", "500,3,4x3", "--eps", "ln2,ln4", "--runs", "2", "--seed", "5",
                      "--solutions", "rsfd-adp,smp-adp", "--out", results.string(), "--summary",
                      summary.string(), "--no-timing"});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(results);
  const auto rows = read_results_csv(in);
  CHECK(rows.size() == 2u * 2u * 2u);
  CHECK(rows.front().solution == "smp-adp");

  const auto s = cli({"summarize", "--in", results.string(), "--out", again.string()});
  CHECK(s.code == kExitOk);
  CHECK(slurp(again) == slurp(summary));
  CHECK(slurp(summary).rfind(std::string(kAggregateHeader), 0) == 0);
  fs::remove(results);
  fs::remove(summary);
  fs::remove(again);
}
