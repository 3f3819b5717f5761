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

#include "rsfd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsfd/audit.hpp"
#include "rsfd/bench.hpp"
#include "rsfd/rsfd.hpp"

namespace rsfd {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) items.push_back(item);
  return items;
}

std::string fixed9(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9f", value);
  return buffer;
}

std::string join_record(const Record& record) {
  std::string out;
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(record[i]);
  }
  return out;
}

struct RunArgs {
  std::string dataset;
  std::string columns;
  std::string missing = "?";
  std::string synthetic;
  std::string solutions;
  std::string eps = "ln2..ln7";
  int runs = 100;
  std::uint64_t seed = 42;
  std::string out;
  std::string summary;
  int workers = 1;
  bool no_timing = false;
};

struct AuditArgs {
  std::string protocol;
  int d = 0;
  std::string k;
  std::string eps;
  std::string neighboring = "both";
  std::int64_t limit = kDefaultChannelLimit;
};

struct SummarizeArgs {
  std::string in;
  std::string out;
};

ExperimentConfig build_config(const RunArgs& args) {
  ExperimentConfig config;
  if (args.dataset.empty() == args.synthetic.empty()) {
    throw UsageError("exactly one of --dataset or --synthetic is required");
  }
  if (!args.synthetic.empty()) {
    const auto parts = split_list(args.synthetic);
    if (parts.size() != 3) throw UsageError("--synthetic expects n,d,k-spec (e.g. 50000,5,10x5)");
    SyntheticSource source;
    try {
      source.n = std::stoll(parts[0]);
    } catch (const std::exception&) {
      throw UsageError("--synthetic: bad user count '" + parts[0] + "'");
    }
    int d = 0;
    try {
      d = std::stoi(parts[1]);
    } catch (const std::exception&) {
      throw UsageError("--synthetic: bad attribute count '" + parts[1] + "'");
    }
    source.cardinalities = parse_cardinalities(parts[2]);
    if (static_cast<int>(source.cardinalities.size()) != d) {
      throw UsageError("--synthetic: k-spec lists " + std::to_string(source.cardinalities.size()) +
                       " attributes but d=" + std::to_string(d));
    }
    config.dataset = std::move(source);
  } else {
    CsvSource source;
    source.path = args.dataset;
    source.options.missing_token = args.missing;
    if (!args.columns.empty()) source.options.columns = split_list(args.columns);
    config.dataset = std::move(source);
  }
  if (!args.solutions.empty()) {
    config.solutions.clear();
    for (const auto& name : split_list(args.solutions)) {
      config.solutions.push_back(parse_solution(name));
    }
  }
  config.epsilons = parse_epsilons(args.eps);
  config.runs = args.runs;
  config.seed = args.seed;
  config.workers = args.workers;
  config.record_wall_time = !args.no_timing;
  validate_config(config);
  return config;
}

int do_run(const RunArgs& args, std::ostream& out) {
  ExperimentConfig config;
  try {
    config = build_config(args);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto results = run_experiment(config);
  std::ofstream file(args.out);
  if (!file) throw Error(ErrorCode::kFileNotFound, "cannot write " + args.out);
  write_results_csv(file, results);
  if (!args.summary.empty()) {
    std::ofstream agg(args.summary);
    if (!agg) throw Error(ErrorCode::kFileNotFound, "cannot write " + args.summary);
    const auto rows = summarize(results);
    write_aggregate_csv(agg, rows);
  }
  out << "wrote " << results.size() << " result rows to " << args.out << '\n';
  return kExitOk;
}

int do_audit(const AuditArgs& args, std::ostream& out) {
  Solution protocol;
  AttributeSchema schema;
  double epsilon = 0;
  Neighboring notion = Neighboring::kAny;
  bool both = false;
  try {
    protocol = parse_solution(args.protocol);
    auto ks = parse_cardinalities(args.k);
    if (ks.size() == 1 && args.d > 1) ks.assign(static_cast<std::size_t>(args.d), ks.front());
    if (static_cast<int>(ks.size()) != args.d) {
      throw UsageError("--k lists " + std::to_string(ks.size()) + " cardinalities but --d is " +
                       std::to_string(args.d));
    }
    schema = AttributeSchema::from_cardinalities(ks);
    validate_schema(schema);
    const auto eps = parse_epsilons(args.eps);
    if (eps.size() != 1) throw UsageError("--eps takes a single budget for audit");
    epsilon = eps.front();
    check_budget(epsilon);
    if (args.neighboring == "both") {
      both = true;
    } else if (args.neighboring == "one") {
      notion = Neighboring::kOneAttribute;
    } else if (args.neighboring != "any") {
      throw UsageError("--neighboring must be one, any or both");
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const ChannelTable table = enumerate_channel(protocol, schema, epsilon, args.limit);
  const Protocol instance(protocol, schema, epsilon);
  out << "protocol: " << to_string(protocol) << '\n';
  out << "schema: d=" << schema.d() << " k=[";
  for (int j = 0; j < schema.d(); ++j) out << (j ? "," : "") << schema.k(j);
  out << "]\n";
  out << "epsilon: " << fixed9(epsilon) << " (e^eps = " << fixed9(std::exp(epsilon)) << ")\n";
  out << "mechanism epsilon: " << fixed9(instance.mechanism_epsilon())
      << " (e^eps = " << fixed9(std::exp(instance.mechanism_epsilon())) << ")\n";
  out << "channel: " << table.inputs() << " inputs x " << table.outputs() << " outputs\n";

  struct Line {
    const char* notion;
    double ratio;
    RatioWitness witness;
  };
  std::vector<Line> lines;
  if (both || notion == Neighboring::kOneAttribute) {
    RatioWitness w;
    const double r = max_ratio(table, Neighboring::kOneAttribute, &w);
    lines.push_back({"one-attribute", r, w});
    out << "one-attribute max ratio: " << fixed9(r) << '\n';
  }
  if (both || notion == Neighboring::kAny) {
    RatioWitness w;
    const double r = max_ratio(table, Neighboring::kAny, &w);
    lines.push_back({"any", r, w});
    out << "any-pair max ratio: " << fixed9(r) << '\n';
  }
  out << "notion,max_ratio,input,other,output\n";
  for (const auto& line : lines) {
    out << line.notion << ',' << fixed9(line.ratio) << ',' << join_record(line.witness.input) << ','
        << join_record(line.witness.other) << ','
        << (line.witness.output >= 0 ? serialize(table.output(line.witness.output)) : "") << '\n';
  }
  return kExitOk;
}

int do_summarize(const SummarizeArgs& args, std::ostream& out) {
  std::ifstream in(args.in);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open " + args.in);
  const auto results = read_results_csv(in);
  const auto rows = summarize(results);
  std::ofstream file(args.out);
  if (!file) throw Error(ErrorCode::kFileNotFound, "cannot write " + args.out);
  write_aggregate_csv(file, rows);
  out << "wrote " << rows.size() << " aggregate rows to " << args.out << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multidimensional frequency estimation under local differential privacy"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Sweep solutions x epsilons x runs and write results CSV");
  run->add_option("--dataset", run_args.dataset, "Categorical CSV file with a header row");
  run->add_option("--columns", run_args.columns, "Comma-separated header names to keep");
  run->add_option("--missing", run_args.missing, "Missing-value token; rows holding it are dropped");
  run->add_option("--synthetic", run_args.synthetic, "Uniform synthetic data: n,d,k-spec (e.g. 50000,5,10x5)");
  run->add_option("--solutions", run_args.solutions,
                  "Comma list of spl-adp,smp-adp,rsfd-grr,rsfd-oue-z,rsfd-oue-r,rsfd-adp (default all)");
  run->add_option("--eps", run_args.eps, "Budgets: comma list of reals / lnX, or lnA..lnB")
      ->capture_default_str();
  run->add_option("--runs", run_args.runs, "Repetitions per (solution, epsilon)")->capture_default_str();
  run->add_option("--seed", run_args.seed, "Root seed")->capture_default_str();
  run->add_option("--out", run_args.out, "Results CSV path")->required();
  run->add_option("--summary", run_args.summary, "Also write the aggregate CSV here");
  run->add_option("--workers", run_args.workers, "Worker threads")->capture_default_str();
  run->add_flag("--no-timing", run_args.no_timing, "Write wall_time_s as 0 (byte-reproducible output)");

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "Enumerate a protocol channel and report likelihood ratios");
  audit->add_option("--protocol", audit_args.protocol, "Solution name")->required();
  audit->add_option("--d", audit_args.d, "Attribute count")->required();
  audit->add_option("--k", audit_args.k, "Cardinalities, e.g. 2,2 or 2x2 or a single value")->required();
  audit->add_option("--eps", audit_args.eps, "Budget (real or lnX)")->required();
  audit->add_option("--neighboring", audit_args.neighboring, "one, any or both")->capture_default_str();
  audit->add_option("--limit", audit_args.limit, "Maximum channel entries")->capture_default_str();

  SummarizeArgs summarize_args;
  auto* summarize_cmd = app.add_subcommand("summarize", "Aggregate a results CSV per (dataset, solution, epsilon)");
  summarize_cmd->add_option("--in", summarize_args.in, "Results CSV")->required();
  summarize_cmd->add_option("--out", summarize_args.out, "Aggregate CSV")->required();

  // CLI11 consumes the argument vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return do_run(run_args, out);
    if (*audit) {
      // "2,3" lists cardinalities; reuse the k-spec grammar where terms join with '+'.
      for (auto& c : audit_args.k) {
        if (c == ',') c = '+';
      }
      return do_audit(audit_args, out);
    }
    return do_summarize(summarize_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace rsfd
