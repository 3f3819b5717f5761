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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is
// nonzero when any criterion fails. Optional arguments select criteria by
// number, e.g. `acceptance 1 2 6`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rsfd/audit.hpp"
#include "rsfd/baselines.hpp"
#include "rsfd/bench.hpp"
#include "rsfd/data.hpp"
#include "rsfd/rsfd.hpp"

using namespace rsfd;

namespace {

enum class Status { kPass, kFail, kSkip };

struct Verdict {
  Status status = Status::kPass;
  std::string detail;
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);

// ---------------------------------------------------------------------------
// 1. Audit golden values and the audit matrix.

Verdict audit_criterion() {
  Verdict v;
  std::ostringstream detail;

  const auto golden = max_ratio(
      enumerate_channel(Solution::kRsfdGrr, AttributeSchema::from_cardinalities({2, 2}), kLn2));
  const bool golden_ok = std::abs(golden.max_ratio_one_attr - 2.0) <= 1e-9 &&
                         std::abs(golden.max_ratio_any - 3.0) <= 1e-9;
  detail << "golden one-attr=" << fmt("%.9f", golden.max_ratio_one_attr)
         << " any=" << fmt("%.9f", golden.max_ratio_any) << (golden_ok ? " ok" : " MISMATCH");

  int cells = 0;
  std::vector<std::string> violations;
  for (auto s : kAllSolutions) {
    for (int d = 1; d <= 3; ++d) {
      const int combos = 1 << d;
      for (int mask = 0; mask < combos; ++mask) {
        std::vector<int> ks;
        for (int j = 0; j < d; ++j) ks.push_back(mask & (1 << (d - 1 - j)) ? 3 : 2);
        for (double eps : {kLn2, kLn3}) {
          ++cells;
          const auto schema = AttributeSchema::from_cardinalities(ks);
          const double r =
              max_ratio(enumerate_channel(s, schema, eps), Neighboring::kOneAttribute);
          if (r > std::exp(eps) + 1e-9) {
            std::string k_text;
            for (int k : ks) k_text += (k_text.empty() ? "" : ",") + std::to_string(k);
            violations.push_back(std::string(to_string(s)) + " k=[" + k_text + "] eps=ln" +
                                 (eps == kLn2 ? "2" : "3") + " ratio=" + fmt("%.6f", r));
          }
        }
      }
    }
  }
  detail << "; matrix " << cells - static_cast<int>(violations.size()) << "/" << cells
         << " cells within e^eps";
  if (!violations.empty()) {
    std::map<std::string, int> per_protocol;
    for (const auto& line : violations) ++per_protocol[line.substr(0, line.find(' '))];
    detail << "; violations:";
    for (const auto& [name, count] : per_protocol) detail << ' ' << name << " x" << count;
    detail << "; e.g. " << violations.front();
    for (const auto& line : violations) {
      if (line.rfind("rsfd-oue-r k=[3,3]", 0) == 0) {
        detail << ", " << line;
        break;
      }
    }
  }
  v.status = golden_ok && violations.empty() ? Status::kPass : Status::kFail;
  v.detail = detail.str();
  return v;
}

// ---------------------------------------------------------------------------
// 2. Clients against the enumerated channel.

Verdict distribution_criterion() {
  const auto schema = AttributeSchema::from_cardinalities({2, 3});
  const std::int64_t draws = 1'000'000;
  double worst = 0;
  std::string worst_where;
  std::ostringstream detail;
  for (auto s : kAllSolutions) {
    const auto table = enumerate_channel(s, schema, kLn2);
    const Protocol protocol(s, schema, kLn2);
    double protocol_worst = 0;
    for (Eigen::Index row = 0; row < table.inputs(); ++row) {
      const Record input = table.input(row);
      Eigen::VectorXd histogram = Eigen::VectorXd::Zero(table.outputs());
      RandomSource rng = RandomSource(2024).derive({static_cast<std::uint64_t>(s),
                                                     static_cast<std::uint64_t>(row)});
      ReportTuple report;
      for (std::int64_t i = 0; i < draws; ++i) {
        protocol.privatize(input, rng, report);
        histogram[table.output_index(report)] += 1.0;
      }
      const double tv = 0.5 * (histogram / static_cast<double>(draws) -
                               table.probabilities().row(row).transpose())
                                  .cwiseAbs()
                                  .sum();
      protocol_worst = std::max(protocol_worst, tv);
    }
    detail << (detail.tellp() ? " " : "") << to_string(s) << "=" << fmt("%.4f", protocol_worst);
    if (protocol_worst > worst) {
      worst = protocol_worst;
      worst_where = std::string(to_string(s));
    }
  }
  Verdict v;
  v.status = worst <= 0.005 ? Status::kPass : Status::kFail;
  v.detail = "k=[2,3], eps=ln2, 10^6 reports per input; max TV per protocol: " + detail.str() +
             " (limit 0.005)";
  return v;
}

// ---------------------------------------------------------------------------
// 3 and 4. Unbiasedness and variance of the RS+FD estimators.

constexpr int kBiasPopulations = 2000;
constexpr int kVariancePopulations = 12800;
constexpr std::int64_t kUsers = 10000;

struct EstimatorStats {
  RsfdVariant variant;
  double f;
  int d;
  int k;
  double closed_form_var;
  double mean_head;  // over the first kBiasPopulations
  double var_head;
  double var_all;
};

std::vector<EstimatorStats> simulate_estimators() {
  std::vector<EstimatorStats> stats;
  const RandomSource root(31337);
  const double eps = kLn2;
  int config = 0;
  for (auto variant : {RsfdVariant::kGrr, RsfdVariant::kOueZ, RsfdVariant::kOueR}) {
    const Solution solution = variant == RsfdVariant::kGrr    ? Solution::kRsfdGrr
                              : variant == RsfdVariant::kOueZ ? Solution::kRsfdOueZ
                                                              : Solution::kRsfdOueR;
    for (double f : {0.0, 0.3, 1.0}) {
      for (int d : {2, 3}) {
        for (int k : {2, 4}) {
          const auto schema = AttributeSchema::from_cardinalities(std::vector<int>(d, k));
          const Protocol protocol(solution, schema, eps);
          const double ep = protocol.mechanism_epsilon();
          const auto hit = Bernoulli::with_probability(f);
          std::vector<double> estimates;
          estimates.reserve(kVariancePopulations);
          ReportTuple report;
          Record record(static_cast<std::size_t>(d));
          for (int r = 0; r < kVariancePopulations; ++r) {
            RandomSource rng = root.derive({static_cast<std::uint64_t>(config),
                                            static_cast<std::uint64_t>(r)});
            auto counts = protocol.make_counts();
            // Each population draws its users i.i.d.: attribute 0 is 0 with
            // probability f, otherwise uniform over the other values.
            for (std::int64_t u = 0; u < kUsers; ++u) {
              record[0] = rng.flip(hit) ? 0 : static_cast<Value>(1 + rng.uniform(static_cast<std::uint64_t>(k - 1)));
              for (int j = 1; j < d; ++j) record[static_cast<std::size_t>(j)] = static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(k)));
              protocol.privatize(record, rng, report);
              counts.add(report);
            }
            estimates.push_back(protocol.estimate(counts)[0][0]);
          }
          auto moments = [&](int count) {
            double mean = 0;
            for (int i = 0; i < count; ++i) mean += estimates[static_cast<std::size_t>(i)];
            mean /= count;
            double var = 0;
            for (int i = 0; i < count; ++i) {
              const double e = estimates[static_cast<std::size_t>(i)] - mean;
              var += e * e;
            }
            return std::pair{mean, var / (count - 1)};
          };
          const auto head = moments(kBiasPopulations);
          const auto all = moments(kVariancePopulations);
          stats.push_back({variant, f, d, k, rsfd_variance(variant, f, kUsers, d, k, ep).variance,
                           head.first, head.second, all.second});
          ++config;
        }
      }
    }
  }
  return stats;
}

std::string label(const EstimatorStats& s) {
  return std::string(to_string(s.variant)) + " f=" + fmt("%g", s.f) + " d=" + std::to_string(s.d) +
         " k=" + std::to_string(s.k);
}

Verdict bias_criterion(const std::vector<EstimatorStats>& stats) {
  int failures = 0;
  double worst_z = 0;
  std::string worst;
  for (const auto& s : stats) {
    const double z = std::abs(s.mean_head - s.f) / std::sqrt(s.closed_form_var / kBiasPopulations);
    if (z > 4) ++failures;
    if (z > worst_z) {
      worst_z = z;
      worst = label(s);
    }
  }
  Verdict v;
  v.status = failures == 0 ? Status::kPass : Status::kFail;
  v.detail = std::to_string(stats.size() - failures) + "/" + std::to_string(stats.size()) +
             " configs with |mean - f| <= 4 sqrt(VAR/R), R=" + std::to_string(kBiasPopulations) +
             ", n=" + std::to_string(kUsers) + ", eps=ln2; worst " + fmt("%.2f", worst_z) +
             " standard errors (" + worst + ")";
  return v;
}

Verdict variance_criterion(const std::vector<EstimatorStats>& stats) {
  const struct {
    RsfdVariant variant;
    double expected;
  } spots[] = {{RsfdVariant::kGrr, 0.0375}, {RsfdVariant::kOueZ, 0.12}, {RsfdVariant::kOueR, 0.1375}};
  bool spots_ok = true;
  for (const auto& spot : spots) {
    const double var = rsfd_variance(spot.variant, 0.0, 100, 2, 2, kLn3).variance;
    spots_ok = spots_ok && std::abs(var - spot.expected) <= 1e-12;
  }
  const double delta = rsfd_variance(RsfdVariant::kGrr, 0.0, 100, 2, 2, kLn3).delta;
  spots_ok = spots_ok && std::abs(delta - 0.375) <= 1e-12;

  int failures = 0;
  int head_outside = 0;
  double worst_rel = 0;
  std::string worst;
  for (const auto& s : stats) {
    const double rel = std::abs(s.var_all - s.closed_form_var) / s.closed_form_var;
    if (rel > 0.05) ++failures;
    if (std::abs(s.var_head - s.closed_form_var) / s.closed_form_var > 0.05) ++head_outside;
    if (rel > worst_rel) {
      worst_rel = rel;
      worst = label(s);
    }
  }
  Verdict v;
  v.status = spots_ok && failures == 0 ? Status::kPass : Status::kFail;
  v.detail = std::string("spot values ") + (spots_ok ? "ok" : "MISMATCH") + "; " +
             std::to_string(stats.size() - failures) + "/" + std::to_string(stats.size()) +
             " configs within 5% at R=" + std::to_string(kVariancePopulations) + ", worst " +
             fmt("%.2f%%", 100 * worst_rel) + " (" + worst + "); first " +
             std::to_string(kBiasPopulations) + " populations alone: " +
             std::to_string(stats.size() - head_outside) + "/" + std::to_string(stats.size());
  return v;
}

// ---------------------------------------------------------------------------
// 5. Sum-to-one for GRR-based estimators.

Verdict sum_criterion() {
  double worst = 0;
  int runs = 0;
  const std::vector<std::vector<int>> schemas = {{2, 2}, {3, 5, 4, 4, 3, 2, 3, 3, 5}, {10, 10, 10}, {2, 7}};
  const RandomSource root(5150);
  std::uint64_t stream = 0;
  for (const auto& ks : schemas) {
    const auto schema = AttributeSchema::from_cardinalities(ks);
    for (double eps : parse_epsilons("ln2..ln7")) {
      for (auto s : {Solution::kRsfdGrr, Solution::kSplAdp, Solution::kSmpAdp}) {
        const Protocol protocol(s, schema, eps);
        const auto channels = protocol.channels();
        for (int run = 0; run < 10; ++run) {
          RandomSource rng = root.derive({stream++});
          auto counts = protocol.make_counts();
          ReportTuple report;
          Record record(ks.size());
          for (int u = 0; u < 2000; ++u) {
            for (std::size_t j = 0; j < ks.size(); ++j) {
              record[j] = static_cast<Value>(rng.uniform(static_cast<std::uint64_t>(ks[j])));
            }
            protocol.privatize(record, rng, report);
            counts.add(report);
          }
          const auto estimate = protocol.estimate(counts);
          for (int j = 0; j < schema.d(); ++j) {
            // Only GRR-perturbed attributes obey the identity.
            if (channels[static_cast<std::size_t>(j)].mechanism != Mechanism::kGrr) continue;
            if (!estimate.present(j)) continue;
            worst = std::max(worst, std::abs(estimate[j].sum() - 1.0));
          }
          ++runs;
        }
      }
    }
  }
  Verdict v;
  v.status = worst <= 1e-9 ? Status::kPass : Status::kFail;
  v.detail = std::to_string(runs) + " runs of rsfd-grr and GRR-backed Spl/Smp attributes; max |sum - 1| = " +
             fmt("%.3g", worst);
  return v;
}

// ---------------------------------------------------------------------------
// 6. Adaptive rules.

Verdict adaptive_criterion() {
  const bool ok = adp_choose(kLn3, 10) == Mechanism::kGrr && adp_choose(kLn3, 11) == Mechanism::kOue &&
                  adp_choose(kLn2, 7) == Mechanism::kGrr && adp_choose(kLn2, 8) == Mechanism::kOue &&
                  rsfd_adp_select(kLn3, 3, 2) == RsfdVariant::kGrr &&
                  rsfd_adp_select(kLn3, 3, 10) == RsfdVariant::kOueZ;
  Verdict v;
  v.status = ok ? Status::kPass : Status::kFail;
  v.detail = "adp_choose(ln3,10)=" + std::string(to_string(adp_choose(kLn3, 10))) +
             " (ln3,11)=" + std::string(to_string(adp_choose(kLn3, 11))) +
             " (ln2,7)=" + std::string(to_string(adp_choose(kLn2, 7))) +
             " (ln2,8)=" + std::string(to_string(adp_choose(kLn2, 8))) +
             "; rsfd_adp_select(ln3,3,2)=" + std::string(to_string(rsfd_adp_select(kLn3, 3, 2))) +
             " (ln3,3,10)=" + std::string(to_string(rsfd_adp_select(kLn3, 3, 10)));
  return v;
}

// ---------------------------------------------------------------------------
// 7 and 8. Benchmark orderings and the scale effect.

using MeanTable = std::map<std::pair<std::string, double>, double>;

MeanTable synthetic_means(std::int64_t n) {
  ExperimentConfig config;
  config.dataset = SyntheticSource{n, std::vector<int>(10, 10)};
  config.epsilons = parse_epsilons("ln2..ln7");
  config.runs = 20;
  config.seed = 42;
  config.record_wall_time = false;
  config.workers = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  MeanTable means;
  for (const auto& row : summarize(run_experiment(config))) {
    means[{row.solution, row.epsilon}] = row.mse_mean;
  }
  return means;
}

Verdict ordering_criterion(const MeanTable& means) {
  const auto grid = parse_epsilons("ln2..ln7");
  std::vector<std::string> problems;
  std::ostringstream table;
  for (double eps : grid) {
    auto at = [&](const char* s) { return means.at({s, eps}); };
    const double spl = at("spl-adp");
    for (const char* other : {"smp-adp", "rsfd-grr", "rsfd-oue-z", "rsfd-oue-r", "rsfd-adp"}) {
      if (!(spl > at(other))) problems.push_back(std::string("spl<=") + other + " at " + format_epsilon(eps));
    }
    if (!(at("rsfd-oue-r") >= at("rsfd-oue-z"))) problems.push_back("oue-r<oue-z at " + format_epsilon(eps));
    if (eps == grid.front() && !(at("rsfd-adp") <= at("smp-adp"))) problems.push_back("rsfd-adp>smp-adp at ln2");
    table << " eps=" << format_epsilon(eps) << "[spl " << fmt("%.3g", spl) << " smp " << fmt("%.3g", at("smp-adp"))
          << " grr " << fmt("%.3g", at("rsfd-grr")) << " oue-z " << fmt("%.3g", at("rsfd-oue-z")) << " oue-r "
          << fmt("%.3g", at("rsfd-oue-r")) << " adp " << fmt("%.3g", at("rsfd-adp")) << "]";
  }
  Verdict v;
  v.status = problems.empty() ? Status::kPass : Status::kFail;
  v.detail = "n=50000 d=10 k=10x10 runs=20 seed=42; " +
             (problems.empty() ? std::string("all orderings hold") : "violations: " + problems.front()) +
             ";" + table.str();
  return v;
}

Verdict scale_criterion(const MeanTable& small, const MeanTable& large) {
  double lo = 1e300, hi = 0;
  std::string lo_at, hi_at;
  int failures = 0;
  for (const auto& [key, value] : small) {
    const double ratio = value / large.at(key);
    if (ratio < 8 || ratio > 12) ++failures;
    const std::string where = key.first + "@" + format_epsilon(key.second);
    if (ratio < lo) {
      lo = ratio;
      lo_at = where;
    }
    if (ratio > hi) {
      hi = ratio;
      hi_at = where;
    }
  }
  Verdict v;
  v.status = failures == 0 ? Status::kPass : Status::kFail;
  v.detail = std::to_string(small.size() - failures) + "/" + std::to_string(small.size()) +
             " (solution, eps) ratios in [8, 12]; min " + fmt("%.2f", lo) + " (" + lo_at + "), max " +
             fmt("%.2f", hi) + " (" + hi_at + ")";
  return v;
}

// ---------------------------------------------------------------------------
// 9. Dataset loaders.

Verdict loader_criterion() {
  const char* dir = std::getenv("RSFD_DATA_DIR");
  if (!dir) {
    return {Status::kSkip,
            "RSFD_DATA_DIR not set; place nursery.csv, adult.csv, ms_fimu.csv and census_income.csv "
            "there to check their shapes"};
  }
  struct Expected {
    const char* file;
    std::int64_t n;
    int d;
    std::vector<int> ks;  // empty: only d is checked
    std::vector<std::string> columns;
  };
  const std::vector<Expected> expected = {
      {"nursery.csv", 12960, 9, {3, 5, 4, 4, 3, 2, 3, 3, 5}, {}},
      {"adult.csv", 45222, 9, {7, 16, 7, 14, 6, 5, 2, 41, 2},
       {"workclass", "education", "marital-status", "occupation", "relationship", "race", "sex",
        "native-country", "income"}},
      {"ms_fimu.csv", 88935, 6, {3, 3, 8, 12, 37, 11}, {}},
      {"census_income.csv", 299285, 33, {}, {}},
  };
  std::ostringstream detail;
  int checked = 0, failures = 0;
  for (const auto& e : expected) {
    const auto path = std::filesystem::path(dir) / e.file;
    detail << (detail.tellp() ? "; " : "") << e.file << ": ";
    if (!std::filesystem::exists(path)) {
      detail << "not supplied, skipped";
      continue;
    }
    ++checked;
    try {
      CsvOptions options;
      options.columns = e.columns;
      const auto data = load_csv(path, options);
      const bool ok = data.n() == e.n && data.schema.d() == e.d &&
                      (e.ks.empty() || data.schema.cardinalities == e.ks);
      std::string ks;
      for (int k : data.schema.cardinalities) ks += (ks.empty() ? "" : ",") + std::to_string(k);
      detail << "n=" << data.n() << " d=" << data.schema.d() << " k=[" << ks << "]" << (ok ? " ok" : " MISMATCH");
      failures += !ok;
    } catch (const Error& err) {
      detail << "error " << err.what();
      ++failures;
    }
  }
  if (checked == 0) return {Status::kSkip, "no dataset files found in " + std::string(dir) + " (" + detail.str() + ")"};
  return {failures == 0 ? Status::kPass : Status::kFail, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto wanted = [&](int c) { return only.empty() || only.count(c) > 0; };

  int failed = 0;
  auto report = [&](int number, const char* name, const Verdict& v, double seconds) {
    const char* status = v.status == Status::kPass ? "PASS" : v.status == Status::kFail ? "FAIL" : "SKIP";
    std::printf("[%s] criterion %d %s: %s (%.1fs)\n", status, number, name, v.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += v.status == Status::kFail;
  };
  auto timed = [&](int number, const char* name, const std::function<Verdict()>& body) {
    if (!wanted(number)) return;
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = body();
    report(number, name, v, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };

  timed(1, "privacy audit", audit_criterion);
  timed(2, "client vs enumerated channel", distribution_criterion);
  if (wanted(3) || wanted(4)) {
    const auto start = std::chrono::steady_clock::now();
    const auto stats = simulate_estimators();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (wanted(3)) report(3, "unbiasedness", bias_criterion(stats), seconds);
    if (wanted(4)) report(4, "variance", variance_criterion(stats), 0.0);
  }
  timed(5, "sum to one", sum_criterion);
  timed(6, "adaptive rules", adaptive_criterion);
  if (wanted(7) || wanted(8)) {
    auto start = std::chrono::steady_clock::now();
    const auto small = synthetic_means(50000);
    const double t_small = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (wanted(7)) report(7, "synthetic ordering", ordering_criterion(small), t_small);
    if (wanted(8)) {
      start = std::chrono::steady_clock::now();
      const auto large = synthetic_means(500000);
      report(8, "scale effect", scale_criterion(small, large),
             std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
  }
  timed(9, "dataset shapes", loader_criterion);

  std::printf("%s\n", failed == 0 ? "acceptance: all criteria passed or skipped"
                                  : ("acceptance: " + std::to_string(failed) + " criterion(s) failed").c_str());
  return failed == 0 ? 0 : 1;
}
