// Copyright 2026 The Sparse Dist Lab Authors
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

// Command-line front end: run, summarize, plan, verify-bounds.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "json.hpp"
#include "sparse_dist_lab/bounds.h"
#include "sparse_dist_lab/harness.h"

namespace sparse_dist_lab {
namespace {

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return 1;
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError("cannot open '" + path + "'");
  out << contents;
  out.close();
  if (!out) return absl::DataLossError("failed writing '" + path + "'");
  return absl::OkStatus();
}

std::string DefaultPlotPath(const std::string& json_path) {
  std::filesystem::path path(json_path);
  path.replace_extension(".plot.csv");
  return path.string();
}

int RunCommand(const std::string& config_path,
               const std::optional<std::string>& out,
               int threads, const std::optional<uint64_t>& seed) {
  absl::StatusOr<std::vector<ExperimentConfig>> configs =
      LoadExperimentConfigs(config_path);
  if (!configs.ok()) return Fail(configs.status());
  GridOptions options;
  options.threads = ResolveThreadCount(threads);
  options.output_path = out;
  options.seed = seed;
  absl::StatusOr<std::vector<TrialResult>> results =
      RunGrid(*configs, options);
  if (!results.ok()) return Fail(results.status());
  std::cerr << "wrote " << results->size() << " rows using " << options.threads
            << " thread(s)\n";
  return 0;
}

int SummarizeCommand(const std::string& in, const std::string& out,
                     std::optional<std::string> plot_out) {
  absl::StatusOr<std::vector<TrialResult>> results = ReadResultsCsv(in);
  if (!results.ok()) return Fail(results.status());
  absl::StatusOr<std::vector<CellSummary>> summary = Summarize(*results);
  if (!summary.ok()) return Fail(summary.status());
  absl::Status status = WriteFile(out, SummaryToJson(*summary).dump(2) + "\n");
  if (!status.ok()) return Fail(status);
  const std::string plot_path = plot_out.value_or(DefaultPlotPath(out));
  status = WriteFile(plot_path, SummaryToPlotCsv(*summary));
  if (!status.ok()) return Fail(status);
  std::cerr << "summarized " << summary->size() << " cells into " << out
            << " and " << plot_path << "\n";
  return 0;
}

int PlanCommand(const std::string& scheme_name, int k, int s, double alpha,
                std::optional<double> eps, std::optional<int> ell) {
  PlanScheme scheme;
  double parameter;
  if (scheme_name == "ldp") {
    if (!eps.has_value() || ell.has_value()) {
      return Fail(absl::InvalidArgumentError("--scheme ldp takes --eps"));
    }
    scheme = PlanScheme::kLdp;
    parameter = *eps;
  } else if (scheme_name == "comm") {
    if (!ell.has_value() || eps.has_value()) {
      return Fail(absl::InvalidArgumentError("--scheme comm takes --ell"));
    }
    scheme = PlanScheme::kComm;
    parameter = *ell;
  } else {
    return Fail(absl::InvalidArgumentError("--scheme must be ldp or comm"));
  }
  absl::StatusOr<std::string> report =
      PlanReport(scheme, k, s, alpha, parameter);
  if (!report.ok()) return Fail(report.status());
  std::cout << *report;
  return 0;
}

int VerifyBoundsCommand(const std::optional<std::string>& out) {
  const std::vector<BoundReport> reports = RunBoundsVerification();
  nlohmann::json json = nlohmann::json::array();
  int violations = 0;
  for (const BoundReport& report : reports) {
    json.push_back(report.ToJson());
    if (!report.satisfied) ++violations;
  }
  const std::string text = json.dump(2) + "\n";
  if (out.has_value()) {
    absl::Status status = WriteFile(*out, text);
    if (!status.ok()) return Fail(status);
  } else {
    std::cout << text;
  }
  std::cerr << reports.size() << " bound checks, " << violations
            << " violated\n";
  return violations == 0 ? 0 : 2;
}

}  // namespace
}  // namespace sparse_dist_lab

int main(int argc, char** argv) {
  using namespace sparse_dist_lab;  // NOLINT(build/namespaces)
  CLI::App app{"Sparse distribution estimation under privacy and "
               "communication constraints"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run an experiment grid");
  std::string config_path;
  std::optional<std::string> run_out;
  int threads = 1;
  std::optional<uint64_t> seed;
  run->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--out", run_out, "Results CSV; overrides the config");
  run->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed; overrides the config");

  CLI::App* summarize =
      app.add_subcommand("summarize", "Summarize a results CSV");
  std::string summarize_in;
  std::string summarize_out;
  std::optional<std::string> plot_out;
  summarize->add_option("--in", summarize_in, "Results CSV")->required();
  summarize->add_option("--out", summarize_out, "Summary JSON")->required();
  summarize->add_option("--plot-out", plot_out,
                        "Plot CSV (default: <out>.plot.csv)");

  CLI::App* plan = app.add_subcommand("plan", "Report planned sample sizes");
  std::string plan_scheme;
  int k = 0;
  int s = 0;
  double alpha = 0.0;
  std::optional<double> eps;
  std::optional<int> ell;
  plan->add_option("--scheme", plan_scheme, "ldp or comm")->required();
  plan->add_option("--k", k, "Domain size")->required();
  plan->add_option("--s", s, "Sparsity")->required();
  plan->add_option("--alpha", alpha, "Target TV accuracy")->required();
  CLI::Option* eps_option = plan->add_option("--eps", eps, "Privacy level");
  CLI::Option* ell_option = plan->add_option("--ell", ell, "Bits per user");
  eps_option->excludes(ell_option);

  CLI::App* verify = app.add_subcommand(
      "verify-bounds", "Run the lower-bound verification suite");
  std::optional<std::string> verify_out;
  verify->add_option("--out", verify_out, "BoundReport JSON (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return RunCommand(config_path, run_out, threads, seed);
  if (summarize->parsed()) {
    return SummarizeCommand(summarize_in, summarize_out, plot_out);
  }
  if (plan->parsed()) return PlanCommand(plan_scheme, k, s, alpha, eps, ell);
  if (verify->parsed()) return VerifyBoundsCommand(verify_out);
  return 1;
}
