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

// Seeded experiment grids over (scheme, k, s, n, epsilon or ell), their CSV
// persistence and summaries.
//
// Every trial is a pure function of (master_seed, cell, trial_index), so
// grids give byte-identical CSVs for any thread count, and an interrupted
// run resumes by skipping the (cell, trial) keys already on disk.

#ifndef SPARSE_DIST_LAB_HARNESS_H_
#define SPARSE_DIST_LAB_HARNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "sparse_dist_lab/bounds.h"

namespace sparse_dist_lab {

enum class Scheme { kHrDense, kHrSparse, kRappor, kCommHash };

std::string_view SchemeName(Scheme scheme);
absl::StatusOr<Scheme> ParseScheme(std::string_view name);
inline bool IsLdpScheme(Scheme scheme) { return scheme != Scheme::kCommHash; }

inline constexpr char kResultsCsvHeader[] =
    "scheme,k,s,n,eps_or_ell,trial,tv_error,bits_per_user,seed";
inline constexpr char kThreadsEnvVar[] = "SPARSE_DIST_LAB_THREADS";
inline constexpr int kDefaultTrials = 20;

// One experiment: a grid over s and over epsilon (LDP schemes) or ell
// (comm_hash) at fixed k and n. JSON keys: scheme, k, s, epsilon, ell, n,
// trials, master_seed, output; unknown keys are rejected.
struct ExperimentConfig {
  Scheme scheme = Scheme::kHrSparse;
  int k = 0;
  std::vector<int> s_values;
  std::vector<double> epsilons;
  std::vector<int> ells;
  int64_t n = 0;
  int trials = kDefaultTrials;
  uint64_t master_seed = 0;
  std::string output;

  absl::Status Validate() const;
};

// Accepts one config object or an array of them.
absl::StatusOr<std::vector<ExperimentConfig>> ParseExperimentConfigs(
    const nlohmann::json& json);
absl::StatusOr<std::vector<ExperimentConfig>> LoadExperimentConfigs(
    const std::string& path);

struct GridCell {
  Scheme scheme = Scheme::kHrSparse;
  int k = 0;
  int s = 0;
  int64_t n = 0;
  double eps_or_ell = 0.0;
  uint64_t master_seed = 0;
};

// Cells in grid order: s outermost, then epsilon / ell.
std::vector<GridCell> ExpandCells(const ExperimentConfig& config);

// mix(master_seed, cell_hash, trial_index). hr_dense and hr_sparse hash to
// the same value so both decode the same message batch; comm_hash cells hash
// their effective ell, so ells capped to the same bit count coincide.
uint64_t TrialSeed(const GridCell& cell, int trial_index);

struct TrialResult {
  Scheme scheme = Scheme::kHrSparse;
  int k = 0;
  int s = 0;
  int64_t n = 0;
  double eps_or_ell = 0.0;
  int trial = 0;
  double tv_error = 0.0;
  int bits_per_user = 0;
  // Not persisted: excluded from the results CSV so reruns are identical.
  double wall_time_seconds = 0.0;
  uint64_t seed = 0;
};

// Draws an s-sparse uniform target, simulates n users through the cell's
// scheme, decodes, and records the TV error.
absl::StatusOr<TrialResult> RunTrial(const GridCell& cell, int trial_index);

struct GridOptions {
  int threads = 1;
  // Overrides each config's `output` when set.
  std::optional<std::string> output_path;
  // Overrides each config's master_seed when set.
  std::optional<uint64_t> seed;
};

// Resolves the worker count: the SPARSE_DIST_LAB_THREADS environment
// variable wins over `requested`.
int ResolveThreadCount(int requested);

// Runs every (cell, trial) not already present in the output CSV, appending
// rows in grid order as they complete, and returns the grid's full table.
// All configs must share one output path.
absl::StatusOr<std::vector<TrialResult>> RunGrid(
    std::span<const ExperimentConfig> configs, const GridOptions& options);

std::string FormatDouble(double value);
std::string FormatResultRow(const TrialResult& result);
absl::StatusOr<TrialResult> ParseResultRow(std::string_view line);
absl::StatusOr<std::vector<TrialResult>> ReadResultsCsv(
    const std::string& path);

struct CellSummary {
  Scheme scheme = Scheme::kHrSparse;
  int k = 0;
  int s = 0;
  int64_t n = 0;
  double eps_or_ell = 0.0;
  int64_t trials = 0;
  double mean_tv_error = 0.0;
  // Sample standard deviation over sqrt(trials); 0 for a single trial.
  double standard_error = 0.0;
  // Set when a single trial makes the standard error meaningless.
  bool degenerate = false;
};

// Per-cell mean and standard error, cells in order of first appearance.
absl::StatusOr<std::vector<CellSummary>> Summarize(
    std::span<const TrialResult> results);

nlohmann::json SummaryToJson(std::span<const CellSummary> summary);

// Long-format plot data: one series per (scheme, eps_or_ell), x = s,
// y = mean TV error.
std::string SummaryToPlotCsv(std::span<const CellSummary> summary);

// Human-readable sample-size report for the `plan` subcommand.
absl::StatusOr<std::string> PlanReport(PlanScheme scheme, int k, int s,
                                       double alpha, double epsilon_or_ell);

// The bounds verification suite run by `verify-bounds`.
std::vector<BoundReport> RunBoundsVerification();

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_HARNESS_H_
