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

#include "sparse_dist_lab/harness.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "sparse_dist_lab/comm_hash.h"
#include "sparse_dist_lab/distribution.h"
#include "sparse_dist_lab/hadamard.h"
#include "sparse_dist_lab/hadamard_response.h"
#include "sparse_dist_lab/random_stream.h"
#include "sparse_dist_lab/rappor.h"

namespace sparse_dist_lab {
namespace {

absl::string_view Sv(std::string_view v) {
  return absl::string_view(v.data(), v.size());
}

// Substream ids under a trial seed.
constexpr uint64_t kTargetStream = 0;
constexpr uint64_t kSampleStream = 1;
constexpr uint64_t kEncodeStream = 2;
constexpr uint64_t kPublicCoinStream = 3;

uint64_t SchemeFamily(Scheme scheme) {
  switch (scheme) {
    case Scheme::kHrDense:
    case Scheme::kHrSparse:
      return 1;
    case Scheme::kRappor:
      return 2;
    case Scheme::kCommHash:
      return 3;
  }
  return 0;
}

std::string CellLabel(const GridCell& cell) {
  return absl::StrCat(Sv(SchemeName(cell.scheme)), " k=", cell.k, " s=", cell.s,
                      " n=", cell.n, " ",
                      IsLdpScheme(cell.scheme) ? "eps=" : "ell=",
                      FormatDouble(cell.eps_or_ell));
}

absl::Status Annotate(const absl::Status& status, const GridCell& cell,
                      int trial) {
  return absl::Status(status.code(),
                      absl::StrCat("[", CellLabel(cell), " trial=", trial,
                                   "] ", status.message()));
}

std::string RowKey(Scheme scheme, int k, int s, int64_t n, double eps_or_ell,
                   int trial) {
  return absl::StrCat(Sv(SchemeName(scheme)), ",", k, ",", s, ",", n, ",",
                      FormatDouble(eps_or_ell), ",", trial);
}

std::string RowKey(const TrialResult& r) {
  return RowKey(r.scheme, r.k, r.s, r.n, r.eps_or_ell, r.trial);
}

struct TrialOutcome {
  Distribution estimate;
  int bits_per_user;
};

absl::StatusOr<TrialOutcome> SimulateScheme(const GridCell& cell,
                                            std::span<const int> samples,
                                            uint64_t seed) {
  switch (cell.scheme) {
    case Scheme::kHrDense:
    case Scheme::kHrSparse: {
      absl::StatusOr<HadamardDim> dim = HadamardDim::ForDomain(cell.k);
      if (!dim.ok()) return dim.status();
      const std::vector<HrMessage> messages = HrEncodeBatch(
          samples, cell.eps_or_ell, *dim, DeriveSeed(seed, kEncodeStream));
      absl::StatusOr<HrFractions> fractions =
          HrAggregate(messages, cell.n, *dim);
      if (!fractions.ok()) return fractions.status();
      const HrProjection projection = cell.scheme == Scheme::kHrSparse
                                          ? HrProjection::Sparse(cell.s)
                                          : HrProjection::Dense();
      absl::StatusOr<Distribution> estimate =
          HrDecode(*fractions, cell.eps_or_ell, cell.k, projection);
      if (!estimate.ok()) return estimate.status();
      return TrialOutcome{*std::move(estimate), 1};
    }
    case Scheme::kRappor: {
      const std::vector<RapporMessage> messages = RapporEncodeBatch(
          samples, cell.eps_or_ell, cell.k, DeriveSeed(seed, kEncodeStream));
      const size_t half = messages.size() / 2;
      std::span<const RapporMessage> all(messages);
      absl::StatusOr<TwoStageEstimate> estimate =
          RapporEstimate(all.first(half), all.subspan(half), cell.k, cell.s,
                         cell.eps_or_ell);
      if (!estimate.ok()) return estimate.status();
      return TrialOutcome{std::move(estimate->distribution), cell.k};
    }
    case Scheme::kCommHash: {
      absl::StatusOr<HashScheme> scheme = HashScheme::Create(
          DeriveSeed(seed, kPublicCoinStream),
          static_cast<int>(cell.eps_or_ell), cell.k, cell.s);
      if (!scheme.ok()) return scheme.status();
      const std::vector<CommMessage> messages =
          CommEncodeBatch(samples, *scheme);
      const size_t half = messages.size() / 2;
      std::span<const CommMessage> all(messages);
      absl::StatusOr<TwoStageEstimate> estimate =
          CommDecode(all.first(half), all.subspan(half), *scheme);
      if (!estimate.ok()) return estimate.status();
      return TrialOutcome{std::move(estimate->distribution), scheme->ell()};
    }
  }
  return absl::InternalError("unknown scheme");
}

template <typename T>
absl::Status ReadField(const nlohmann::json& json, const char* key, T& out) {
  try {
    out = json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config field '", key, "': ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> ParseOneConfig(const nlohmann::json& json) {
  static const std::set<std::string> kKnownKeys = {
      "scheme", "k",      "s",      "epsilon", "ell",
      "n",      "trials", "master_seed", "output"};
  if (!json.is_object()) {
    return absl::InvalidArgumentError("experiment config must be an object");
  }
  for (const auto& [key, value] : json.items()) {
    if (!kKnownKeys.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config field '", key, "'"));
    }
  }
  ExperimentConfig config;
  std::string scheme_name;
  if (absl::Status s = ReadField(json, "scheme", scheme_name); !s.ok()) return s;
  absl::StatusOr<Scheme> scheme = ParseScheme(scheme_name);
  if (!scheme.ok()) return scheme.status();
  config.scheme = *scheme;
  if (absl::Status s = ReadField(json, "k", config.k); !s.ok()) return s;
  if (absl::Status s = ReadField(json, "s", config.s_values); !s.ok()) return s;
  if (absl::Status s = ReadField(json, "n", config.n); !s.ok()) return s;
  if (json.contains("epsilon")) {
    if (absl::Status s = ReadField(json, "epsilon", config.epsilons); !s.ok()) {
      return s;
    }
  }
  if (json.contains("ell")) {
    if (absl::Status s = ReadField(json, "ell", config.ells); !s.ok()) return s;
  }
  if (json.contains("trials")) {
    if (absl::Status s = ReadField(json, "trials", config.trials); !s.ok()) {
      return s;
    }
  }
  if (json.contains("master_seed")) {
    if (absl::Status s = ReadField(json, "master_seed", config.master_seed);
        !s.ok()) {
      return s;
    }
  }
  if (json.contains("output")) {
    if (absl::Status s = ReadField(json, "output", config.output); !s.ok()) {
      return s;
    }
  }
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  return config;
}

// Loads rows already on disk, dropping a trailing partial line left by an
// interrupted run. Writes the header when the file is new or empty.
absl::StatusOr<std::map<std::string, TrialResult>> PrepareOutput(
    const std::string& path) {
  std::map<std::string, TrialResult> existing;
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::exists(path, ec) || fs::file_size(path, ec) == 0) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::PermissionDeniedError(
          absl::StrCat("cannot write results to '", path, "'"));
    }
    out << kResultsCsvHeader << '\n';
    if (!out.flush()) {
      return absl::PermissionDeniedError(
          absl::StrCat("cannot write results to '", path, "'"));
    }
    return existing;
  }
  std::string contents;
  {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    contents = buffer.str();
  }
  if (!contents.empty() && contents.back() != '\n') {
    const size_t keep = contents.rfind('\n');
    contents.resize(keep == std::string::npos ? 0 : keep + 1);
    fs::resize_file(path, contents.size(), ec);
    if (ec) {
      return absl::PermissionDeniedError(
          absl::StrCat("cannot truncate '", path, "': ", ec.message()));
    }
    if (contents.empty()) return PrepareOutput(path);
  }
  std::vector<absl::string_view> lines =
      absl::StrSplit(contents, '\n', absl::SkipEmpty());
  if (lines.empty() || lines.front() != kResultsCsvHeader) {
    return absl::FailedPreconditionError(
        absl::StrCat("'", path, "' is not a results CSV"));
  }
  for (size_t i = 1; i < lines.size(); ++i) {
    absl::StatusOr<TrialResult> row = ParseResultRow(
        std::string_view(lines[i].data(), lines[i].size()));
    if (!row.ok()) return row.status();
    existing.emplace(RowKey(*row), *row);
  }
  return existing;
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kHrDense:
      return "hr_dense";
    case Scheme::kHrSparse:
      return "hr_sparse";
    case Scheme::kRappor:
      return "rappor";
    case Scheme::kCommHash:
      return "comm_hash";
  }
  return "unknown";
}

absl::StatusOr<Scheme> ParseScheme(std::string_view name) {
  for (Scheme scheme : {Scheme::kHrDense, Scheme::kHrSparse, Scheme::kRappor,
                        Scheme::kCommHash}) {
    if (SchemeName(scheme) == name) return scheme;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown scheme '", Sv(name), "' (hr_dense, hr_sparse, rappor, comm_hash)"));
}

absl::Status ExperimentConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("k must be positive");
  if (s_values.empty()) return absl::InvalidArgumentError("s list is empty");
  for (int s : s_values) {
    if (s < 1 || s > k) {
      return absl::InvalidArgumentError(
          absl::StrCat("s = ", s, " outside [1, ", k, "]"));
    }
    if (scheme == Scheme::kRappor && 2 * s > k) {
      return absl::InvalidArgumentError(
          absl::StrCat("rappor needs s <= k/2, got s = ", s));
    }
  }
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (n < 1) return absl::InvalidArgumentError("n must be positive");
  if (IsLdpScheme(scheme)) {
    if (epsilons.empty() || !ells.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          Sv(SchemeName(scheme)), " takes an epsilon list and no ell list"));
    }
    for (double eps : epsilons) {
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        return absl::InvalidArgumentError("epsilon must be positive");
      }
    }
  } else {
    if (ells.empty() || !epsilons.empty()) {
      return absl::InvalidArgumentError(
          "comm_hash takes an ell list and no epsilon list");
    }
    for (int ell : ells) {
      if (ell < 1 || ell > kMaxMessageBits) {
        return absl::InvalidArgumentError(absl::StrCat("ell = ", ell));
      }
    }
  }
  if ((scheme == Scheme::kRappor || scheme == Scheme::kCommHash) &&
      (n < 2 || n % 2 != 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        Sv(SchemeName(scheme)), " splits users into two halves; n must be even"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ExperimentConfig>> ParseExperimentConfigs(
    const nlohmann::json& json) {
  std::vector<ExperimentConfig> configs;
  if (json.is_array()) {
    for (const nlohmann::json& item : json) {
      absl::StatusOr<ExperimentConfig> config = ParseOneConfig(item);
      if (!config.ok()) return config.status();
      configs.push_back(*std::move(config));
    }
    if (configs.empty()) {
      return absl::InvalidArgumentError("config array is empty");
    }
    return configs;
  }
  absl::StatusOr<ExperimentConfig> config = ParseOneConfig(json);
  if (!config.ok()) return config.status();
  configs.push_back(*std::move(config));
  return configs;
}

absl::StatusOr<std::vector<ExperimentConfig>> LoadExperimentConfigs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path, "' is not valid JSON: ", e.what()));
  }
  return ParseExperimentConfigs(json);
}

std::vector<GridCell> ExpandCells(const ExperimentConfig& config) {
  std::vector<GridCell> cells;
  for (int s : config.s_values) {
    if (IsLdpScheme(config.scheme)) {
      for (double eps : config.epsilons) {
        cells.push_back(
            {config.scheme, config.k, s, config.n, eps, config.master_seed});
      }
    } else {
      for (int ell : config.ells) {
        cells.push_back({config.scheme, config.k, s, config.n,
                         static_cast<double>(ell), config.master_seed});
      }
    }
  }
  return cells;
}

uint64_t TrialSeed(const GridCell& cell, int trial_index) {
  uint64_t h = DeriveSeed(cell.master_seed, SchemeFamily(cell.scheme));
  h = DeriveSeed(h, static_cast<uint64_t>(cell.k));
  h = DeriveSeed(h, static_cast<uint64_t>(cell.s));
  h = DeriveSeed(h, static_cast<uint64_t>(cell.n));
  // Cells whose ell is capped to the same effective ell run the same
  // protocol and share their randomness.
  const double parameter =
      cell.scheme == Scheme::kCommHash
          ? EffectiveEll(static_cast<int>(cell.eps_or_ell), cell.s)
          : cell.eps_or_ell;
  h = DeriveSeed(h, std::bit_cast<uint64_t>(parameter));
  return DeriveSeed(h, static_cast<uint64_t>(trial_index));
}

absl::StatusOr<TrialResult> RunTrial(const GridCell& cell, int trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const uint64_t seed = TrialSeed(cell, trial_index);

  RandomStream target_stream(seed, kTargetStream);
  absl::StatusOr<Distribution> target =
      MakeUniformSparse(cell.k, cell.s, target_stream);
  if (!target.ok()) return Annotate(target.status(), cell, trial_index);

  RandomStream sample_stream(seed, kSampleStream);
  const std::vector<int> samples = SampleIid(*target, cell.n, sample_stream);

  absl::StatusOr<TrialOutcome> outcome =
      SimulateScheme(cell, samples, seed);
  if (!outcome.ok()) return Annotate(outcome.status(), cell, trial_index);
  absl::StatusOr<double> tv = TvDistance(outcome->estimate, *target);
  if (!tv.ok()) return Annotate(tv.status(), cell, trial_index);

  TrialResult result;
  result.scheme = cell.scheme;
  result.k = cell.k;
  result.s = cell.s;
  result.n = cell.n;
  result.eps_or_ell = cell.eps_or_ell;
  result.trial = trial_index;
  result.tv_error = *tv;
  result.bits_per_user = outcome->bits_per_user;
  result.seed = seed;
  result.wall_time_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
  return result;
}

int ResolveThreadCount(int requested) {
  if (const char* env = std::getenv(kThreadsEnvVar); env != nullptr) {
    int from_env = 0;
    if (absl::SimpleAtoi(env, &from_env) && from_env > 0) return from_env;
  }
  return std::max(requested, 1);
}

absl::StatusOr<std::vector<TrialResult>> RunGrid(
    std::span<const ExperimentConfig> configs, const GridOptions& options) {
  if (configs.empty()) return absl::InvalidArgumentError("no experiments");
  std::string path;
  struct Job {
    GridCell cell;
    int trial;
    std::string key;
  };
  std::vector<Job> jobs;
  for (const ExperimentConfig& original : configs) {
    ExperimentConfig config = original;
    if (options.seed.has_value()) config.master_seed = *options.seed;
    if (options.output_path.has_value()) config.output = *options.output_path;
    if (absl::Status s = config.Validate(); !s.ok()) return s;
    if (config.output.empty()) {
      return absl::InvalidArgumentError("no output path configured");
    }
    if (path.empty()) path = config.output;
    if (config.output != path) {
      return absl::InvalidArgumentError(
          "all experiments in one run must share an output path");
    }
    for (const GridCell& cell : ExpandCells(config)) {
      for (int t = 0; t < config.trials; ++t) {
        jobs.push_back({cell, t,
                        RowKey(cell.scheme, cell.k, cell.s, cell.n,
                               cell.eps_or_ell, t)});
      }
    }
  }

  absl::StatusOr<std::map<std::string, TrialResult>> existing =
      PrepareOutput(path);
  if (!existing.ok()) return existing.status();

  std::vector<size_t> pending;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!existing->contains(jobs[i].key)) pending.push_back(i);
  }

  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot append to '", path, "'"));
  }

  std::vector<std::optional<absl::StatusOr<TrialResult>>> done(pending.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    while (!stop.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      const Job& job = jobs[pending[i]];
      absl::StatusOr<TrialResult> result = RunTrial(job.cell, job.trial);
      {
        std::lock_guard<std::mutex> lock(mu);
        done[i] = std::move(result);
      }
      ready.notify_all();
    }
  };
  const int threads = std::min<int>(ResolveThreadCount(options.threads),
                                    std::max<size_t>(pending.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads && !pending.empty(); ++t) pool.emplace_back(worker);

  // Single writer: rows go out in grid order whatever the completion order.
  absl::Status failure = absl::OkStatus();
  std::map<std::string, TrialResult> fresh;
  for (size_t i = 0; i < pending.size(); ++i) {
    absl::StatusOr<TrialResult> result = absl::InternalError("unset");
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      result = *std::move(done[i]);
    }
    if (!result.ok()) {
      failure = result.status();
      stop.store(true);
      break;
    }
    out << FormatResultRow(*result) << '\n';
    out.flush();
    if (!out) {
      failure = absl::DataLossError(absl::StrCat("write to '", path, "' failed"));
      stop.store(true);
      break;
    }
    fresh.emplace(jobs[pending[i]].key, *std::move(result));
  }
  for (std::thread& t : pool) t.join();
  if (!failure.ok()) return failure;

  std::vector<TrialResult> table;
  table.reserve(jobs.size());
  for (const Job& job : jobs) {
    if (auto it = fresh.find(job.key); it != fresh.end()) {
      table.push_back(it->second);
    } else {
      table.push_back(existing->at(job.key));
    }
  }
  return table;
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string FormatResultRow(const TrialResult& r) {
  return absl::StrCat(RowKey(r), ",", FormatDouble(r.tv_error), ",",
                      r.bits_per_user, ",", r.seed);
}

absl::StatusOr<TrialResult> ParseResultRow(std::string_view line) {
  std::vector<absl::string_view> fields = absl::StrSplit(Sv(line), ',');
  if (fields.size() != 9) {
    return absl::InvalidArgumentError(
        absl::StrCat("results row has ", fields.size(), " fields: ", Sv(line)));
  }
  TrialResult r;
  absl::StatusOr<Scheme> scheme = ParseScheme(std::string_view(fields[0].data(), fields[0].size()));
  if (!scheme.ok()) return scheme.status();
  r.scheme = *scheme;
  if (!absl::SimpleAtoi(fields[1], &r.k) || !absl::SimpleAtoi(fields[2], &r.s) ||
      !absl::SimpleAtoi(fields[3], &r.n) ||
      !absl::SimpleAtod(fields[4], &r.eps_or_ell) ||
      !absl::SimpleAtoi(fields[5], &r.trial) ||
      !absl::SimpleAtod(fields[6], &r.tv_error) ||
      !absl::SimpleAtoi(fields[7], &r.bits_per_user) ||
      !absl::SimpleAtoi(fields[8], &r.seed)) {
    return absl::InvalidArgumentError(absl::StrCat("malformed row: ", Sv(line)));
  }
  return r;
}

absl::StatusOr<std::vector<TrialResult>> ReadResultsCsv(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::string line;
  if (!std::getline(in, line) || line != kResultsCsvHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path, "' lacks the results header"));
  }
  std::vector<TrialResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    absl::StatusOr<TrialResult> row = ParseResultRow(line);
    if (!row.ok()) return row.status();
    rows.push_back(*row);
  }
  return rows;
}

absl::StatusOr<std::vector<CellSummary>> Summarize(
    std::span<const TrialResult> results) {
  if (results.empty()) return absl::InvalidArgumentError("no results");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrialResult*>> groups;
  for (const TrialResult& r : results) {
    const std::string key =
        absl::StrCat(Sv(SchemeName(r.scheme)), ",", r.k, ",", r.s, ",", r.n, ",",
                     FormatDouble(r.eps_or_ell));
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<CellSummary> summary;
  for (const std::string& key : order) {
    const std::vector<const TrialResult*>& rows = groups[key];
    CellSummary cell;
    cell.scheme = rows[0]->scheme;
    cell.k = rows[0]->k;
    cell.s = rows[0]->s;
    cell.n = rows[0]->n;
    cell.eps_or_ell = rows[0]->eps_or_ell;
    cell.trials = static_cast<int64_t>(rows.size());
    double sum = 0.0;
    for (const TrialResult* r : rows) sum += r->tv_error;
    cell.mean_tv_error = sum / cell.trials;
    if (cell.trials > 1) {
      double squares = 0.0;
      for (const TrialResult* r : rows) {
        const double d = r->tv_error - cell.mean_tv_error;
        squares += d * d;
      }
      cell.standard_error =
          std::sqrt(squares / (cell.trials - 1)) / std::sqrt(cell.trials);
    } else {
      cell.degenerate = true;
    }
    summary.push_back(cell);
  }
  return summary;
}

nlohmann::json SummaryToJson(std::span<const CellSummary> summary) {
  nlohmann::json out = nlohmann::json::array();
  for (const CellSummary& c : summary) {
    out.push_back({{"scheme", std::string(SchemeName(c.scheme))},
                   {"k", c.k},
                   {"s", c.s},
                   {"n", c.n},
                   {"eps_or_ell", c.eps_or_ell},
                   {"trials", c.trials},
                   {"mean_tv_error", c.mean_tv_error},
                   {"standard_error", c.standard_error},
                   {"degenerate", c.degenerate}});
  }
  return out;
}

std::string SummaryToPlotCsv(std::span<const CellSummary> summary) {
  std::vector<const CellSummary*> rows;
  for (const CellSummary& c : summary) rows.push_back(&c);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CellSummary* a, const CellSummary* b) {
                     return std::tie(a->scheme, a->k, a->n, a->eps_or_ell,
                                     a->s) < std::tie(b->scheme, b->k, b->n,
                                                      b->eps_or_ell, b->s);
                   });
  std::string csv =
      "scheme,k,n,eps_or_ell,s,mean_tv_error,standard_error,trials\n";
  for (const CellSummary* c : rows) {
    absl::StrAppend(&csv, Sv(SchemeName(c->scheme)), ",", c->k, ",", c->n, ",",
                    FormatDouble(c->eps_or_ell), ",", c->s, ",",
                    FormatDouble(c->mean_tv_error), ",",
                    FormatDouble(c->standard_error), ",", c->trials, "\n");
  }
  return csv;
}

absl::StatusOr<std::string> PlanReport(PlanScheme scheme, int k, int s,
                                       double alpha, double epsilon_or_ell) {
  absl::StatusOr<SamplePlan> plan =
      PlannedSampleSize(scheme, k, s, alpha, epsilon_or_ell);
  if (!plan.ok()) return plan.status();
  std::string report;
  if (scheme == PlanScheme::kLdp) {
    absl::StrAppendFormat(&report,
                          "scheme: ldp (1-bit Hadamard response)\n"
                          "k=%d s=%d alpha=%g epsilon=%g\n"
                          "planned n: %d\n"
                          "TV risk bound at planned n: %.6g\n",
                          k, s, alpha, epsilon_or_ell, plan->total,
                          plan->risk_bound);
    return report;
  }
  const int ell = static_cast<int>(epsilon_or_ell);
  absl::StrAppendFormat(&report,
                        "scheme: comm (public-coin hashing)\n"
                        "k=%d s=%d alpha=%g ell=%d\n"
                        "effective ell: %d bits per user\n"
                        "stage one users per half: %.6g\n"
                        "stage two users per half: %.6g\n"
                        "planned n: %d\n"
                        "bound on expected in-support l1 error at planned n: "
                        "%.6g\n",
                        k, s, alpha, ell, plan->effective_ell, plan->stage_one,
                        plan->stage_two, plan->total, plan->risk_bound);
  if (std::ldexp(1.0, ell) >= s) {
    absl::StrAppendFormat(
        &report,
        "note: 2^ell >= s, so min{2^ell, s} = s and extra bits do not reduce "
        "n; only log s bits are needed\n");
  }
  if (plan->effective_ell < ell) {
    absl::StrAppendFormat(&report,
                          "note: ell capped at %d bits (ceil(log2 s) + 1)\n",
                          plan->effective_ell);
  }
  return report;
}

std::vector<BoundReport> RunBoundsVerification() {
  constexpr int kK = 6;
  constexpr int kS = 2;
  constexpr double kAlpha = 0.05;
  std::vector<BoundReport> reports;

  for (double eps : {0.5, 1.0, 2.0}) {
    std::vector<std::pair<std::string, Channel>> channels;
    channels.emplace_back("randomized_response",
                          RandomizedResponseChannel(kK + 1, eps));
    channels.emplace_back(
        "hadamard_response",
        *HrChannelMatrix(eps, *HadamardDim::OfSize(8), 3, kK + 1));
    channels.emplace_back("rappor", *RapporChannelMatrix(eps, kK + 1));
    for (const auto& [name, channel] : channels) {
      reports.push_back(BoundReport::Make(
          absl::StrCat("ldp_ratio/", name), MaxLogLikelihoodRatio(channel),
          eps, BoundReport::Direction::kUpper, {{"epsilon", eps}}));
      absl::StatusOr<double> chi2 =
          ExpectedChisqOverPacking(channel, kK, kS, kAlpha);
      reports.push_back(BoundReport::Make(
          absl::StrCat("ldp_chisq/", name), chi2.ok() ? *chi2 : NAN,
          LdpChisqBound(kAlpha, eps, kS), BoundReport::Direction::kUpper,
          {{"epsilon", eps}, {"k", kK}, {"s", kS}, {"alpha", kAlpha}}));
    }
  }

  RandomStream stream(/*master_seed=*/20260101, /*stream_id=*/0);
  for (int ell = 1; ell <= 3; ++ell) {
    for (int c = 0; c < 20; ++c) {
      const Channel channel = RandomChannel(kK + 1, 1 << ell, stream);
      absl::StatusOr<double> chi2 =
          ExpectedChisqOverPacking(channel, kK, kS, kAlpha);
      reports.push_back(BoundReport::Make(
          absl::StrCat("comm_chisq/random_", ell, "bit_", c),
          chi2.ok() ? *chi2 : NAN, CommChisqBound(kAlpha, ell, kS),
          BoundReport::Direction::kUpper,
          {{"ell", ell}, {"k", kK}, {"s", kS}, {"alpha", kAlpha}}));
    }
  }

  for (auto [k, s] : {std::pair{128, 1}, {200, 2}, {400, 4}, {1000, 8}}) {
    absl::StatusOr<BoundReport> gap = PackingGap(k, s);
    if (gap.ok()) reports.push_back(*gap);
    reports.push_back(BoundReport::Make(
        "neighborhood_vs_upper_bound", MaxHammingBallCount(k, s, s / 2.0),
        NeighborhoodUpperBound(k, s), BoundReport::Direction::kUpper,
        {{"k", k}, {"s", s}}));
  }
  return reports;
}

}  // namespace sparse_dist_lab
