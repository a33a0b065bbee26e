// Copyright 2026 The tabxform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabxform/joiner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "tabxform/aggregator.hpp"

namespace tabxform {

std::size_t EditDistance(std::u32string_view a, std::u32string_view b) {
  // Shared prefixes and suffixes never change the distance.
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1]
                   ? diag
                   : 1 + std::min({diag, up, row[j - 1]});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

std::size_t LengthGap(const CellValue& a, const CellValue& b) {
  return a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
}

}  // namespace

Match BestMatch(const CellValue& predicted, std::span<const CellValue> targets) {
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargetTable, "target table is empty");
  }
  Match best{0, EditDistance(predicted, targets[0])};
  for (std::size_t i = 1; i < targets.size(); ++i) {
    // The length gap is a lower bound; skipping cannot change the result.
    if (LengthGap(predicted, targets[i]) > best.distance) continue;
    const std::size_t d = EditDistance(predicted, targets[i]);
    if (d < best.distance ||
        (d == best.distance && targets[i] < targets[best.index])) {
      best = {i, d};
    }
  }
  return best;
}

std::vector<Match> BoundedMatches(const CellValue& predicted,
                                  std::span<const CellValue> targets,
                                  std::size_t min_distance,
                                  std::optional<std::size_t> max_distance) {
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargetTable, "target table is empty");
  }
  std::vector<Match> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (max_distance && LengthGap(predicted, targets[i]) > *max_distance) continue;
    const std::size_t d = EditDistance(predicted, targets[i]);
    if (d >= min_distance && (!max_distance || d <= *max_distance)) {
      out.push_back({i, d});
    }
  }
  std::sort(out.begin(), out.end(), [&](const Match& x, const Match& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (targets[x.index] != targets[y.index]) {
      return targets[x.index] < targets[y.index];
    }
    return x.index < y.index;
  });
  return out;
}

void JoinConfig::Validate() const {
  if (min_distance && max_distance && *min_distance > *max_distance) {
    throw Error(ErrorCode::kConfig, "min distance exceeds max distance");
  }
  if (context_size < 1) throw Error(ErrorCode::kConfig, "context size must be >= 1");
  if (trials < 1) throw Error(ErrorCode::kConfig, "trials must be >= 1");
  if (threads < 1) throw Error(ErrorCode::kConfig, "threads must be >= 1");
}

JoinReport Join(std::span<const CellValue> sources,
                std::span<const CellValue> targets, const ExampleSet& examples,
                const std::vector<const Predictor*>& predictors,
                const JoinConfig& cfg, Seed seed) {
  cfg.Validate();
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyTargetTable, "target table is empty");
  }
  if (predictors.empty()) throw Error(ErrorCode::kConfig, "no predictor given");
  if (examples.size() < cfg.context_size) {
    throw Error(ErrorCode::kInsufficientExamples,
                "need at least " + std::to_string(cfg.context_size) +
                    " examples, have " + std::to_string(examples.size()));
  }

  JoinReport report;
  report.rows.resize(sources.size());
  std::vector<TrialDiagnostics> diags(sources.size());

  auto run_row = [&](std::size_t i) {
    Rng rng(Rng::Derive(seed, {i}));
    const auto trials = RunTrials(predictors, examples, sources[i], cfg.trials,
                                  cfg.context_size, rng, &diags[i]);
    TrialSet set{sources[i], {}};
    for (const auto& t : trials) set.outputs.push_back(t.output);
    const AggregatedPrediction agg = Aggregate(set);

    JoinResult& row = report.rows[i];
    row.source = sources[i];
    row.predicted = agg.target;
    row.mode = cfg.mode;
    row.support = agg.support;
    row.trials = agg.trials;
    if (!agg.target) return;
    if (cfg.mode == JoinMode::kOneToOne) {
      row.matches.push_back(BestMatch(*agg.target, targets));
    } else {
      row.matches = BoundedMatches(*agg.target, targets,
                                   cfg.min_distance.value_or(0), cfg.max_distance);
    }
  };

  const std::size_t workers = std::min(cfg.threads, std::max<std::size_t>(sources.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < sources.size(); ++i) run_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < sources.size();) {
          try {
            run_row(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  for (const auto& d : diags) {
    report.diagnostics.Merge(d);
    if (d.trials > 0 && d.failed == d.trials) ++report.failed_rows;
  }
  return report;
}

}  // namespace tabxform
