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

#include "tabxform/predictor.hpp"

#include <algorithm>

#include "tabxform/aggregator.hpp"

namespace tabxform {

SynthesisPredictor::SynthesisPredictor(SynthesisConfig cfg)
    : cfg_(std::move(cfg)) {
  cfg_.Validate();
}

std::optional<Transformation> SynthesisPredictor::ProgramFor(
    const Context& context) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(context); it != cache_.end()) return it->second;
  }
  // Synthesis is deterministic, so a racing duplicate computes the same value.
  auto program = SynthesizeTransformation(context, cfg_);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(context, std::move(program)).first->second;
}

std::optional<CellValue> SynthesisPredictor::Predict(
    const Context& context, const CellValue& query) const {
  if (context.size() < 1) {
    throw Error(ErrorCode::kConfig, "context must hold at least one example");
  }
  const auto program = ProgramFor(context);
  if (!program) return std::nullopt;
  // A program that yields "" for this query still predicts "".
  return ApplyTransformation(*program, query);
}

EnsemblePredictor::EnsemblePredictor(
    std::vector<std::unique_ptr<Predictor>> members)
    : members_(std::move(members)) {
  if (members_.size() < 2) {
    throw Error(ErrorCode::kConfig, "an ensemble needs at least two members");
  }
  for (const auto& m : members_) {
    if (dynamic_cast<const EnsemblePredictor*>(m.get())) {
      throw Error(ErrorCode::kConfig, "ensembles cannot be nested");
    }
  }
}

std::optional<CellValue> EnsemblePredictor::Predict(
    const Context& context, const CellValue& query) const {
  TrialSet set{query, {}};
  std::optional<RemoteError> last;
  for (const auto& m : members_) {
    try {
      set.outputs.push_back(m->Predict(context, query));
    } catch (const RemoteError& e) {
      last = e;
      set.outputs.emplace_back();
    }
  }
  const auto agg = Aggregate(set);
  if (!agg.target && last) throw *last;
  return agg.target;
}

std::string EnsemblePredictor::Name() const {
  std::string name = "ensemble(";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) name += ",";
    name += members_[i]->Name();
  }
  return name + ")";
}

namespace {

std::unique_ptr<Predictor> MakeMember(const MemberSpec& spec) {
  if (const auto* s = std::get_if<SynthesisConfig>(&spec)) {
    return std::make_unique<SynthesisPredictor>(*s);
  }
  return std::make_unique<RemotePredictor>(std::get<RemoteLlmConfig>(spec));
}

}  // namespace

std::unique_ptr<Predictor> MakePredictor(const PredictorSpec& spec) {
  if (const auto* e = std::get_if<EnsembleSpec>(&spec)) {
    std::vector<std::unique_ptr<Predictor>> members;
    for (const auto& m : e->members) members.push_back(MakeMember(m));
    return std::make_unique<EnsemblePredictor>(std::move(members));
  }
  if (const auto* s = std::get_if<SynthesisConfig>(&spec)) {
    return std::make_unique<SynthesisPredictor>(*s);
  }
  return std::make_unique<RemotePredictor>(std::get<RemoteLlmConfig>(spec));
}

void TrialDiagnostics::Merge(const TrialDiagnostics& other) {
  trials += other.trials;
  failed += other.failed;
  for (const auto& [status, n] : other.failures_by_status) {
    failures_by_status[status] += n;
  }
  if (!other.last_error.empty()) last_error = other.last_error;
}

std::vector<Trial> RunTrials(const std::vector<const Predictor*>& predictors,
                             const ExampleSet& examples,
                             const CellValue& query, std::size_t n_per_spec,
                             std::size_t k, Rng& rng,
                             TrialDiagnostics* diag) {
  if (n_per_spec < 1) {
    throw Error(ErrorCode::kConfig, "trials per predictor must be >= 1");
  }
  std::vector<const Predictor*> flat;
  for (const Predictor* p : predictors) {
    if (const auto* e = dynamic_cast<const EnsemblePredictor*>(p)) {
      for (const auto& m : e->members()) flat.push_back(m.get());
    } else {
      flat.push_back(p);
    }
  }

  TrialDiagnostics local;
  std::vector<Trial> trials;
  trials.reserve(flat.size() * n_per_spec);
  for (std::size_t spec = 0; spec < flat.size(); ++spec) {
    for (auto& context : SampleContexts(examples, k, n_per_spec, rng)) {
      Trial t{spec, std::move(context), std::nullopt};
      ++local.trials;
      try {
        t.output = flat[spec]->Predict(t.context, query);
      } catch (const RemoteError& e) {
        ++local.failed;
        ++local.failures_by_status[e.status()];
        local.last_error = e.what();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kOversizePrompt) throw;
        ++local.failed;
        ++local.failures_by_status[-1];
        local.last_error = e.what();
      }
      trials.push_back(std::move(t));
    }
  }
  std::stable_sort(trials.begin(), trials.end(),
                   [](const Trial& a, const Trial& b) {
                     if (a.spec_index != b.spec_index) {
                       return a.spec_index < b.spec_index;
                     }
                     return a.context < b.context;
                   });
  if (diag) diag->Merge(local);
  return trials;
}

}  // namespace tabxform
