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

// Sequence predictors: given a context of example pairs and a query cell,
// produce a candidate target (or nothing).

#ifndef TABXFORM_PREDICTOR_HPP_
#define TABXFORM_PREDICTOR_HPP_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <variant>
#include <vector>

#include "tabxform/core.hpp"
#include "tabxform/rng.hpp"
#include "tabxform/serializer.hpp"
#include "tabxform/synthesis.hpp"

namespace tabxform {

// Completion endpoint speaking
//   POST {"prompt": str, "temperature": num, "max_tokens": int}
//   200  {"text": str}
struct RemoteLlmConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8080/v1/complete
  std::string auth_env;  // env var holding the bearer token
  double temperature = 0.0;
  std::size_t max_tokens = 64;
  std::size_t max_prompt_bytes = 8192;
  std::chrono::milliseconds timeout{10000};
  int retries = 2;
  std::size_t max_in_flight = 4;

  void Validate() const;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  // Throws RemoteError / OversizePrompt for remote failures. Thread-safe.
  virtual std::optional<CellValue> Predict(const Context& context,
                                           const CellValue& query) const = 0;
  virtual std::string Name() const = 0;
};

class SynthesisPredictor : public Predictor {
 public:
  explicit SynthesisPredictor(SynthesisConfig cfg);

  std::optional<CellValue> Predict(const Context& context,
                                   const CellValue& query) const override;
  std::string Name() const override { return "synthesis"; }

  // The cached program for a context (synthesized on first use).
  std::optional<Transformation> ProgramFor(const Context& context) const;

 private:
  SynthesisConfig cfg_;
  mutable std::mutex mu_;
  mutable std::map<Context, std::optional<Transformation>> cache_;
};

class RemotePredictor : public Predictor {
 public:
  // Reads the bearer token from cfg.auth_env; throws Error(kConfig) if the
  // variable is unset.
  explicit RemotePredictor(RemoteLlmConfig cfg);
  ~RemotePredictor() override;

  std::optional<CellValue> Predict(const Context& context,
                                   const CellValue& query) const override;
  std::string Name() const override { return "remote-llm"; }

 private:
  struct Endpoint;
  RemoteLlmConfig cfg_;
  std::string token_;
  std::unique_ptr<Endpoint> endpoint_;
  mutable std::counting_semaphore<> in_flight_;
};

// Equal-weight combination of member predictors. Predict() aggregates the
// members' outputs for a single context; RunTrials expands an ensemble into
// its members so each gets its own trials.
class EnsemblePredictor : public Predictor {
 public:
  explicit EnsemblePredictor(std::vector<std::unique_ptr<Predictor>> members);

  std::optional<CellValue> Predict(const Context& context,
                                   const CellValue& query) const override;
  std::string Name() const override;

  const std::vector<std::unique_ptr<Predictor>>& members() const {
    return members_;
  }

 private:
  std::vector<std::unique_ptr<Predictor>> members_;
};

using MemberSpec = std::variant<SynthesisConfig, RemoteLlmConfig>;
struct EnsembleSpec {
  std::vector<MemberSpec> members;  // at least two, no nesting
};
using PredictorSpec = std::variant<SynthesisConfig, RemoteLlmConfig, EnsembleSpec>;

std::unique_ptr<Predictor> MakePredictor(const PredictorSpec& spec);

struct Trial {
  std::size_t spec_index = 0;
  Context context;
  std::optional<CellValue> output;
};

struct TrialDiagnostics {
  std::size_t trials = 0;
  std::size_t failed = 0;  // remote errors folded into absent outputs
  std::map<int, std::size_t> failures_by_status;
  std::string last_error;

  void Merge(const TrialDiagnostics& other);
};

// n_per_spec trials per predictor (ensembles count as their members), each
// on a context drawn with SampleContexts. Output order is (spec index,
// context). Remote failures become absent outputs and are counted in diag.
std::vector<Trial> RunTrials(const std::vector<const Predictor*>& predictors,
                             const ExampleSet& examples,
                             const CellValue& query, std::size_t n_per_spec,
                             std::size_t k, Rng& rng,
                             TrialDiagnostics* diag = nullptr);

}  // namespace tabxform

#endif  // TABXFORM_PREDICTOR_HPP_
