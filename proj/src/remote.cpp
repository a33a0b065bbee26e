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

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "tabxform/predictor.hpp"

namespace tabxform {

void RemoteLlmConfig::Validate() const {
  if (endpoint.empty()) throw Error(ErrorCode::kConfig, "remote endpoint is empty");
  if (auth_env.empty()) {
    throw Error(ErrorCode::kConfig, "remote backend needs an auth env var name");
  }
  if (retries < 0) throw Error(ErrorCode::kConfig, "retries must be >= 0");
  if (timeout.count() <= 0) throw Error(ErrorCode::kConfig, "timeout must be > 0");
  if (max_in_flight < 1) throw Error(ErrorCode::kConfig, "max_in_flight must be >= 1");
  if (max_tokens < 1) throw Error(ErrorCode::kConfig, "max_tokens must be >= 1");
}

struct RemotePredictor::Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

namespace {

template <class Semaphore>
class Permit {
 public:
  explicit Permit(Semaphore& s) : s_(s) { s_.acquire(); }
  ~Permit() { s_.release(); }
  Permit(const Permit&) = delete;
  Permit& operator=(const Permit&) = delete;

 private:
  Semaphore& s_;
};

}  // namespace

RemotePredictor::RemotePredictor(RemoteLlmConfig cfg)
    : cfg_(std::move(cfg)),
      in_flight_(static_cast<std::ptrdiff_t>(std::max<std::size_t>(cfg_.max_in_flight, 1))) {
  cfg_.Validate();
  const char* token = std::getenv(cfg_.auth_env.c_str());
  if (token == nullptr) {
    throw Error(ErrorCode::kConfig,
                "environment variable " + cfg_.auth_env + " is not set");
  }
  token_ = token;

  const auto scheme_end = cfg_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfig, "endpoint must be an absolute URL: " + cfg_.endpoint);
  }
  const auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
  endpoint_ = std::make_unique<Endpoint>();
  endpoint_->origin = cfg_.endpoint.substr(0, path_start);
  endpoint_->path =
      path_start == std::string::npos ? "/" : cfg_.endpoint.substr(path_start);
}

RemotePredictor::~RemotePredictor() = default;

std::optional<CellValue> RemotePredictor::Predict(const Context& context,
                                                  const CellValue& query) const {
  const Prompt prompt = Serialize(context, query);
  if (prompt.text.size() > cfg_.max_prompt_bytes) {
    throw Error(ErrorCode::kOversizePrompt,
                "prompt is " + std::to_string(prompt.text.size()) +
                    " bytes, limit " + std::to_string(cfg_.max_prompt_bytes));
  }
  nlohmann::ordered_json body;
  body["prompt"] = prompt.text;
  body["temperature"] = cfg_.temperature;
  body["max_tokens"] = cfg_.max_tokens;
  const std::string payload = body.dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + token_}};

  const auto seconds = cfg_.timeout.count() / 1000;
  const auto micros = (cfg_.timeout.count() % 1000) * 1000;

  RemoteError last(0, "no attempt made");
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    httplib::Result res;
    {
      Permit permit(in_flight_);
      httplib::Client client(endpoint_->origin);
      client.set_connection_timeout(seconds, micros);
      client.set_read_timeout(seconds, micros);
      client.set_write_timeout(seconds, micros);
      res = client.Post(endpoint_->path, headers, payload, "application/json");
    }
    if (!res) {
      last = RemoteError(0, httplib::to_string(res.error()));
      continue;
    }
    if (res->status != 200) {
      last = RemoteError(res->status, res->body);
      continue;
    }
    if (res->body.empty()) return std::nullopt;
    const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_object() && parsed.contains("text") && parsed["text"].is_string()) {
      return ParseOutput(parsed["text"].get<std::string>());
    }
    // Not our schema: treat the body as the completion itself.
    return ParseOutput(res->body);
  }
  throw last;
}

}  // namespace tabxform
