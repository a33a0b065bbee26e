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

// A scripted completion server speaking the remote predictor protocol. Used
// by the test suite and by the tabxform-mock-llm tool.
//
// Script (JSON):
//   {
//     "completions": {"<query cell>": "<completion text>", ...},
//     "failures":    {"<query cell>": <http status>, ...},
//     "default":     {"status": 200, "text": ""},
//     "fail_first":  0,
//     "token":       "secret"
//   }
// The query cell is the text between the last <eoe> (or <sos>) and the
// trailing <tr><eos> of the prompt. "fail_first" makes the first N requests
// answer 500. When "token" is set, requests without the matching bearer
// token get 401.

#ifndef TABXFORM_MOCK_SERVER_HPP_
#define TABXFORM_MOCK_SERVER_HPP_

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

namespace tabxform {

struct MockScript {
  std::map<std::string, std::string> completions;
  std::map<std::string, int> failures;
  int default_status = 200;
  std::string default_text;
  int fail_first = 0;
  std::string token;

  static MockScript FromJson(std::string_view json);
};

// Extracts the query cell from a serialized prompt.
std::string PromptQuery(std::string_view prompt);

class MockLlmServer {
 public:
  explicit MockLlmServer(MockScript script);
  ~MockLlmServer();
  MockLlmServer(const MockLlmServer&) = delete;
  MockLlmServer& operator=(const MockLlmServer&) = delete;

  // Binds 127.0.0.1 (port 0 picks a free port) and serves on a background
  // thread.
  int Start(int port = 0);
  // Serves on the calling thread until Stop().
  void Listen(const std::string& host, int port);
  void Stop();

  int port() const { return port_; }
  std::string url() const;
  long requests() const { return requests_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<long> requests_{0};
};

}  // namespace tabxform

#endif  // TABXFORM_MOCK_SERVER_HPP_
