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

#include "tabxform/mock_server.hpp"

#include "httplib.h"
#include "json.hpp"
#include "tabxform/core.hpp"

namespace tabxform {

MockScript MockScript::FromJson(std::string_view text) {
  MockScript s;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("completions")) {
      s.completions = j["completions"].get<std::map<std::string, std::string>>();
    }
    if (j.contains("failures")) {
      s.failures = j["failures"].get<std::map<std::string, int>>();
    }
    if (j.contains("default")) {
      s.default_status = j["default"].value("status", 200);
      s.default_text = j["default"].value("text", "");
    }
    s.fail_first = j.value("fail_first", 0);
    s.token = j.value("token", "");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad mock script: ") + e.what());
  }
  return s;
}

std::string PromptQuery(std::string_view prompt) {
  constexpr std::string_view kTail = "<tr><eos>";
  if (prompt.size() >= kTail.size() &&
      prompt.substr(prompt.size() - kTail.size()) == kTail) {
    prompt.remove_suffix(kTail.size());
  }
  std::size_t begin = 0;
  if (const auto eoe = prompt.rfind("<eoe>"); eoe != std::string_view::npos) {
    begin = eoe + 5;
  } else if (prompt.substr(0, 5) == "<sos>") {
    begin = 5;
  }
  return std::string(prompt.substr(begin));
}

struct MockLlmServer::Impl {
  MockScript script;
  httplib::Server server;
};

MockLlmServer::MockLlmServer(MockScript script) : impl_(std::make_unique<Impl>()) {
  impl_->script = std::move(script);
  impl_->server.Post(".*", [this](const httplib::Request& req, httplib::Response& res) {
    const long n = ++requests_;
    const MockScript& s = impl_->script;
    if (!s.token.empty() && req.get_header_value("Authorization") != "Bearer " + s.token) {
      res.status = 401;
      res.set_content("unauthorized", "text/plain");
      return;
    }
    if (n <= s.fail_first) {
      res.status = 500;
      res.set_content("scripted failure", "text/plain");
      return;
    }
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (!body.is_object() || !body.contains("prompt") || !body["prompt"].is_string()) {
      res.status = 400;
      res.set_content("missing prompt", "text/plain");
      return;
    }
    const std::string query = PromptQuery(body["prompt"].get<std::string>());
    if (auto f = s.failures.find(query); f != s.failures.end()) {
      res.status = f->second;
      res.set_content("scripted failure", "text/plain");
      return;
    }
    std::string text = s.default_text;
    int status = s.default_status;
    if (auto c = s.completions.find(query); c != s.completions.end()) {
      text = c->second;
      status = 200;
    }
    res.status = status;
    if (status != 200) {
      res.set_content("scripted failure", "text/plain");
      return;
    }
    nlohmann::ordered_json out;
    out["text"] = text;
    res.set_content(out.dump(), "application/json");
  });
}

MockLlmServer::~MockLlmServer() { Stop(); }

int MockLlmServer::Start(int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
  } else if (impl_->server.bind_to_port("127.0.0.1", port)) {
    port_ = port;
  } else {
    port_ = -1;
  }
  if (port_ < 0) throw Error(ErrorCode::kIo, "mock server could not bind");
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void MockLlmServer::Listen(const std::string& host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorCode::kIo, "mock server could not listen on " + host + ":" +
                                    std::to_string(port));
  }
}

void MockLlmServer::Stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockLlmServer::url() const {
  return "http://127.0.0.1:" + std::to_string(port_) + "/v1/complete";
}

}  // namespace tabxform
