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


// Scripted completion server for exercising the remote backend offline.
//
//   tabxform-mock-llm --script script.json [--host 127.0.0.1] [--port 8080]

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "tabxform/core.hpp"
#include "tabxform/io.hpp"
#include "tabxform/mock_server.hpp"

namespace {

tabxform::MockLlmServer* g_server = nullptr;

void OnSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scripted completion endpoint for the remote backend"};
  std::string script_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  app.add_option("--script", script_path, "Script JSON")->required();
  app.add_option("--host", host, "Bind address")->capture_default_str();
  app.add_option("--port", port, "Port")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    tabxform::MockLlmServer server(
        tabxform::MockScript::FromJson(tabxform::ReadFile(script_path)));
    g_server = &server;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    std::cerr << "serving on http://" << host << ":" << port << "/v1/complete\n";
    server.Listen(host, port);
    g_server = nullptr;
  } catch (const tabxform::Error& e) {
    std::cerr << "tabxform-mock-llm: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
