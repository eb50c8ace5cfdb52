// Copyright 2026 The Madawipol Authors
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

#ifndef MADAWIPOL_SERVICE_H_
#define MADAWIPOL_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "madawipol/assembly.h"
#include "madawipol/forms.h"

namespace madawipol::service {

struct Request {
  std::string method;  // GET, POST or DELETE
  std::string path;    // decoded, without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string contentType = "application/json";
  std::string body;

  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

// Rebuilds an assembly from a session's command log. Throws
// std::invalid_argument when an entry cannot be applied.
assembly::Assembly replay(std::shared_ptr<forms::FormCompiler> compiler, const nlohmann::json& log);

struct ServiceOptions {
  // When set, every session is written to <dir>/<sessionId>.json after each
  // mutation.
  std::optional<std::string> persistDir;
};

// Configurations and editing sessions behind a JSON request interface.
// Requests for different sessions run concurrently; requests for one
// session are serialised.
//
//   POST   /configs                          TranslationConfig JSON
//   POST   /sessions                         {configId}
//   POST   /sessions/{id}/blocks             {consName, annotation?, revision?}
//   POST   /sessions/{id}/joins              {male, female, revision}
//   DELETE /sessions/{id}/joins/{maleRef}    ?revision=N
//   GET    /sessions/{id}/state
//   GET    /sessions/{id}/render.svg         ?axis=x|y&offset=d
//   GET    /sessions/{id}/log
//
// The configuration "default" is always present.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Response handle(const Request& request);

  // Registers a configuration under a fresh id. Throws forms::ConfigError.
  std::string addConfig(const forms::TranslationConfig& cfg);

 private:
  struct Session;

  Response createConfig(const Request& request);
  Response createSession(const Request& request);
  Response sessionRequest(const std::string& id, const std::string& rest, const Request& request);
  void persist(const std::string& id, const Session& session) const;

  ServiceOptions options_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<forms::FormCompiler>> configs_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  long nextConfig_ = 1;
  long nextSession_ = 1;
};

// Serves service over HTTP until stop() is called.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds and returns the port; port 0 picks a free one.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace madawipol::service

#endif  // MADAWIPOL_SERVICE_H_
