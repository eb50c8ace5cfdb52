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

#include "madawipol/service.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <httplib.h>

#include "madawipol/config_io.h"
#include "madawipol/default_library.h"
#include "madawipol/render.h"
#include "madawipol/snapshot.h"

namespace madawipol::service {
namespace {

using assembly::AssemblyError;
using nlohmann::json;

// Raised inside request handlers and turned into an error response.
struct HttpError {
  int status;
  std::string kind;
  std::string message;
  json extra = json::object();
};

Response jsonResponse(int status, const json& body) { return {status, "application/json", body.dump()}; }

Response errorResponse(const HttpError& e) {
  json body = e.extra;
  body["error"] = e.kind;
  body["message"] = e.message;
  return jsonResponse(e.status, body);
}

std::vector<std::string> splitPath(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

json parseBody(const Request& request) {
  json body;
  try {
    body = json::parse(request.body.empty() ? std::string("{}") : request.body);
  } catch (const json::parse_error& e) {
    throw HttpError{422, "MalformedJson", e.what()};
  }
  if (!body.is_object()) throw HttpError{422, "MalformedCommand", "the request body must be a JSON object"};
  return body;
}

std::string requireString(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw HttpError{422, "MalformedCommand", std::string("\"") + key + "\" must be a string"};
  }
  return it->get<std::string>();
}

std::optional<long> optionalRevision(const json& body) {
  auto it = body.find("revision");
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw HttpError{422, "MalformedCommand", "\"revision\" must be an integer"};
  return it->get<long>();
}

long requireRevision(const json& body) {
  const std::optional<long> r = optionalRevision(body);
  if (!r) throw HttpError{422, "MalformedCommand", "\"revision\" is required"};
  return *r;
}

long parseLong(const std::string& text, const char* what) {
  long v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw HttpError{422, "MalformedCommand", std::string(what) + " must be an integer"};
  }
  return v;
}

assembly::JointRef parseRef(const std::string& text) {
  try {
    return assembly::parseJointRef(text);
  } catch (const std::invalid_argument& e) {
    throw HttpError{422, "MalformedJointRef", e.what()};
  }
}

HttpError fromAssemblyError(const AssemblyError& e) {
  return {422, assembly::assemblyErrorKindName(e.kind()), e.what()};
}

}  // namespace

struct Service::Session {
  Session(std::string config, std::shared_ptr<forms::FormCompiler> compiler)
      : configId(std::move(config)), assembly(std::move(compiler)) {}

  std::mutex mu;
  std::string configId;
  assembly::Assembly assembly;
  long revision = 0;
  json log = json::array();

  void checkRevision(long expected) const {
    if (expected != revision) {
      throw HttpError{409, "StaleRevision",
                      "revision " + std::to_string(expected) + " is not the current revision " +
                          std::to_string(revision),
                      {{"revision", revision}}};
    }
  }
};

assembly::Assembly replay(std::shared_ptr<forms::FormCompiler> compiler, const json& log) {
  assembly::Assembly a(std::move(compiler));
  for (const json& entry : log) {
    const std::string op = entry.at("op").get<std::string>();
    if (op == "addBlock") {
      std::optional<textlang::TypeExpr> annotation;
      if (entry.contains("annotation")) annotation = textlang::parseTypeExpr(entry["annotation"].get<std::string>());
      a.addMConstructor(entry.at("consName").get<std::string>(), annotation);
    } else if (op == "join") {
      const auto r = a.tryJoin(assembly::parseJointRef(entry.at("male").get<std::string>()),
                               assembly::parseJointRef(entry.at("female").get<std::string>()));
      if (!r.joined) throw std::invalid_argument("logged join no longer fits: " + entry.dump());
    } else if (op == "unjoin") {
      a.unjoin(assembly::parseJointRef(entry.at("male").get<std::string>()));
    } else {
      throw std::invalid_argument("unknown log entry: " + entry.dump());
    }
  }
  return a;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  configs_.emplace("default", std::make_shared<forms::FormCompiler>(
                                  std::make_shared<const forms::TranslationConfig>(forms::defaultConfig())));
  if (options_.persistDir) std::filesystem::create_directories(*options_.persistDir);
}

Service::~Service() = default;

std::string Service::addConfig(const forms::TranslationConfig& cfg) {
  auto compiler = std::make_shared<forms::FormCompiler>(std::make_shared<const forms::TranslationConfig>(cfg));
  std::lock_guard<std::mutex> lock(mu_);
  const std::string id = "cfg-" + std::to_string(nextConfig_++);
  configs_.emplace(id, std::move(compiler));
  return id;
}

Response Service::handle(const Request& request) {
  try {
    const std::vector<std::string> parts = splitPath(request.path);
    if (parts.size() == 1 && parts[0] == "configs") {
      if (request.method != "POST") throw HttpError{405, "MethodNotAllowed", "use POST /configs"};
      return createConfig(request);
    }
    if (parts.size() == 1 && parts[0] == "sessions") {
      if (request.method != "POST") throw HttpError{405, "MethodNotAllowed", "use POST /sessions"};
      return createSession(request);
    }
    if (parts.size() >= 3 && parts[0] == "sessions") {
      std::string rest = parts[2];
      for (std::size_t i = 3; i < parts.size(); ++i) rest += "/" + parts[i];
      return sessionRequest(parts[1], rest, request);
    }
    throw HttpError{404, "NotFound", "no resource at " + request.path};
  } catch (const HttpError& e) {
    return errorResponse(e);
  } catch (const std::exception& e) {
    return errorResponse({500, "InternalError", e.what()});
  }
}

Response Service::createConfig(const Request& request) {
  const json body = parseBody(request);
  forms::TranslationConfig cfg;
  try {
    cfg = forms::configFromJson(body);
  } catch (const forms::ConfigError& e) {
    throw HttpError{422, "ConfigError", e.what()};
  }
  const std::vector<forms::Violation> violations = forms::validateConfig(cfg);
  if (!violations.empty()) {
    json list = json::array();
    for (const forms::Violation& v : violations) {
      list.push_back({{"kind", forms::violationKindName(v.kind)}, {"subjects", v.subjects}, {"message", v.message}});
    }
    throw HttpError{422, "InvalidConfig", "the configuration violates " + std::to_string(violations.size()) +
                                              " constraint(s)",
                    {{"violations", list}}};
  }
  return jsonResponse(201, {{"configId", addConfig(cfg)}});
}

Response Service::createSession(const Request& request) {
  const json body = parseBody(request);
  const std::string configId = requireString(body, "configId");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = configs_.find(configId);
  if (it == configs_.end()) throw HttpError{422, "UnknownConfig", "no configuration " + configId};
  const std::string id = "s-" + std::to_string(nextSession_++);
  sessions_.emplace(id, std::make_shared<Session>(configId, it->second));
  return jsonResponse(201, {{"sessionId", id}, {"revision", 0}});
}

void Service::persist(const std::string& id, const Session& s) const {
  if (!options_.persistDir) return;
  const std::filesystem::path dir(*options_.persistDir);
  const std::filesystem::path tmp = dir / (id + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << json{{"sessionId", id},
                {"configId", s.configId},
                {"revision", s.revision},
                {"commands", s.log},
                {"state", snapshot::snapshotJson(s.assembly)}}
               .dump(2)
        << '\n';
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, dir / (id + ".json"));
}

Response Service::sessionRequest(const std::string& id, const std::string& rest, const Request& request) {
  std::shared_ptr<Session> session;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw HttpError{404, "UnknownSession", "no session " + id};
    session = it->second;
  }
  Session& s = *session;
  std::lock_guard<std::mutex> lock(s.mu);
  const std::string& m = request.method;

  if (rest == "blocks" && m == "POST") {
    const json body = parseBody(request);
    const std::string consName = requireString(body, "consName");
    if (const auto r = optionalRevision(body)) s.checkRevision(*r);
    std::optional<textlang::TypeExpr> annotation;
    if (body.contains("annotation") && !body["annotation"].is_null()) {
      try {
        annotation = textlang::parseTypeExpr(requireString(body, "annotation"));
      } catch (const textlang::ParseError& e) {
        throw HttpError{422, "MalformedCommand", e.what()};
      }
    }
    assembly::InstanceId instance = 0;
    try {
      instance = s.assembly.addMConstructor(consName, annotation);
    } catch (const AssemblyError& e) {
      throw fromAssemblyError(e);
    }
    json entry = {{"op", "addBlock"}, {"consName", consName}};
    if (annotation) entry["annotation"] = textlang::printType(*annotation);
    s.log.push_back(std::move(entry));
    ++s.revision;
    persist(id, s);
    return jsonResponse(201, {{"instanceId", instance},
                              {"joints", snapshot::jointsJson(s.assembly, instance)},
                              {"revision", s.revision}});
  }

  if (rest == "joins" && m == "POST") {
    const json body = parseBody(request);
    const assembly::JointRef male = parseRef(requireString(body, "male"));
    const assembly::JointRef female = parseRef(requireString(body, "female"));
    s.checkRevision(requireRevision(body));
    assembly::JoinOutcome outcome;
    try {
      outcome = s.assembly.tryJoin(male, female);
    } catch (const AssemblyError& e) {
      throw fromAssemblyError(e);
    }
    if (!outcome.joined) return jsonResponse(200, {{"joined", false}, {"revision", s.revision}});
    s.log.push_back({{"op", "join"},
                     {"male", assembly::formatJointRef(male)},
                     {"female", assembly::formatJointRef(female)}});
    ++s.revision;
    persist(id, s);
    return jsonResponse(
        200, {{"joined", true}, {"delta", snapshot::deltaJson(s.assembly, outcome.delta)}, {"revision", s.revision}});
  }

  if (rest.rfind("joins/", 0) == 0 && m == "DELETE") {
    const assembly::JointRef male = parseRef(rest.substr(6));
    auto rev = request.query.find("revision");
    if (rev == request.query.end()) throw HttpError{422, "MalformedCommand", "query parameter revision is required"};
    s.checkRevision(parseLong(rev->second, "revision"));
    assembly::TypeDelta delta;
    try {
      delta = s.assembly.unjoin(male);
    } catch (const AssemblyError& e) {
      throw fromAssemblyError(e);
    }
    s.log.push_back({{"op", "unjoin"}, {"male", assembly::formatJointRef(male)}});
    ++s.revision;
    persist(id, s);
    return jsonResponse(200, {{"delta", snapshot::deltaJson(s.assembly, delta)}, {"revision", s.revision}});
  }

  if (rest == "state" && m == "GET") {
    json state = snapshot::snapshotJson(s.assembly);
    state["revision"] = s.revision;
    return jsonResponse(200, state);
  }

  if (rest == "render.svg" && m == "GET") {
    render::CutPlane plane;
    if (auto it = request.query.find("axis"); it != request.query.end()) {
      if (it->second != "x" && it->second != "y") throw HttpError{422, "MalformedCommand", "axis must be x or y"};
      plane.axis = it->second == "x" ? 0 : 1;
    }
    if (auto it = request.query.find("offset"); it != request.query.end()) {
      try {
        std::size_t used = 0;
        plane.offset = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        throw HttpError{422, "MalformedCommand", "offset must be a number"};
      }
    }
    try {
      return {200, "image/svg+xml", render::crossSectionSvg(s.assembly, plane)};
    } catch (const render::RenderError& e) {
      throw HttpError{422, render::renderErrorKindName(e.kind()), e.what()};
    }
  }

  if (rest == "log" && m == "GET") {
    return jsonResponse(200, {{"configId", s.configId}, {"revision", s.revision}, {"commands", s.log}});
  }

  const bool known = rest == "blocks" || rest == "joins" || rest.rfind("joins/", 0) == 0 || rest == "state" ||
                     rest == "render.svg" || rest == "log";
  if (known) throw HttpError{405, "MethodNotAllowed", m + " is not supported on " + request.path};
  throw HttpError{404, "NotFound", "no resource at " + request.path};
}

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}

  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    r.body = req.body;
    const Response out = impl_->service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.contentType);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind to " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind to " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace madawipol::service
