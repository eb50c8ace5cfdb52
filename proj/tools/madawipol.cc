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

// Command-line front end. Exit status: 0 for success or a positive
// answer, 1 for a negative answer (violations, no fit, not unifiable,
// unjoinable), 2 for usage and input errors.

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "madawipol/assembly.h"
#include "madawipol/config_io.h"
#include "madawipol/default_library.h"
#include "madawipol/render.h"
#include "madawipol/service.h"
#include "madawipol/snapshot.h"

namespace {

using namespace madawipol;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Options {
  std::string configPath;
  bool json = false;
  std::string type;
  std::string male;
  std::string female;
  std::string ads;
  std::string gender = "male";
  std::string format = "svg";
  std::string axis = "y";
  double offset = 0;
  std::string out;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string persistDir;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

forms::TranslationConfig loadConfig(const Options& o) {
  if (o.configPath.empty()) return forms::defaultConfig();
  return forms::loadConfigFile(o.configPath);
}

std::shared_ptr<forms::FormCompiler> compilerFor(const Options& o) {
  return std::make_shared<forms::FormCompiler>(std::make_shared<const forms::TranslationConfig>(loadConfig(o)));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + o.out);
}

std::string regionSummary(const forms::Region& r) {
  std::string s = std::to_string(r.rings().size()) + " ring(s), " + std::to_string(r.vertexCount()) +
                  " vertices, area " + geometry::formatRational(geometry::area(r));
  if (auto box = geometry::boundingBox(r)) {
    s += ", bounds [" + geometry::formatRational(box->min.x()) + ", " + geometry::formatRational(box->max.x()) +
         "] x [" + geometry::formatRational(box->min.y()) + ", " + geometry::formatRational(box->max.y()) + "]";
  }
  return s;
}

int checkConfig(const Options& o) {
  const forms::TranslationConfig cfg = loadConfig(o);
  const std::vector<forms::Violation> violations = forms::validateConfig(cfg);
  if (o.json) {
    json list = json::array();
    for (const auto& v : violations) {
      list.push_back({{"kind", forms::violationKindName(v.kind)}, {"subjects", v.subjects}, {"message", v.message}});
    }
    std::cout << json{{"violations", list}}.dump(2) << '\n';
  } else if (violations.empty()) {
    std::cout << "OK: no violations\n";
  } else {
    for (const auto& v : violations) std::cout << forms::violationKindName(v.kind) << ": " << v.message << '\n';
  }
  return violations.empty() ? kOk : kNegative;
}

int typeform(const Options& o) {
  const auto compiler = compilerFor(o);
  const textlang::TypeExpr t = textlang::parseTypeExpr(o.type);
  const auto tf = compiler->typeForm(t);
  if (o.json) {
    json j = {{"type", textlang::printType(t)}, {"rigid", forms::regionToJson(tf->rigid)}};
    if (tf->poly) {
      const auto& l = tf->poly->argTransform;
      j["poly"] = {{"surface", forms::regionToJson(tf->poly->surface)},
                   {"argTransform",
                    {{geometry::formatRational(l(0, 0)), geometry::formatRational(l(0, 1))},
                     {geometry::formatRational(l(1, 0)), geometry::formatRational(l(1, 1))}}}};
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "type:    " << textlang::printType(t) << '\n';
  std::cout << "rigid:   " << regionSummary(tf->rigid) << '\n';
  if (tf->poly) {
    const auto& l = tf->poly->argTransform;
    std::cout << "surface: " << regionSummary(tf->poly->surface) << '\n';
    std::cout << "argument transform: [[" << geometry::formatRational(l(0, 0)) << ", "
              << geometry::formatRational(l(0, 1)) << "], [" << geometry::formatRational(l(1, 0)) << ", "
              << geometry::formatRational(l(1, 1)) << "]]\n";
  } else {
    std::cout << "surface: none\n";
  }
  return kOk;
}

int fit(const Options& o) {
  const auto compiler = compilerFor(o);
  const bool fits = compiler->fits(textlang::parseTypeExpr(o.male), textlang::parseTypeExpr(o.female));
  if (o.json) {
    std::cout << json{{"fits", fits}}.dump() << '\n';
  } else {
    std::cout << (fits ? "fits" : "does not fit") << '\n';
  }
  return fits ? kOk : kNegative;
}

int unify(const std::string& a, const std::string& b, const Options& o) {
  const textlang::TypeExpr t1 = textlang::parseTypeExpr(a);
  const textlang::TypeExpr t2 = textlang::parseTypeExpr(b);
  const auto s = typesys::unifyFresh(t1, t2);
  if (!s) {
    std::cout << (o.json ? json{{"unifiable", false}}.dump() : std::string("NOT-UNIFIABLE")) << '\n';
    return kNegative;
  }
  const textlang::TypeExpr unified = typesys::normalizeVars(typesys::applySubst(*s, typesys::renameVars(t1, "1")));
  if (o.json) {
    json subst = json::object();
    for (const auto& [v, t] : *s) subst[v] = textlang::printType(t);
    std::cout << json{{"unifiable", true}, {"type", textlang::printType(unified)}, {"substitution", subst}}.dump(2)
              << '\n';
  } else {
    std::cout << textlang::printType(unified) << '\n';
    for (const auto& [v, t] : *s) std::cout << "  " << v << " := " << textlang::printType(t) << '\n';
  }
  return kOk;
}

int translate(const Options& o) {
  const auto compiler = compilerFor(o);
  const textlang::Ads ads = textlang::parseAds(o.ads);
  const std::optional<assembly::Assembly> a = assembly::translateAds(compiler, ads);
  if (!a) {
    std::cout << (o.json ? json{{"joinable", false}}.dump() : std::string("UNJOINABLE")) << '\n';
    return kNegative;
  }
  emit(o, snapshot::snapshotJson(*a).dump(2) + "\n");
  return kOk;
}

render::CutPlane cutPlane(const Options& o) {
  if (o.axis != "x" && o.axis != "y") throw UsageError("--axis must be x or y");
  return render::CutPlane{o.axis == "x" ? 0 : 1, o.offset};
}

// Places every block and joint of the assembly in world coordinates.
std::vector<render::MeshGroup> assemblyMesh(const assembly::Assembly& a) {
  std::vector<render::MeshGroup> out;
  const auto transforms = assembly::blockTransforms(a);
  const forms::TranslationConfig& cfg = a.config();
  auto place = [&](std::vector<render::MeshGroup> groups, const Eigen::Isometry3d& t, const std::string& prefix) {
    for (render::MeshGroup& g : groups) {
      for (Eigen::Vector3d& v : g.vertices) v = t * v;
      g.name = prefix + g.name;
      out.push_back(std::move(g));
    }
  };
  for (const auto& [id, inst] : a.instances()) {
    const Eigen::Isometry3d& t = transforms.at(id);
    const std::string prefix = "i" + std::to_string(id) + "_";
    if (auto body = cfg.blockMapping.find(inst.consName); body != cfg.blockMapping.end()) {
      place(render::blockMesh(body->second), t, prefix);
    }
    if (inst.result) {
      const auto tf = a.compiler().typeForm(inst.result->currentType);
      place(render::jointMesh(forms::maleJointForm3D(cfg, *tf)), t * inst.result->placement.transform(),
            prefix + "result_");
    }
    for (std::size_t i = 0; i < inst.args.size(); ++i) {
      const auto tf = a.compiler().typeForm(inst.args[i].currentType);
      place(render::jointMesh(forms::femaleJointForm3D(cfg, *tf)), t * inst.args[i].placement.transform(),
            prefix + "arg" + std::to_string(i) + "_");
    }
  }
  return out;
}

int renderCommand(const Options& o) {
  if (o.format != "svg" && o.format != "obj") throw UsageError("--format must be svg or obj");
  if (o.ads.empty() == o.type.empty()) throw UsageError("render needs exactly one of --ads and --type");
  const auto compiler = compilerFor(o);
  if (!o.ads.empty()) {
    const std::optional<assembly::Assembly> a = assembly::translateAds(compiler, textlang::parseAds(o.ads));
    if (!a) {
      std::cerr << "UNJOINABLE\n";
      return kNegative;
    }
    emit(o, o.format == "svg" ? render::crossSectionSvg(*a, cutPlane(o)) : render::toObj(assemblyMesh(*a), "assembly"));
    return kOk;
  }
  if (o.gender != "male" && o.gender != "female") throw UsageError("--gender must be male or female");
  const auto tf = compiler->typeForm(textlang::parseTypeExpr(o.type));
  const forms::JointForm3D joint = o.gender == "male" ? forms::maleJointForm3D(compiler->config(), *tf)
                                                      : forms::femaleJointForm3D(compiler->config(), *tf);
  emit(o, o.format == "svg" ? render::crossSectionSvg(joint, cutPlane(o))
                            : render::toObj(render::jointMesh(joint), o.gender + "_joint"));
  return kOk;
}

service::HttpServer* activeServer = nullptr;

int serve(const Options& o) {
  service::ServiceOptions options;
  if (!o.persistDir.empty()) options.persistDir = o.persistDir;
  service::Service svc(options);
  if (!o.configPath.empty()) {
    const std::string id = svc.addConfig(forms::loadConfigFile(o.configPath));
    std::cout << "loaded " << o.configPath << " as " << id << '\n';
  }
  service::HttpServer server(svc);
  const int port = server.bind(o.host, o.port);
  std::cout << "listening on http://" << o.host << ':' << port << std::endl;
  activeServer = &server;
  std::signal(SIGINT, [](int) {
    if (activeServer) activeServer->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (activeServer) activeServer->stop();
  });
  server.listen();
  activeServer = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Madawipol: algebraic data types as physical blocks with joints"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.configPath, "Translation configuration JSON (default: built-in library)")
      ->envname("MADAWIPOL_CONFIG");
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check-config", "Validate a translation configuration");
  auto* tform = app.add_subcommand("typeform", "Print the regions that make up a type's form");
  tform->add_option("type", o.type, "Type, e.g. \"List Bool\"")->required();
  auto* fitCmd = app.add_subcommand("fit", "Does a male joint of one type fit a female joint of another?");
  fitCmd->add_option("--male", o.male)->required();
  fitCmd->add_option("--female", o.female)->required();
  std::string u1, u2;
  auto* unifyCmd = app.add_subcommand("unify", "Most general unifier of two types");
  unifyCmd->add_option("first", u1)->required();
  unifyCmd->add_option("second", u2)->required();
  auto* trans = app.add_subcommand("translate", "Build the assembly for an algebraic data structure");
  trans->add_option("--ads", o.ads, "Structure, e.g. \"Cons True Nil\"")->required();
  trans->add_option("--out", o.out, "Output file (default: stdout)");
  auto* rend = app.add_subcommand("render", "Write an SVG cross-section or an OBJ mesh");
  rend->add_option("--ads", o.ads, "Render the assembly of this structure");
  rend->add_option("--type", o.type, "Render a single joint of this type");
  rend->add_option("--gender", o.gender, "Joint gender for --type: male or female");
  rend->add_option("--format", o.format, "svg or obj");
  rend->add_option("--axis", o.axis, "Cutting plane normal for svg: x or y");
  rend->add_option("--offset", o.offset, "Cutting plane offset for svg");
  rend->add_option("--out", o.out, "Output file (default: stdout)");
  auto* srv = app.add_subcommand("serve", "Run the HTTP editing service");
  srv->add_option("--host", o.host, "Interface to listen on")->capture_default_str();
  srv->add_option("--port", o.port, "TCP port; 0 picks a free one")->capture_default_str();
  srv->add_option("--persist-dir", o.persistDir, "Write session snapshots here");
  auto* defaults = app.add_subcommand("default-config", "Print the built-in configuration as JSON");
  defaults->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return checkConfig(o);
    if (*tform) return typeform(o);
    if (*fitCmd) return fit(o);
    if (*unifyCmd) return unify(u1, u2, o);
    if (*trans) return translate(o);
    if (*rend) return renderCommand(o);
    if (*srv) return serve(o);
    if (*defaults) {
      std::cout << forms::configToJson(forms::defaultConfig()).dump(2) << '\n';
      return kOk;
    }
  } catch (const textlang::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const forms::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
