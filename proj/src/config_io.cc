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

#include "madawipol/config_io.h"

#include <fstream>
#include <sstream>

namespace madawipol::forms {
namespace {

using nlohmann::json;

Rational rationalFrom(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return geometry::parseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a rational string such as \"7/20\"");
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

json placementToJson(const Placement& p) {
  return {{"position", {p.position.x(), p.position.y(), p.position.z()}},
          {"orientation",
           {p.orientation.w(), p.orientation.x(), p.orientation.y(), p.orientation.z()}}};
}

Placement placementFromJson(const json& j, const std::string& where) {
  const json& pos = field(j, "position", where);
  const json& rot = field(j, "orientation", where);
  if (!pos.is_array() || pos.size() != 3 || !rot.is_array() || rot.size() != 4) {
    throw ConfigError(where + ": position needs 3 numbers and orientation 4 (w, x, y, z)");
  }
  Placement p;
  try {
    p.position = Eigen::Vector3d(pos[0].get<double>(), pos[1].get<double>(), pos[2].get<double>());
    p.orientation = Eigen::Quaterniond(rot[0].get<double>(), rot[1].get<double>(),
                                       rot[2].get<double>(), rot[3].get<double>());
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return p;
}

json transformToJson(const Transform& t) {
  return json::array({json::array({geometry::formatRational(t(0, 0)), geometry::formatRational(t(0, 1))}),
                      json::array({geometry::formatRational(t(1, 0)), geometry::formatRational(t(1, 1))})});
}

Transform transformFromJson(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2) {
    throw ConfigError(where + ": argTransform must be a 2x2 array of rationals");
  }
  Transform t;
  t << rationalFrom(j[0][0], where), rationalFrom(j[0][1], where), rationalFrom(j[1][0], where),
      rationalFrom(j[1][1], where);
  return t;
}

std::vector<std::string> stringList(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) throw ConfigError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string joinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

}  // namespace

json regionToJson(const Region& r) {
  json rings = json::array();
  for (const auto& ring : r.rings()) {
    json pts = json::array();
    for (const auto& p : ring) {
      pts.push_back({geometry::formatRational(p.x()), geometry::formatRational(p.y())});
    }
    rings.push_back(std::move(pts));
  }
  return rings;
}

Region regionFromJson(const json& j) {
  if (!j.is_array()) throw ConfigError("region must be an array of rings");
  std::vector<Region::Ring> rings;
  for (const json& ring : j) {
    if (!ring.is_array()) throw ConfigError("ring must be an array of points");
    Region::Ring pts;
    for (const json& p : ring) {
      if (!p.is_array() || p.size() != 2) throw ConfigError("point must be [x, y]");
      pts.emplace_back(rationalFrom(p[0], "point"), rationalFrom(p[1], "point"));
    }
    rings.push_back(std::move(pts));
  }
  return Region::fromRings(rings);
}

json configToJson(const TranslationConfig& cfg) {
  json j;
  j["alignmentSquare"] = {{"outerSide", geometry::formatRational(cfg.alignment.outerSide)},
                          {"frameThickness", geometry::formatRational(cfg.alignment.frameThickness)}};
  j["vJntSz"] = geometry::formatRational(cfg.vJntSz);
  j["edgeEpsilon"] = geometry::formatRational(cfg.edgeEpsilon);
  j["flexible"] = cfg.flexible;
  json adts = json::array();
  for (const auto& d : cfg.adtdSet.adts()) adts.push_back(textlang::printAdtDef(d));
  json flex = json::array();
  for (const auto& d : cfg.adtdSet.flexDecls()) flex.push_back(textlang::printFlexDecl(d));
  j["adtdSet"] = {{"adts", adts}, {"flex", flex}};
  json forms = json::object();
  for (const auto& [name, f] : cfg.typeConsMapping) {
    json e = {{"rigid", regionToJson(f.rigid)}};
    if (f.poly) {
      e["poly"] = {{"surface", regionToJson(f.poly->surface)},
                   {"argTransform", transformToJson(f.poly->argTransform)}};
    }
    forms[name] = std::move(e);
  }
  j["typeConsMapping"] = std::move(forms);
  json blocks = json::object();
  for (const auto& [name, prisms] : cfg.blockMapping) {
    json list = json::array();
    for (const Prism& p : prisms) {
      list.push_back({{"crossSection", regionToJson(p.crossSection)},
                      {"zLow", geometry::formatRational(p.zLow)},
                      {"zHigh", geometry::formatRational(p.zHigh)}});
    }
    blocks[name] = std::move(list);
  }
  j["blockMapping"] = std::move(blocks);
  json args = json::object();
  for (const auto& [name, placements] : cfg.argLocationMapping) {
    json list = json::array();
    for (const Placement& p : placements) list.push_back(placementToJson(p));
    args[name] = std::move(list);
  }
  j["argLocationMapping"] = std::move(args);
  json results = json::object();
  for (const auto& [name, p] : cfg.resultLocationMapping) results[name] = placementToJson(p);
  j["resultLocationMapping"] = std::move(results);
  return j;
}

TranslationConfig configFromJson(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  TranslationConfig cfg;
  if (j.contains("alignmentSquare")) {
    const json& a = j.at("alignmentSquare");
    cfg.alignment.outerSide = rationalFrom(field(a, "outerSide", "alignmentSquare"), "outerSide");
    cfg.alignment.frameThickness =
        rationalFrom(field(a, "frameThickness", "alignmentSquare"), "frameThickness");
  }
  if (j.contains("vJntSz")) cfg.vJntSz = rationalFrom(j.at("vJntSz"), "vJntSz");
  if (j.contains("edgeEpsilon")) cfg.edgeEpsilon = rationalFrom(j.at("edgeEpsilon"), "edgeEpsilon");
  if (j.contains("flexible")) {
    if (!j.at("flexible").is_boolean()) throw ConfigError("flexible must be a boolean");
    cfg.flexible = j.at("flexible").get<bool>();
  }
  const json& set = field(j, "adtdSet", "configuration");
  const std::vector<std::string> adts = stringList(field(set, "adts", "adtdSet"), "adtdSet.adts");
  std::vector<std::string> flex;
  if (set.contains("flex")) flex = stringList(set.at("flex"), "adtdSet.flex");
  try {
    cfg.adtdSet = typesys::DefinitionSet::parse(joinLines(adts), joinLines(flex));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("adtdSet: ") + e.what());
  }
  for (const auto& [name, e] : field(j, "typeConsMapping", "configuration").items()) {
    TypeConsForm f{regionFromJson(field(e, "rigid", name)), std::nullopt};
    if (e.contains("poly")) {
      const json& p = e.at("poly");
      f.poly = PolySubspace{regionFromJson(field(p, "surface", name)),
                            transformFromJson(field(p, "argTransform", name), name)};
    }
    cfg.typeConsMapping.emplace(name, std::move(f));
  }
  if (j.contains("blockMapping")) {
    for (const auto& [name, list] : j.at("blockMapping").items()) {
      std::vector<Prism> prisms;
      for (const json& p : list) {
        try {
          prisms.emplace_back(regionFromJson(field(p, "crossSection", name)),
                              rationalFrom(field(p, "zLow", name), name),
                              rationalFrom(field(p, "zHigh", name), name));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(name + ": " + e.what());
        }
      }
      cfg.blockMapping.emplace(name, std::move(prisms));
    }
  }
  if (j.contains("argLocationMapping")) {
    for (const auto& [name, list] : j.at("argLocationMapping").items()) {
      std::vector<Placement> placements;
      for (const json& p : list) placements.push_back(placementFromJson(p, name));
      cfg.argLocationMapping.emplace(name, std::move(placements));
    }
  }
  if (j.contains("resultLocationMapping")) {
    for (const auto& [name, p] : j.at("resultLocationMapping").items()) {
      cfg.resultLocationMapping.emplace(name, placementFromJson(p, name));
    }
  }
  return cfg;
}

TranslationConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return configFromJson(j);
}

}  // namespace madawipol::forms
