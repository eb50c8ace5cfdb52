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

#include "madawipol/snapshot.h"

#include <vector>

namespace madawipol::snapshot {

using assembly::JointRef;
using nlohmann::json;

std::map<JointRef, std::string> displayTypes(const assembly::Assembly& a) {
  std::map<JointRef, std::string> out;
  for (const std::vector<assembly::InstanceId>& members : a.components()) {
    std::vector<JointRef> refs;
    textlang::TypeExpr all = textlang::TypeExpr::app("_");
    for (assembly::InstanceId id : members) {
      const assembly::MConstructorInstance& inst = a.instances().at(id);
      if (inst.result) refs.push_back({id, JointRef::kResult});
      for (std::size_t i = 0; i < inst.args.size(); ++i) refs.push_back({id, static_cast<int>(i)});
    }
    for (const JointRef& r : refs) all.args.push_back(a.jointType(r));
    all = typesys::normalizeVars(all);
    for (std::size_t i = 0; i < refs.size(); ++i) out.emplace(refs[i], textlang::printType(all.args[i]));
  }
  return out;
}

namespace {

json jointsJsonWith(const assembly::Assembly& a, assembly::InstanceId id,
                    const std::map<JointRef, std::string>& types) {
  const assembly::MConstructorInstance& inst = a.instances().at(id);
  json joints = json::array();
  auto add = [&](const JointRef& r, const assembly::JointSlot& slot) {
    json j = {{"ref", assembly::formatJointRef(r)},
              {"gender", forms::genderName(slot.gender)},
              {"type", types.at(r)}};
    const std::optional<JointRef> p = a.partnerOf(r);
    j["partner"] = p ? json(assembly::formatJointRef(*p)) : json(nullptr);
    joints.push_back(std::move(j));
  };
  if (inst.result) add({id, JointRef::kResult}, *inst.result);
  for (std::size_t i = 0; i < inst.args.size(); ++i) add({id, static_cast<int>(i)}, inst.args[i]);
  return joints;
}

}  // namespace

json jointsJson(const assembly::Assembly& a, assembly::InstanceId id) {
  return jointsJsonWith(a, id, displayTypes(a));
}

json snapshotJson(const assembly::Assembly& a) {
  const std::map<JointRef, std::string> types = displayTypes(a);
  json instances = json::array();
  for (const auto& [id, inst] : a.instances()) {
    json j = {{"id", id}, {"consName", inst.consName}, {"joints", jointsJsonWith(a, id, types)}};
    if (inst.annotation) j["annotation"] = textlang::printType(*inst.annotation);
    instances.push_back(std::move(j));
  }
  json joins = json::array();
  for (const assembly::Join& j : a.joins()) {
    joins.push_back({{"male", assembly::formatJointRef(j.male)}, {"female", assembly::formatJointRef(j.female)}});
  }
  return {{"instances", std::move(instances)}, {"joins", std::move(joins)}};
}

json deltaJson(const assembly::Assembly& a, const assembly::TypeDelta& delta) {
  const std::map<JointRef, std::string> types = displayTypes(a);
  json out = json::object();
  for (const auto& [ref, type] : delta) out[assembly::formatJointRef(ref)] = types.at(ref);
  return out;
}

}  // namespace madawipol::snapshot
