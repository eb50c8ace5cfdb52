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

#include "madawipol/assembly.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace madawipol::assembly {
namespace {

using typesys::Substitution;

std::string stripDigits(const std::string& name) {
  std::size_t end = name.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
  return name.substr(0, end);
}

}  // namespace

std::string formatJointRef(const JointRef& ref) {
  return std::to_string(ref.instance) + ":" +
         (ref.isResult() ? std::string("result") : "arg" + std::to_string(ref.slot));
}

JointRef parseJointRef(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed joint reference \"" + std::string(text) +
                                 "\"; expected e.g. \"5:result\" or \"5:arg0\"");
  };
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw bad();
  JointRef ref;
  const std::string_view id = text.substr(0, colon);
  auto [p, ec] = std::from_chars(id.data(), id.data() + id.size(), ref.instance);
  if (ec != std::errc() || p != id.data() + id.size()) throw bad();
  const std::string_view slot = text.substr(colon + 1);
  if (slot == "result") return ref;
  if (slot.size() <= 3 || slot.substr(0, 3) != "arg") throw bad();
  const std::string_view digits = slot.substr(3);
  auto [q, ec2] = std::from_chars(digits.data(), digits.data() + digits.size(), ref.slot);
  if (ec2 != std::errc() || q != digits.data() + digits.size() || ref.slot < 0) throw bad();
  return ref;
}

const char* assemblyErrorKindName(AssemblyErrorKind kind) {
  switch (kind) {
    case AssemblyErrorKind::kUnknownConstructor:
      return "UnknownConstructor";
    case AssemblyErrorKind::kNotAnInstance:
      return "NotAnInstance";
    case AssemblyErrorKind::kUnknownJoint:
      return "UnknownJoint";
    case AssemblyErrorKind::kOccupiedJoint:
      return "OccupiedJoint";
    case AssemblyErrorKind::kSameGender:
      return "SameGender";
    case AssemblyErrorKind::kCycleRejected:
      return "CycleRejected";
    case AssemblyErrorKind::kNotJoined:
      return "NotJoined";
    case AssemblyErrorKind::kMultipleRoots:
      return "MultipleRoots";
  }
  return "AssemblyError";
}

AssemblyError::AssemblyError(AssemblyErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(assemblyErrorKindName(kind)) + ": " + detail), kind_(kind) {}

Assembly::Assembly(std::shared_ptr<forms::FormCompiler> compiler) : compiler_(std::move(compiler)) {}

TypeExpr Assembly::freshen(const TypeExpr& t, std::map<std::string, std::string>& names) {
  if (t.isVar()) {
    auto it = names.find(t.name);
    if (it == names.end()) {
      it = names.emplace(t.name, stripDigits(t.name) + std::to_string(++freshCounter_)).first;
    }
    return TypeExpr::var(it->second);
  }
  TypeExpr out = TypeExpr::app(t.name);
  for (const TypeExpr& a : t.args) out.args.push_back(freshen(a, names));
  return out;
}

InstanceId Assembly::addMConstructor(const std::string& consName,
                                     const std::optional<TypeExpr>& annotation) {
  const forms::TranslationConfig& cfg = config();
  typesys::ConstructorSig sig;
  try {
    sig = annotation ? typesys::instantiateConstructor(cfg.adtdSet, consName, *annotation)
                     : typesys::constructorSigOf(cfg.adtdSet, consName);
  } catch (const typesys::TypeError& e) {
    throw AssemblyError(e.kind() == typesys::TypeErrorKind::kNotAnInstance
                            ? AssemblyErrorKind::kNotAnInstance
                            : AssemblyErrorKind::kUnknownConstructor,
                        e.what());
  }
  MConstructorInstance inst;
  inst.id = nextId_++;
  inst.consName = consName;
  inst.annotation = annotation;
  std::map<std::string, std::string> names;
  auto placementOf = [&](bool result, std::size_t i) {
    if (result) {
      auto it = cfg.resultLocationMapping.find(consName);
      return it == cfg.resultLocationMapping.end() ? forms::Placement{} : it->second;
    }
    auto it = cfg.argLocationMapping.find(consName);
    if (it == cfg.argLocationMapping.end() || i >= it->second.size()) return forms::Placement{};
    return it->second[i];
  };
  if (sig.resultType) {
    const TypeExpr g = freshen(*sig.resultType, names);
    inst.result = JointSlot{forms::Gender::kMale, g, g, placementOf(true, 0)};
  }
  for (std::size_t i = 0; i < sig.argTypes.size(); ++i) {
    const TypeExpr g = freshen(sig.argTypes[i], names);
    inst.args.push_back(JointSlot{forms::Gender::kFemale, g, g, placementOf(false, i)});
  }
  const InstanceId id = inst.id;
  instances_.emplace(id, std::move(inst));
  return id;
}

void Assembly::checkJoint(const JointRef& ref) const {
  auto it = instances_.find(ref.instance);
  const bool ok = it != instances_.end() &&
                  (ref.isResult() ? it->second.result.has_value()
                                  : ref.slot >= 0 && static_cast<std::size_t>(ref.slot) < it->second.args.size());
  if (!ok) throw AssemblyError(AssemblyErrorKind::kUnknownJoint, formatJointRef(ref) + " does not exist");
}

const JointSlot& Assembly::joint(const JointRef& ref) const {
  checkJoint(ref);
  const MConstructorInstance& inst = instances_.at(ref.instance);
  return ref.isResult() ? *inst.result : inst.args[static_cast<std::size_t>(ref.slot)];
}

JointSlot& Assembly::mutableJoint(const JointRef& ref) {
  checkJoint(ref);
  MConstructorInstance& inst = instances_.at(ref.instance);
  return ref.isResult() ? *inst.result : inst.args[static_cast<std::size_t>(ref.slot)];
}

std::optional<JointRef> Assembly::partnerOf(const JointRef& ref) const {
  checkJoint(ref);
  auto it = partner_.find(ref);
  if (it == partner_.end()) return std::nullopt;
  return it->second;
}

std::vector<Join> Assembly::joins() const {
  std::vector<Join> out;
  for (const auto& [a, b] : partner_) {
    if (a.isResult()) out.push_back({a, b});
  }
  return out;
}

std::vector<JointRef> Assembly::jointRefs() const {
  std::vector<JointRef> out;
  for (const auto& [id, inst] : instances_) {
    if (inst.result) out.push_back({id, JointRef::kResult});
    for (std::size_t i = 0; i < inst.args.size(); ++i) out.push_back({id, static_cast<int>(i)});
  }
  return out;
}

std::vector<InstanceId> Assembly::componentOf(InstanceId start) const {
  std::set<InstanceId> seen{start};
  std::vector<InstanceId> stack{start};
  while (!stack.empty()) {
    const InstanceId id = stack.back();
    stack.pop_back();
    for (auto it = partner_.lower_bound({id, JointRef::kResult});
         it != partner_.end() && it->first.instance == id; ++it) {
      if (seen.insert(it->second.instance).second) stack.push_back(it->second.instance);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<InstanceId>> Assembly::components() const {
  std::vector<std::vector<InstanceId>> out;
  std::set<InstanceId> placed;
  for (const auto& [id, inst] : instances_) {
    if (placed.count(id)) continue;
    std::vector<InstanceId> members = componentOf(id);
    placed.insert(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

TypeDelta Assembly::recompute(const std::vector<InstanceId>& members, const Substitution& s) {
  TypeDelta delta;
  for (InstanceId id : members) {
    MConstructorInstance& inst = instances_.at(id);
    auto update = [&](JointSlot& j, const JointRef& ref) {
      TypeExpr next = typesys::applySubst(s, j.generalType);
      if (!(next == j.currentType)) {
        delta.emplace(ref, next);
        j.currentType = std::move(next);
      }
    };
    if (inst.result) update(*inst.result, {id, JointRef::kResult});
    for (std::size_t i = 0; i < inst.args.size(); ++i) update(inst.args[i], {id, static_cast<int>(i)});
  }
  return delta;
}

JoinOutcome Assembly::tryJoin(const JointRef& maleIn, const JointRef& femaleIn) {
  checkJoint(maleIn);
  checkJoint(femaleIn);
  JointRef male = maleIn;
  JointRef female = femaleIn;
  if (male.isResult() == female.isResult()) {
    throw AssemblyError(AssemblyErrorKind::kSameGender,
                        formatJointRef(male) + " and " + formatJointRef(female) + " are both " +
                            (male.isResult() ? "male" : "female"));
  }
  if (!male.isResult()) std::swap(male, female);
  for (const JointRef& r : {male, female}) {
    if (partner_.count(r)) {
      throw AssemblyError(AssemblyErrorKind::kOccupiedJoint, formatJointRef(r) + " is already joined");
    }
  }
  const std::vector<InstanceId> maleSide = componentOf(male.instance);
  if (std::binary_search(maleSide.begin(), maleSide.end(), female.instance)) {
    throw AssemblyError(AssemblyErrorKind::kCycleRejected,
                        formatJointRef(male) + " and " + formatJointRef(female) +
                            " already belong to one assembly");
  }
  const TypeExpr& tm = joint(male).currentType;
  const TypeExpr& tf = joint(female).currentType;
  const bool fits = compiler_->fits(tm, tf);
  // Distinct components never share variable names, so the two types are
  // already renamed apart.
  const std::optional<Substitution> mgu = typesys::unify(tm, tf);
  if (fits != mgu.has_value()) {
    throw std::logic_error("geometry and unification disagree on " + textlang::printType(tm) +
                           " into " + textlang::printType(tf));
  }
  if (!fits) return {false, {}};

  // The component substitution is implicit in the current types; extend it
  // with the unifier over both components.
  std::vector<InstanceId> members = maleSide;
  const std::vector<InstanceId> femaleSide = componentOf(female.instance);
  members.insert(members.end(), femaleSide.begin(), femaleSide.end());
  partner_[male] = female;
  partner_[female] = male;
  TypeDelta delta;
  for (InstanceId id : members) {
    MConstructorInstance& inst = instances_.at(id);
    auto update = [&](JointSlot& j, const JointRef& ref) {
      TypeExpr next = typesys::applySubst(*mgu, j.currentType);
      if (!(next == j.currentType)) {
        delta.emplace(ref, next);
        j.currentType = std::move(next);
      }
    };
    if (inst.result) update(*inst.result, {id, JointRef::kResult});
    for (std::size_t i = 0; i < inst.args.size(); ++i) update(inst.args[i], {id, static_cast<int>(i)});
  }
  return {true, std::move(delta)};
}

TypeDelta Assembly::unjoin(const JointRef& male) {
  checkJoint(male);
  auto it = partner_.find(male);
  if (!male.isResult() || it == partner_.end()) {
    throw AssemblyError(AssemblyErrorKind::kNotJoined, formatJointRef(male) + " is not a joined male joint");
  }
  const JointRef female = it->second;
  partner_.erase(male);
  partner_.erase(female);
  TypeDelta delta;
  for (InstanceId root : {male.instance, female.instance}) {
    const std::vector<InstanceId> members = componentOf(root);
    Substitution s;
    for (InstanceId id : members) {
      const MConstructorInstance& inst = instances_.at(id);
      if (!inst.result) continue;
      auto p = partner_.find({id, JointRef::kResult});
      if (p == partner_.end()) continue;
      if (!typesys::unifyInto(s, inst.result->generalType, joint(p->second).generalType)) {
        throw std::logic_error("remaining joins of " + formatJointRef(p->first) + " no longer unify");
      }
    }
    TypeDelta part = recompute(members, s);
    delta.insert(part.begin(), part.end());
  }
  return delta;
}

std::optional<Assembly> translateAds(std::shared_ptr<forms::FormCompiler> compiler, const Ads& ads) {
  if (ads.isHole()) throw std::invalid_argument("a hole cannot be translated on its own");
  Assembly out(std::move(compiler));
  // Returns the instance built for ads, or nothing once some join failed.
  auto build = [&](auto&& self, const Ads& node) -> std::optional<InstanceId> {
    const InstanceId id = out.addMConstructor(node.consName, node.annotation);
    const MConstructorInstance& inst = out.instances().at(id);
    if (node.args.size() != inst.args.size()) return std::nullopt;
    for (std::size_t i = 0; i < node.args.size(); ++i) {
      if (node.args[i].isHole()) continue;
      const std::optional<InstanceId> child = self(self, node.args[i]);
      if (!child) return std::nullopt;
      if (!out.instances().at(*child).result) return std::nullopt;
      const JoinOutcome r = out.tryJoin({*child, JointRef::kResult}, {id, static_cast<int>(i)});
      if (!r.joined) return std::nullopt;
    }
    return id;
  };
  if (!build(build, ads)) return std::nullopt;
  return out;
}

std::vector<Ads> readBack(const Assembly& assembly) {
  std::vector<Ads> out;
  auto read = [&](auto&& self, InstanceId id) -> Ads {
    const MConstructorInstance& inst = assembly.instances().at(id);
    Ads node = Ads::apply(inst.consName, {}, inst.annotation);
    for (std::size_t i = 0; i < inst.args.size(); ++i) {
      const std::optional<JointRef> p = assembly.partnerOf({id, static_cast<int>(i)});
      node.args.push_back(p ? self(self, p->instance) : Ads::hole());
    }
    return node;
  };
  for (const std::vector<InstanceId>& members : assembly.components()) {
    std::vector<InstanceId> roots;
    for (InstanceId id : members) {
      const MConstructorInstance& inst = assembly.instances().at(id);
      if (!inst.result || !assembly.partnerOf({id, JointRef::kResult})) roots.push_back(id);
    }
    if (roots.size() != 1) {
      throw AssemblyError(AssemblyErrorKind::kMultipleRoots,
                          "component of instance " + std::to_string(members.front()) + " has " +
                              std::to_string(roots.size()) + " roots");
    }
    out.push_back(read(read, roots.front()));
  }
  return out;
}

std::map<InstanceId, Eigen::Isometry3d> blockTransforms(const Assembly& assembly) {
  std::map<InstanceId, Eigen::Isometry3d> out;
  double nextX = 0;
  const double depth = geometry::toDouble(assembly.config().vJntSz);
  auto place = [&](auto&& self, InstanceId id, const Eigen::Isometry3d& t) -> void {
    out[id] = t;
    const MConstructorInstance& inst = assembly.instances().at(id);
    for (std::size_t i = 0; i < inst.args.size(); ++i) {
      const std::optional<JointRef> p = assembly.partnerOf({id, static_cast<int>(i)});
      if (!p) continue;
      const JointSlot& childMale = assembly.joint(*p);
      // An inserted male sits one joint depth inside the female.
      const Eigen::Isometry3d child = t * inst.args[i].placement.transform() *
                                      Eigen::Translation3d(0, 0, -depth) *
                                      childMale.placement.transform().inverse();
      self(self, p->instance, child);
    }
  };
  for (const std::vector<InstanceId>& members : assembly.components()) {
    InstanceId root = members.front();
    for (InstanceId id : members) {
      const MConstructorInstance& inst = assembly.instances().at(id);
      if (!inst.result || !assembly.partnerOf({id, JointRef::kResult})) root = id;
    }
    Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
    t.translation() = Eigen::Vector3d(nextX, 0, 0);
    place(place, root, t);
    double maxX = nextX;
    for (InstanceId id : members) {
      const Eigen::Vector3d c = out[id].translation();
      maxX = std::max(maxX, c.x() + 2.0);
    }
    nextX = maxX + 1.0;
  }
  return out;
}

}  // namespace madawipol::assembly
