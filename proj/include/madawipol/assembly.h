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

#ifndef MADAWIPOL_ASSEMBLY_H_
#define MADAWIPOL_ASSEMBLY_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "madawipol/forms.h"
#include "madawipol/typesys.h"

namespace madawipol::assembly {

using textlang::Ads;
using textlang::TypeExpr;
using InstanceId = int;

// A joint on an instance: the result (male) joint or argument slot i
// (female). Written "5:result" and "5:arg0".
struct JointRef {
  static constexpr int kResult = -1;

  InstanceId instance = 0;
  int slot = kResult;

  bool isResult() const { return slot == kResult; }
  friend auto operator<=>(const JointRef&, const JointRef&) = default;
};

std::string formatJointRef(const JointRef& ref);
// Throws std::invalid_argument on malformed text.
JointRef parseJointRef(std::string_view text);

struct JointSlot {
  forms::Gender gender;
  // The constructor's signature type with variables renamed fresh for the
  // instance.
  TypeExpr generalType;
  // generalType under the substitution of the instance's component.
  TypeExpr currentType;
  forms::Placement placement;
};

struct MConstructorInstance {
  InstanceId id = 0;
  std::string consName;
  std::optional<TypeExpr> annotation;
  std::optional<JointSlot> result;
  std::vector<JointSlot> args;
};

struct Join {
  JointRef male;
  JointRef female;
};

enum class AssemblyErrorKind {
  kUnknownConstructor,
  kNotAnInstance,
  kUnknownJoint,
  kOccupiedJoint,
  kSameGender,
  kCycleRejected,
  kNotJoined,
  kMultipleRoots,
};

const char* assemblyErrorKindName(AssemblyErrorKind kind);

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(AssemblyErrorKind kind, const std::string& detail);
  AssemblyErrorKind kind() const { return kind_; }

 private:
  AssemblyErrorKind kind_;
};

// Joint types that changed, keyed by joint.
using TypeDelta = std::map<JointRef, TypeExpr>;

struct JoinOutcome {
  bool joined = false;
  TypeDelta delta;
};

// The graph of constructor instances and their joins. Each connected
// component carries one substitution; every joint's current type is its
// general type under that substitution. Mutations are not synchronised:
// callers serialise them.
class Assembly {
 public:
  explicit Assembly(std::shared_ptr<forms::FormCompiler> compiler);

  // Throws UnknownConstructor, or NotAnInstance for an annotation that does
  // not match the constructor's result type.
  InstanceId addMConstructor(const std::string& consName,
                             const std::optional<TypeExpr>& annotation = std::nullopt);

  // The male's form must fit into the female's form. A refusal leaves the
  // assembly unchanged. Throws UnknownJoint, SameGender, OccupiedJoint or
  // CycleRejected.
  JoinOutcome tryJoin(const JointRef& male, const JointRef& female);

  // Removes the join whose male side is the given joint and recomputes both
  // remaining components. Throws UnknownJoint or NotJoined.
  TypeDelta unjoin(const JointRef& male);

  const JointSlot& joint(const JointRef& ref) const;
  const TypeExpr& jointType(const JointRef& ref) const { return joint(ref).currentType; }
  std::optional<JointRef> partnerOf(const JointRef& ref) const;

  const std::map<InstanceId, MConstructorInstance>& instances() const { return instances_; }
  // Sorted by male joint.
  std::vector<Join> joins() const;
  std::vector<JointRef> jointRefs() const;
  // Instances grouped by connected component, each group sorted, groups
  // ordered by their least instance.
  std::vector<std::vector<InstanceId>> components() const;

  forms::FormCompiler& compiler() const { return *compiler_; }
  const forms::TranslationConfig& config() const { return compiler_->config(); }

 private:
  JointSlot& mutableJoint(const JointRef& ref);
  void checkJoint(const JointRef& ref) const;
  std::vector<InstanceId> componentOf(InstanceId id) const;
  TypeDelta recompute(const std::vector<InstanceId>& members, const typesys::Substitution& s);
  TypeExpr freshen(const TypeExpr& t, std::map<std::string, std::string>& names);

  std::shared_ptr<forms::FormCompiler> compiler_;
  std::map<InstanceId, MConstructorInstance> instances_;
  std::map<JointRef, JointRef> partner_;  // both directions
  InstanceId nextId_ = 1;
  long freshCounter_ = 0;
};

// Unjoinable is reported as an empty optional. Throws UnknownConstructor;
// a bare hole is rejected with std::invalid_argument.
std::optional<Assembly> translateAds(std::shared_ptr<forms::FormCompiler> compiler, const Ads& ads);

// One structure per component, in component order. Unoccupied argument
// joints read as holes.
std::vector<Ads> readBack(const Assembly& assembly);

// Placement of every instance's block in world coordinates, derived from
// the joins. Component roots are laid out side by side along x.
std::map<InstanceId, Eigen::Isometry3d> blockTransforms(const Assembly& assembly);

}  // namespace madawipol::assembly

#endif  // MADAWIPOL_ASSEMBLY_H_
