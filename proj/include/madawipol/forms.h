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

#ifndef MADAWIPOL_FORMS_H_
#define MADAWIPOL_FORMS_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Geometry>

#include "madawipol/geometry/prism.h"
#include "madawipol/geometry/region.h"
#include "madawipol/typesys.h"

namespace madawipol::forms {

using geometry::Rational;
using Region = geometry::Region2D<Rational>;
using Transform = geometry::LinearTransform2D<Rational>;
using Prism = geometry::Prism3D<Rational>;
using textlang::TypeExpr;

// T_P together with T_A.
struct PolySubspace {
  Region surface;
  Transform argTransform;
};

// T_f = (T_R, T_S) for a single type constructor.
struct TypeConsForm {
  Region rigid;
  std::optional<PolySubspace> poly;
};

// The symbolic nesting a form was built from, outermost constructor first.
struct FormTrace {
  std::vector<std::string> typeConstructors;
  std::optional<std::string> variable;  // innermost position left open
};

struct TypeForm {
  Region rigid;
  std::optional<PolySubspace> poly;
  std::optional<FormTrace> trace;
};

// Square frame centred at the origin that every joint carries.
struct AlignmentSquare {
  Rational outerSide{1};
  Rational frameThickness{1, 20};

  Region outer() const { return Region::square(outerSide / 2); }
  Region inner() const { return Region::square(outerSide / 2 - frameThickness); }
  Region frame() const { return geometry::subtract(outer(), inner()); }
};

// Where a joint sits on a block: joint coordinates are rotated by
// orientation and then shifted by position.
struct Placement {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  Eigen::Isometry3d transform() const {
    Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
    t.linear() = orientation.toRotationMatrix();
    t.translation() = position;
    return t;
  }
};

struct TranslationConfig {
  typesys::DefinitionSet adtdSet;
  bool flexible = false;
  AlignmentSquare alignment;
  Rational vJntSz{1, 4};
  // Inward offset that turns the polymorphic surface into an open set when a
  // female bottom region is formed. Measured in the frame of the variable the
  // surface stands for.
  Rational edgeEpsilon{1, 1000};
  std::map<std::string, TypeConsForm> typeConsMapping;
  std::map<std::string, std::vector<Prism>> blockMapping;
  std::map<std::string, std::vector<Placement>> argLocationMapping;
  std::map<std::string, Placement> resultLocationMapping;
};

enum class FormErrorKind { kUnmappedTypeConstructor, kArityMismatch, kUnrecognizedForm };

class FormError : public std::runtime_error {
 public:
  FormError(FormErrorKind kind, const std::string& detail);
  FormErrorKind kind() const { return kind_; }

 private:
  FormErrorKind kind_;
};

// The form standing for a bare type variable.
TypeForm variableForm(const TranslationConfig& cfg, const std::string& name = "a");

TypeForm typeFormProcedure(const TranslationConfig& cfg, const TypeExpr& t);

// rigid plus the polymorphic surface without its edge.
Region femaleBottomRegion(const TypeForm& tf, const Rational& edgeEpsilon);

bool maleFitsFemale(const TypeForm& male, const TypeForm& female, const Rational& edgeEpsilon);

// Throws UnrecognizedForm when tf carries no trace.
TypeExpr formToType(const TranslationConfig& cfg, const TypeForm& tf);

enum class Gender { kMale, kFemale };
const char* genderName(Gender g);

enum class SolidRole { kAlignmentFrame, kRigid, kCap };
const char* solidRoleName(SolidRole r);

struct RolePrism {
  SolidRole role;
  Prism prism;
};

// A joint in its own coordinates: the joint front lies in the plane z = 0,
// the male extends to +z and the female to -z. The polymorphic surface is a
// zero-thickness sheet whose upper (+z) face is painted blue and lower face
// red.
struct JointForm3D {
  Gender gender = Gender::kMale;
  std::vector<RolePrism> solids;
  std::optional<Region> surface;
  Rational surfaceZ{0};
  // Female only: the surface edge continued as a zero-thickness wall from
  // the surface down to the joint bottom, so the sheet is held in place.
  bool skirt = false;
  Rational vJntSz{1, 4};
};

JointForm3D maleJointForm3D(const TranslationConfig& cfg, const TypeForm& tf);
JointForm3D femaleJointForm3D(const TranslationConfig& cfg, const TypeForm& tf);

enum class ViolationKind { kMissingMapping, kMutualFit, kStructural, kAmbiguousConstructor };
const char* violationKindName(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> subjects;
  std::string message;
};

std::vector<Violation> validateConfig(const TranslationConfig& cfg);

// Memoises type-forms, bottom regions and fit verdicts for one immutable
// configuration. Safe to share between threads.
class FormCompiler {
 public:
  explicit FormCompiler(std::shared_ptr<const TranslationConfig> cfg);

  const TranslationConfig& config() const { return *cfg_; }
  std::shared_ptr<const TranslationConfig> sharedConfig() const { return cfg_; }

  std::shared_ptr<const TypeForm> typeForm(const TypeExpr& t);
  bool fits(const TypeExpr& male, const TypeExpr& female);

 private:
  std::shared_ptr<const Region> bottomRegion(const std::string& key, const TypeForm& tf);

  std::shared_ptr<const TranslationConfig> cfg_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const TypeForm>> forms_;
  std::unordered_map<std::string, std::shared_ptr<const Region>> bottoms_;
  std::unordered_map<std::string, bool> verdicts_;
};

}  // namespace madawipol::forms

#endif  // MADAWIPOL_FORMS_H_
