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

#ifndef MADAWIPOL_RENDER_H_
#define MADAWIPOL_RENDER_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "madawipol/assembly.h"
#include "madawipol/forms.h"

namespace madawipol::render {

using forms::Prism;
using forms::Region;
using geometry::Rational;

enum class RenderErrorKind { kPlaneMisses, kUnalignedPlane, kRegionOutsideSurface };

const char* renderErrorKindName(RenderErrorKind kind);

class RenderError : public std::runtime_error {
 public:
  RenderError(RenderErrorKind kind, const std::string& detail);
  RenderErrorKind kind() const { return kind_; }

 private:
  RenderErrorKind kind_;
};

// The plane {p : p[axis] = offset}, axis 0 (x) or 1 (y). Drawings show the
// remaining horizontal axis to the right and z upwards.
struct CutPlane {
  int axis = 1;
  double offset = 0;
};

enum class StrokeRole { kBlock, kAlignmentFrame, kRigid, kCap, kPolySurfaceRed, kPolySurfaceBlue, kSkirt };
const char* strokeRoleName(StrokeRole role);

// A closed polygon for solids, an open polyline for surface lines.
struct Stroke {
  StrokeRole role;
  std::vector<Eigen::Vector2d> points;
};

struct CrossSection {
  CutPlane plane;
  std::vector<Stroke> strokes;
};

// x-intervals of s along the line y = c (or y-intervals along x = c when
// axis is 0), sorted.
std::vector<std::pair<Rational, Rational>> sliceRegion(const Region& s, int axis, const Rational& c);

// Joint coordinates are used as world coordinates. Throws PlaneMisses.
CrossSection crossSection(const forms::JointForm3D& joint, const CutPlane& plane = {});
// Blocks placed by assembly::blockTransforms, every joint drawn with the
// solids of its current type and the surface of its general type. Throws PlaneMisses, or UnalignedPlane when a
// solid is rotated so that the plane does not cut it along one of its own
// axes.
CrossSection crossSection(const assembly::Assembly& assembly, const CutPlane& plane = {});

std::string toSvg(const CrossSection& section);

std::string crossSectionSvg(const forms::JointForm3D& joint, const CutPlane& plane = {});
std::string crossSectionSvg(const assembly::Assembly& assembly, const CutPlane& plane = {});

struct MeshGroup {
  std::string name;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based into vertices
};

// Closed triangulated boundary of a prism, outward facing.
MeshGroup prismMesh(const Prism& prism, const std::string& name);

// One group per solid, plus "surface" and "skirt" sheets when present.
std::vector<MeshGroup> jointMesh(const forms::JointForm3D& joint);
std::vector<MeshGroup> blockMesh(const std::vector<Prism>& body);

// Wavefront OBJ with one "g" line per group and shared vertex numbering.
std::string toObj(const std::vector<MeshGroup>& groups, const std::string& objectName);

// Membrane heights for insertion fraction t: the pushed part sits at
// -t*depth, the rest of the surface at +t*depth, joined by a vertical skirt
// along the boundary of the pushed part.
struct DeformationProfile {
  Rational t;
  Rational depth;
  Region surface;
  Region pushed;
  Region untouched;

  Rational pushedHeight() const { return -t * depth; }
  Rational untouchedHeight() const { return t * depth; }
  // Absent outside the surface. Points on the pushed boundary read as pushed.
  std::optional<Rational> heightAt(const geometry::Vector2<Rational>& p) const;
};

// Throws RegionOutsideSurface unless pushed lies within surface, and
// std::invalid_argument for t outside [0, 1].
DeformationProfile deformationProfile(const Region& surface, const Region& pushed, const Rational& t,
                                      const Rational& depth);

// "pushed" and "untouched" sheets plus the connecting "skirt" walls.
std::vector<MeshGroup> profileMesh(const DeformationProfile& profile);

}  // namespace madawipol::render

#endif  // MADAWIPOL_RENDER_H_
