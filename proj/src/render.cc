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

#include "madawipol/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace madawipol::render {
namespace {

using geometry::toDouble;
using geometry::Vector2;
using Point = Vector2<Rational>;

constexpr double kSurfaceOffset = 0.004;
constexpr double kJoinedSurfaceOffset = 0.012;

// Stroke groups are written in this order so that coloured lines end up on
// top of the solids.
constexpr StrokeRole kRoleOrder[] = {StrokeRole::kBlock,          StrokeRole::kAlignmentFrame,
                                     StrokeRole::kRigid,          StrokeRole::kCap,
                                     StrokeRole::kSkirt,          StrokeRole::kPolySurfaceRed,
                                     StrokeRole::kPolySurfaceBlue};

StrokeRole strokeRoleOf(forms::SolidRole role) {
  switch (role) {
    case forms::SolidRole::kAlignmentFrame:
      return StrokeRole::kAlignmentFrame;
    case forms::SolidRole::kRigid:
      return StrokeRole::kRigid;
    case forms::SolidRole::kCap:
      return StrokeRole::kCap;
  }
  return StrokeRole::kRigid;
}

const char* roleStyle(StrokeRole role) {
  switch (role) {
    case StrokeRole::kBlock:
      return R"(fill="#E8E8E8" stroke="#555555" stroke-width="0.006")";
    case StrokeRole::kAlignmentFrame:
      return R"(fill="#9A9A9A" stroke="none")";
    case StrokeRole::kRigid:
      return R"(fill="#333333" stroke="none")";
    case StrokeRole::kCap:
      return R"(fill="#6A6A6A" stroke="none")";
    case StrokeRole::kSkirt:
      return R"(fill="none" stroke="#777777" stroke-width="0.003" stroke-dasharray="0.01 0.01")";
    case StrokeRole::kPolySurfaceRed:
      return R"(fill="none" stroke="#CC2222" stroke-width="0.004")";
    case StrokeRole::kPolySurfaceBlue:
      return R"(fill="none" stroke="#2244CC" stroke-width="0.004")";
  }
  return "";
}

bool isLine(StrokeRole role) {
  return role == StrokeRole::kSkirt || role == StrokeRole::kPolySurfaceRed ||
         role == StrokeRole::kPolySurfaceBlue;
}

std::string fmt(const char* format, double v) {
  if (std::abs(v) < 5e-7) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  std::string s = buf;
  // Values that round to zero must not print as "-0.0000".
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

// Maps a solid's own coordinates to the world and the world to the drawing.
struct Placer {
  Eigen::Isometry3d toWorld = Eigen::Isometry3d::Identity();
  CutPlane plane;

  // The solid-local axis (0 or 1) cut by the plane and the value it is cut
  // at.
  std::pair<int, double> localCut() const {
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    n[plane.axis] = 1;
    const Eigen::Vector3d m = toWorld.linear().transpose() * n;
    const double d = plane.offset - n.dot(toWorld.translation());
    for (int k = 0; k < 2; ++k) {
      if (std::abs(std::abs(m[k]) - 1) < 1e-9) {
        const double v = d / m[k];
        return {k, std::abs(v - std::round(v * 1e9) / 1e9) < 1e-12 ? std::round(v * 1e9) / 1e9 : v};
      }
    }
    throw RenderError(RenderErrorKind::kUnalignedPlane,
                      "the cutting plane is not perpendicular to a solid's cross-section axes");
  }

  Eigen::Vector2d draw(int k, double along, double z, double across) const {
    Eigen::Vector3d local;
    local[k] = across;
    local[1 - k] = along;
    local[2] = z;
    const Eigen::Vector3d w = toWorld * local;
    return {w[1 - plane.axis], w[2]};
  }
};

void addSolid(std::vector<Stroke>& out, StrokeRole role, const Region& section, double zLow, double zHigh,
              const Placer& placer) {
  const auto [k, across] = placer.localCut();
  for (const auto& [u0, u1] : sliceRegion(section, k, Rational(across))) {
    const double a = toDouble(u0);
    const double b = toDouble(u1);
    out.push_back({role,
                   {placer.draw(k, a, zLow, across), placer.draw(k, b, zLow, across),
                    placer.draw(k, b, zHigh, across), placer.draw(k, a, zHigh, across)}});
  }
}

void addJoint(std::vector<Stroke>& out, const forms::JointForm3D& joint, const Placer& placer,
              double surfaceOffset) {
  for (const forms::RolePrism& s : joint.solids) {
    addSolid(out, strokeRoleOf(s.role), s.prism.crossSection, toDouble(s.prism.zLow), toDouble(s.prism.zHigh),
             placer);
  }
  if (!joint.surface) return;
  const auto [k, across] = placer.localCut();
  const double z = toDouble(joint.surfaceZ);
  const double bottom = -toDouble(joint.vJntSz);
  for (const auto& [u0, u1] : sliceRegion(*joint.surface, k, Rational(across))) {
    const double a = toDouble(u0);
    const double b = toDouble(u1);
    if (joint.skirt) {
      for (double e : {a, b}) {
        out.push_back({StrokeRole::kSkirt, {placer.draw(k, e, z, across), placer.draw(k, e, bottom, across)}});
      }
    }
    out.push_back({StrokeRole::kPolySurfaceRed,
                   {placer.draw(k, a, z - surfaceOffset, across), placer.draw(k, b, z - surfaceOffset, across)}});
    out.push_back({StrokeRole::kPolySurfaceBlue,
                   {placer.draw(k, a, z + surfaceOffset, across), placer.draw(k, b, z + surfaceOffset, across)}});
  }
}

// Solids of the joint's current type with the membrane of its general type:
// a differentiated surface still exists, it only mimics the form it
// received.
forms::JointForm3D placedJoint(const assembly::Assembly& assembly, const assembly::JointSlot& slot) {
  const forms::TranslationConfig& cfg = assembly.config();
  const bool male = slot.gender == forms::Gender::kMale;
  const auto current = assembly.compiler().typeForm(slot.currentType);
  forms::JointForm3D j = male ? forms::maleJointForm3D(cfg, *current) : forms::femaleJointForm3D(cfg, *current);
  const auto general = assembly.compiler().typeForm(slot.generalType);
  if (general->poly) {
    j.surface = general->poly->surface;
    j.surfaceZ = male ? cfg.vJntSz / 2 : -cfg.vJntSz / 2;
    j.skirt = !male;
  }
  return j;
}

void requireCut(const CrossSection& cs) {
  if (cs.strokes.empty()) {
    throw RenderError(RenderErrorKind::kPlaneMisses,
                      std::string("the plane ") + (cs.plane.axis == 0 ? "x" : "y") + " = " +
                          fmt("%.4f", cs.plane.offset) + " cuts nothing");
  }
}

void checkAxis(const CutPlane& plane) {
  if (plane.axis != 0 && plane.axis != 1) throw std::invalid_argument("cutting plane axis must be 0 (x) or 1 (y)");
}

// Adds prism walls and caps to g. Walls are split at every point where the
// caps' triangulation touches an edge, so the result has no T-junctions.
class MeshBuilder {
 public:
  explicit MeshBuilder(MeshGroup& g) : g_(g) {}

  int vertex(const Point& p, const Rational& z) {
    auto key = std::make_tuple(p.x(), p.y(), z);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const int i = static_cast<int>(g_.vertices.size());
    g_.vertices.emplace_back(toDouble(p.x()), toDouble(p.y()), toDouble(z));
    index_.emplace(std::move(key), i);
    return i;
  }

  void sheet(const geometry::Triangulation<Rational>& tri, const Rational& z, bool up) {
    for (const auto& t : tri.triangles) {
      const int a = vertex(t.a, z), b = vertex(t.b, z), c = vertex(t.c, z);
      g_.triangles.push_back(up ? std::array<int, 3>{a, b, c} : std::array<int, 3>{a, c, b});
    }
  }

  // Outward facing for rings with the interior on the left.
  void walls(const Region& r, const std::vector<Point>& splitAt, const Rational& zLow, const Rational& zHigh) {
    for (const auto& ring : r.rings()) {
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % ring.size()];
        const Point d = q - p;
        const Rational len2 = d.dot(d);
        std::vector<std::pair<Rational, Point>> stops{{Rational(0), p}};
        for (const Point& s : splitAt) {
          const Point e = s - p;
          if (geometry::cross(d, e) != 0) continue;
          const Rational along = d.dot(e);
          if (along > 0 && along < len2) stops.emplace_back(along, s);
        }
        stops.emplace_back(len2, q);
        std::sort(stops.begin(), stops.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
          const Point& u = stops[k].second;
          const Point& w = stops[k + 1].second;
          if (u == w) continue;
          const int a = vertex(u, zLow), b = vertex(w, zLow), c = vertex(w, zHigh), e = vertex(u, zHigh);
          g_.triangles.push_back({a, b, c});
          g_.triangles.push_back({a, c, e});
        }
      }
    }
  }

 private:
  MeshGroup& g_;
  std::map<std::tuple<Rational, Rational, Rational>, int> index_;
};

}  // namespace

const char* renderErrorKindName(RenderErrorKind kind) {
  switch (kind) {
    case RenderErrorKind::kPlaneMisses:
      return "PlaneMisses";
    case RenderErrorKind::kUnalignedPlane:
      return "UnalignedPlane";
    case RenderErrorKind::kRegionOutsideSurface:
      return "RegionOutsideSurface";
  }
  return "RenderError";
}

RenderError::RenderError(RenderErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(renderErrorKindName(kind)) + ": " + detail), kind_(kind) {}

const char* strokeRoleName(StrokeRole role) {
  switch (role) {
    case StrokeRole::kBlock:
      return "block";
    case StrokeRole::kAlignmentFrame:
      return "alignmentFrame";
    case StrokeRole::kRigid:
      return "rigid";
    case StrokeRole::kCap:
      return "cap";
    case StrokeRole::kPolySurfaceRed:
      return "polySurfaceRed";
    case StrokeRole::kPolySurfaceBlue:
      return "polySurfaceBlue";
    case StrokeRole::kSkirt:
      return "skirt";
  }
  return "stroke";
}

std::vector<std::pair<Rational, Rational>> sliceRegion(const Region& s, int axis, const Rational& c) {
  const int along = axis == 1 ? 0 : 1;
  std::vector<Rational> xs;
  for (const auto& ring : s.rings()) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point& p = ring[i];
      const Point& q = ring[(i + 1) % ring.size()];
      if ((p[axis] > c) == (q[axis] > c)) continue;
      xs.push_back(p[along] + (c - p[axis]) * (q[along] - p[along]) / (q[axis] - p[axis]));
    }
  }
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    if (xs[i] == xs[i + 1]) continue;
    if (!out.empty() && out.back().second == xs[i]) {
      out.back().second = xs[i + 1];
    } else {
      out.emplace_back(xs[i], xs[i + 1]);
    }
  }
  return out;
}

CrossSection crossSection(const forms::JointForm3D& joint, const CutPlane& plane) {
  checkAxis(plane);
  CrossSection cs{plane, {}};
  addJoint(cs.strokes, joint, Placer{Eigen::Isometry3d::Identity(), plane}, kSurfaceOffset);
  requireCut(cs);
  return cs;
}

CrossSection crossSection(const assembly::Assembly& assembly, const CutPlane& plane) {
  checkAxis(plane);
  CrossSection cs{plane, {}};
  const forms::TranslationConfig& cfg = assembly.config();
  const auto transforms = assembly::blockTransforms(assembly);
  for (const auto& [id, inst] : assembly.instances()) {
    const Eigen::Isometry3d& t = transforms.at(id);
    auto body = cfg.blockMapping.find(inst.consName);
    if (body != cfg.blockMapping.end()) {
      for (const Prism& p : body->second) {
        addSolid(cs.strokes, StrokeRole::kBlock, p.crossSection, toDouble(p.zLow), toDouble(p.zHigh),
                 Placer{t, plane});
      }
    }
    if (inst.result) {
      const bool joined = assembly.partnerOf({id, assembly::JointRef::kResult}).has_value();
      addJoint(cs.strokes, placedJoint(assembly, *inst.result), Placer{t * inst.result->placement.transform(), plane},
               joined ? kJoinedSurfaceOffset : kSurfaceOffset);
    }
    for (const assembly::JointSlot& slot : inst.args) {
      addJoint(cs.strokes, placedJoint(assembly, slot), Placer{t * slot.placement.transform(), plane},
               kSurfaceOffset);
    }
  }
  requireCut(cs);
  return cs;
}

std::string toSvg(const CrossSection& section) {
  double minX = 0, maxX = 0, minY = 0, maxY = 0;
  bool first = true;
  for (const Stroke& s : section.strokes) {
    for (const Eigen::Vector2d& p : s.points) {
      const double x = p.x(), y = -p.y();
      if (first) {
        minX = maxX = x;
        minY = maxY = y;
        first = false;
      }
      minX = std::min(minX, x);
      maxX = std::max(maxX, x);
      minY = std::min(minY, y);
      maxY = std::max(maxY, y);
    }
  }
  constexpr double kMargin = 0.1;
  constexpr double kPixelsPerUnit = 200;
  minX -= kMargin;
  minY -= kMargin;
  const double w = maxX - minX + kMargin;
  const double h = maxY - minY + kMargin;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt("%.4f", minX) << ' '
     << fmt("%.4f", minY) << ' ' << fmt("%.4f", w) << ' ' << fmt("%.4f", h) << "\" width=\""
     << fmt("%.4f", w * kPixelsPerUnit) << "\" height=\"" << fmt("%.4f", h * kPixelsPerUnit) << "\">\n";
  for (StrokeRole role : kRoleOrder) {
    bool any = false;
    for (const Stroke& s : section.strokes) {
      if (s.role != role) continue;
      if (!any) {
        os << "  <g class=\"" << strokeRoleName(role) << "\" " << roleStyle(role) << ">\n";
        any = true;
      }
      os << "    <" << (isLine(role) ? "polyline" : "polygon") << " points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) os << ' ';
        os << fmt("%.4f", s.points[i].x()) << ',' << fmt("%.4f", -s.points[i].y());
      }
      os << "\"/>\n";
    }
    if (any) os << "  </g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string crossSectionSvg(const forms::JointForm3D& joint, const CutPlane& plane) {
  return toSvg(crossSection(joint, plane));
}

std::string crossSectionSvg(const assembly::Assembly& assembly, const CutPlane& plane) {
  return toSvg(crossSection(assembly, plane));
}

MeshGroup prismMesh(const Prism& prism, const std::string& name) {
  MeshGroup g{name, {}, {}};
  MeshBuilder b(g);
  const auto tri = geometry::triangulate(prism.crossSection);
  b.sheet(tri, prism.zLow, false);
  b.sheet(tri, prism.zHigh, true);
  b.walls(prism.crossSection, tri.boundaryPoints, prism.zLow, prism.zHigh);
  return g;
}

std::vector<MeshGroup> jointMesh(const forms::JointForm3D& joint) {
  std::vector<MeshGroup> out;
  for (std::size_t i = 0; i < joint.solids.size(); ++i) {
    const forms::RolePrism& s = joint.solids[i];
    out.push_back(prismMesh(s.prism, std::string(forms::solidRoleName(s.role)) + "_" + std::to_string(i)));
  }
  if (joint.surface && !joint.surface->empty()) {
    const auto tri = geometry::triangulate(*joint.surface);
    MeshGroup surface{"surface", {}, {}};
    MeshBuilder(surface).sheet(tri, joint.surfaceZ, true);
    out.push_back(std::move(surface));
    if (joint.skirt) {
      MeshGroup skirt{"skirt", {}, {}};
      MeshBuilder(skirt).walls(*joint.surface, tri.boundaryPoints, -joint.vJntSz, joint.surfaceZ);
      out.push_back(std::move(skirt));
    }
  }
  return out;
}

std::vector<MeshGroup> blockMesh(const std::vector<Prism>& body) {
  std::vector<MeshGroup> out;
  for (std::size_t i = 0; i < body.size(); ++i) out.push_back(prismMesh(body[i], "block_" + std::to_string(i)));
  return out;
}

std::string toObj(const std::vector<MeshGroup>& groups, const std::string& objectName) {
  std::ostringstream os;
  os << "# Wavefront OBJ written by madawipol\n";
  os << "o " << objectName << '\n';
  std::size_t base = 1;
  for (const MeshGroup& g : groups) {
    os << "g " << g.name << '\n';
    for (const Eigen::Vector3d& v : g.vertices) {
      os << "v " << fmt("%.6f", v.x()) << ' ' << fmt("%.6f", v.y()) << ' ' << fmt("%.6f", v.z()) << '\n';
    }
    for (const auto& t : g.triangles) {
      os << "f " << base + t[0] << ' ' << base + t[1] << ' ' << base + t[2] << '\n';
    }
    base += g.vertices.size();
  }
  return os.str();
}

std::optional<Rational> DeformationProfile::heightAt(const Point& p) const {
  if (!geometry::containsPoint(surface, p)) return std::nullopt;
  return geometry::containsPoint(pushed, p) ? pushedHeight() : untouchedHeight();
}

DeformationProfile deformationProfile(const Region& surface, const Region& pushed, const Rational& t,
                                      const Rational& depth) {
  if (t < 0 || t > 1) throw std::invalid_argument("insertion fraction must lie in [0, 1]");
  if (!geometry::regionContains(surface, pushed)) {
    throw RenderError(RenderErrorKind::kRegionOutsideSurface, "the pushed region leaves the surface");
  }
  return {t, depth, surface, pushed, geometry::subtract(surface, pushed)};
}

std::vector<MeshGroup> profileMesh(const DeformationProfile& profile) {
  std::vector<MeshGroup> out;
  const Rational low = profile.pushedHeight();
  const Rational high = profile.untouchedHeight();
  if (!profile.pushed.empty()) {
    const auto tri = geometry::triangulate(profile.pushed);
    MeshGroup pushed{"pushed", {}, {}};
    MeshBuilder(pushed).sheet(tri, low, true);
    out.push_back(std::move(pushed));
    if (low < high) {
      MeshGroup skirt{"skirt", {}, {}};
      MeshBuilder(skirt).walls(profile.pushed, tri.boundaryPoints, low, high);
      out.push_back(std::move(skirt));
    }
  }
  if (!profile.untouched.empty()) {
    MeshGroup untouched{"untouched", {}, {}};
    MeshBuilder(untouched).sheet(geometry::triangulate(profile.untouched), high, true);
    out.push_back(std::move(untouched));
  }
  return out;
}

}  // namespace madawipol::render
