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

#include "madawipol/geometry/raster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace madawipol::geometry {
namespace {

void rowCrossings(const Region2D<double>& s, double y, std::vector<double>& out) {
  out.clear();
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d& u = ring[i];
      const Eigen::Vector2d& v = ring[(i + 1) % n];
      if ((u.y() > y) == (v.y() > y)) continue;
      out.push_back(u.x() + (y - u.y()) * (v.x() - u.x()) / (v.y() - u.y()));
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

RasterReport rasterContainment(const Region2D<double>& a, const Region2D<double>& b,
                               int gridN, std::size_t maxWitnesses) {
  if (gridN < 64) throw std::invalid_argument("raster grid must be at least 64");
  RasterReport report;
  if (b.empty()) return report;
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  for (const auto* s : {&a, &b}) {
    for (const auto& ring : s->rings()) {
      for (const auto& p : ring) {
        x0 = std::min(x0, p.x());
        y0 = std::min(y0, p.y());
        x1 = std::max(x1, p.x());
        y1 = std::max(y1, p.y());
      }
    }
  }
  report.cellWidth = (x1 - x0) / gridN;
  report.cellHeight = (y1 - y0) / gridN;
  std::vector<double> ca, cb;
  for (int row = 0; row < gridN; ++row) {
    const double y = y0 + (row + 0.5) * report.cellHeight;
    rowCrossings(a, y, ca);
    rowCrossings(b, y, cb);
    std::size_t ia = 0, ib = 0;
    for (int col = 0; col < gridN; ++col) {
      const double x = x0 + (col + 0.5) * report.cellWidth;
      while (ia < ca.size() && ca[ia] <= x) ++ia;
      while (ib < cb.size() && cb[ib] <= x) ++ib;
      const bool inA = (ia & 1) != 0;
      const bool inB = (ib & 1) != 0;
      if (inB && !inA) {
        report.contained = false;
        ++report.missCount;
        if (report.witnesses.size() < maxWitnesses) report.witnesses.emplace_back(x, y);
      }
    }
  }
  return report;
}

double boundaryDistance(const Region2D<double>& s, const Eigen::Vector2d& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d u = ring[i];
      const Eigen::Vector2d d = ring[(i + 1) % n] - u;
      const double len2 = d.squaredNorm();
      const double t = len2 > 0 ? std::clamp((p - u).dot(d) / len2, 0.0, 1.0) : 0.0;
      best = std::min(best, (u + t * d - p).norm());
    }
  }
  return best;
}

}  // namespace madawipol::geometry
