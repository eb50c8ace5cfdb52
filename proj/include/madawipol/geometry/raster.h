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

#ifndef MADAWIPOL_GEOMETRY_RASTER_H_
#define MADAWIPOL_GEOMETRY_RASTER_H_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "madawipol/geometry/region.h"

namespace madawipol::geometry {

// Sampled containment: gridN x gridN cell centers over the joint bounding
// box of both regions. Independent of the exact overlay code; it only uses
// double arithmetic and scanline crossings.
struct RasterReport {
  bool contained = true;
  // Samples that lie in b but not in a, capped at the requested count.
  std::vector<Eigen::Vector2d> witnesses;
  std::size_t missCount = 0;
  double cellWidth = 0;
  double cellHeight = 0;
};

// Throws std::invalid_argument when gridN < 64.
RasterReport rasterContainment(const Region2D<double>& a, const Region2D<double>& b,
                               int gridN, std::size_t maxWitnesses = 64);

template <typename Scalar>
bool rasterRegionContains(const Region2D<Scalar>& a, const Region2D<Scalar>& b,
                          int gridN) {
  return rasterContainment(a.template cast<double>(), b.template cast<double>(), gridN)
      .contained;
}

// Euclidean distance from p to the nearest ring edge of s.
double boundaryDistance(const Region2D<double>& s, const Eigen::Vector2d& p);

}  // namespace madawipol::geometry

#endif  // MADAWIPOL_GEOMETRY_RASTER_H_
