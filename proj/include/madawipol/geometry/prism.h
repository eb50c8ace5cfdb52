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

#ifndef MADAWIPOL_GEOMETRY_PRISM_H_
#define MADAWIPOL_GEOMETRY_PRISM_H_

#include <stdexcept>
#include <utility>

#include "madawipol/geometry/region.h"

namespace madawipol::geometry {

// A vertical extrusion of a planar region between two heights.
template <typename Scalar>
struct Prism3D {
  Region2D<Scalar> crossSection;
  Scalar zLow;
  Scalar zHigh;

  Prism3D(Region2D<Scalar> section, Scalar low, Scalar high)
      : crossSection(std::move(section)), zLow(std::move(low)), zHigh(std::move(high)) {
    if (!(zLow < zHigh)) throw std::invalid_argument("prism needs zLow < zHigh");
  }
};

}  // namespace madawipol::geometry

#endif  // MADAWIPOL_GEOMETRY_PRISM_H_
