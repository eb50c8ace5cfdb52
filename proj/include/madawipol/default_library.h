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

#ifndef MADAWIPOL_DEFAULT_LIBRARY_H_
#define MADAWIPOL_DEFAULT_LIBRARY_H_

#include <string_view>
#include <vector>

#include "madawipol/forms.h"

namespace madawipol::forms {

std::string_view defaultAdtText();
std::string_view defaultFlexText();

// Square ring (half-sides 9/20 and 2/5) with a rectangular tooth reaching in
// to 7/20 at each listed slot. Slots 0-3 sit at the middle of the left,
// right, bottom and top sides; slots 4-7 sit on the same sides shifted by
// +1/5, -1/5, +1/5 and -1/5 along the side.
Region pinRing(const std::vector<int>& slots);

// A pin ring, plus for polymorphic constructors the surface |x|,|y| <= 7/20
// and the argument transformation scale(7/10).
TypeConsForm pinRingForm(const std::vector<int>& slots, bool polymorphic);

// The pin-profile library: WeekendDay, Bool, Colour, List, Pair and
// SimpleType with the flexible declarations enabled.
TranslationConfig defaultConfig();

}  // namespace madawipol::forms

#endif  // MADAWIPOL_DEFAULT_LIBRARY_H_
