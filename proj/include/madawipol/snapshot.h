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

#ifndef MADAWIPOL_SNAPSHOT_H_
#define MADAWIPOL_SNAPSHOT_H_

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "madawipol/assembly.h"

namespace madawipol::snapshot {

// Current joint types as text. Variables are renamed a, b, ... per
// component, in joint order, so shared variables stay visibly shared.
std::map<assembly::JointRef, std::string> displayTypes(const assembly::Assembly& a);

nlohmann::json jointsJson(const assembly::Assembly& a, assembly::InstanceId id);

// {"instances": [...], "joins": [...]}, instances by id, joins by male
// joint. Object keys are sorted.
nlohmann::json snapshotJson(const assembly::Assembly& a);

// Joint reference to display type for the joints in delta.
nlohmann::json deltaJson(const assembly::Assembly& a, const assembly::TypeDelta& delta);

}  // namespace madawipol::snapshot

#endif  // MADAWIPOL_SNAPSHOT_H_
