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

#ifndef MADAWIPOL_CONFIG_IO_H_
#define MADAWIPOL_CONFIG_IO_H_

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "madawipol/forms.h"

namespace madawipol::forms {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coordinates are written as exact "p/q" strings, placements as plain JSON
// numbers.
nlohmann::json regionToJson(const Region& r);
Region regionFromJson(const nlohmann::json& j);

nlohmann::json configToJson(const TranslationConfig& cfg);
// Throws ConfigError for schema problems; parse errors in the textual
// definitions surface as ConfigError too.
TranslationConfig configFromJson(const nlohmann::json& j);

TranslationConfig loadConfigFile(const std::string& path);

}  // namespace madawipol::forms

#endif  // MADAWIPOL_CONFIG_IO_H_
