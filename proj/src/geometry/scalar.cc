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

#include "madawipol/geometry/scalar.h"

#include <cctype>
#include <stdexcept>
#include <string>

namespace madawipol::geometry {
namespace {

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parseRational(std::string_view text) {
  std::string_view s = trim(text);
  const auto bad = [&]() {
    return std::invalid_argument("not a rational number: \"" + std::string(text) + "\"");
  };
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = s.substr(slash + 1);
    if (!allDigits(num) || !allDigits(den)) throw bad();
    const Rational d{std::string(den)};
    if (d == 0) throw bad();
    value = Rational{std::string(num)} / d;
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !allDigits(whole)) ||
        (!frac.empty() && !allDigits(frac))) {
      throw bad();
    }
    const std::string digits = std::string(whole) + std::string(frac);
    Rational scale{1};
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational{digits.empty() ? std::string("0") : digits} / scale;
  } else {
    if (!allDigits(s)) throw bad();
    value = Rational{std::string(s)};
  }
  return negative ? Rational(-value) : value;
}

std::string formatRational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace madawipol::geometry
