// Copyright 2026 The envadapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENVADAPT_SRC_JSON_UTIL_H_
#define ENVADAPT_SRC_JSON_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "envadapt/error.h"

namespace envadapt::internal {

using nlohmann::json;

// Parses a document, mapping syntax errors to SchemaError("<document>").
inline json ParseJson(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError(what, "not valid JSON");
  return doc;
}

inline const json& Field(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw SchemaError(key, "enclosing value is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(key, "missing");
  return *it;
}

inline double Number(const json& obj, const std::string& key,
                     std::optional<double> fallback = std::nullopt,
                     double min = -HUGE_VAL) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(key, "missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(key, "must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(key, "must be finite");
  if (d < min) throw SchemaError(key, "must be >= " + std::to_string(min));
  return d;
}

inline int64_t Integer(const json& obj, const std::string& key,
                       std::optional<int64_t> fallback = std::nullopt, int64_t min = INT64_MIN) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(key, "missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw SchemaError(key, "must be an integer");
  int64_t i = v.get<int64_t>();
  if (i < min) throw SchemaError(key, "must be >= " + std::to_string(min));
  return i;
}

inline std::string String(const json& obj, const std::string& key,
                          std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw SchemaError(key, "missing");
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw SchemaError(key, "must be a string");
  return v.get<std::string>();
}

inline bool Bool(const json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw SchemaError(key, "must be a boolean");
  return v.get<bool>();
}

}  // namespace envadapt::internal

#endif  // ENVADAPT_SRC_JSON_UTIL_H_
