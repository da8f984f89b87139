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

#include "envadapt/minilang/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace envadapt::minilang {

using nlohmann::json;

InputBinding ParseInputBinding(std::string_view json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kInputBinding, "input binding must be a JSON object");
  }
  InputBinding input;
  for (const auto& [name, value] : doc.items()) {
    if (value.is_number()) {
      input.values[name] = value.get<double>();
    } else if (value.is_array()) {
      std::vector<double> values;
      for (const json& x : value) {
        if (!x.is_number()) {
          throw Error(ErrorCode::kInputBinding, "non-numeric element in " + name);
        }
        values.push_back(x.get<double>());
      }
      input.values[name] = std::move(values);
    } else {
      throw Error(ErrorCode::kInputBinding, name + " must be a number or a list of numbers");
    }
  }
  return input;
}

std::string FormatInputBinding(const InputBinding& input) {
  json doc = json::object();
  for (const auto& [name, value] : input.values) {
    std::visit([&, &n = name](const auto& v) { doc[n] = v; }, value);
  }
  return doc.dump();
}

std::string FormatOutputValue(const OutputValue& v) {
  if (v.is_int) return std::to_string(static_cast<long long>(v.value));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v.value);
  return buf;
}

std::string FormatOutputTrace(const OutputTrace& trace) {
  std::string out;
  for (const OutputValue& v : trace) {
    out += FormatOutputValue(v);
    out += '\n';
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

SourceProgram LoadSource(const std::filesystem::path& path) {
  return {path.stem().string(), ReadFile(path)};
}

InputBinding LoadInputBinding(const std::filesystem::path& path) {
  return ParseInputBinding(ReadFile(path));
}

}  // namespace envadapt::minilang
