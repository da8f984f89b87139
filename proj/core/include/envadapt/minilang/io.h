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

#ifndef ENVADAPT_MINILANG_IO_H_
#define ENVADAPT_MINILANG_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "envadapt/minilang/interpreter.h"
#include "envadapt/minilang/parser.h"

namespace envadapt::minilang {

// `{ "var": number | [numbers...] }`
InputBinding ParseInputBinding(std::string_view json_text);
std::string FormatInputBinding(const InputBinding& input);

// One value per line; ints in decimal, floats with 9 significant digits.
std::string FormatOutputTrace(const OutputTrace& trace);
std::string FormatOutputValue(const OutputValue& v);

// Reads a whole file, throwing Error(kIo) on failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Source program named after the file stem.
SourceProgram LoadSource(const std::filesystem::path& path);
InputBinding LoadInputBinding(const std::filesystem::path& path);

}  // namespace envadapt::minilang

#endif  // ENVADAPT_MINILANG_IO_H_
