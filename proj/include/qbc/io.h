// Copyright 2026 The qbc Authors
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

#pragma once

#include <filesystem>
#include <string>

#include "qbc/net_model.h"
#include "qbc/unitary_synthesis.h"

namespace qbc {

/// Parses a NetFile document. Throws Error(kParse) on malformed JSON or
/// schema errors; the result is not validated.
QBNet parse_net(const std::string &text, bool strict = true);
QBNet read_net_file(const std::filesystem::path &path, bool strict = true);
std::string serialize_net(const QBNet &net);

UnitaryProgram parse_program(const std::string &text);
UnitaryProgram read_program_file(const std::filesystem::path &path);
std::string serialize_program(const UnitaryProgram &program);

void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace qbc
