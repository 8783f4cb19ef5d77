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

#include "qbc/errors.h"

namespace qbc {

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::kParse:
            return "parse";
        case Stage::kValidation:
            return "validation";
        case Stage::kEras:
            return "eras";
        case Stage::kChain:
            return "chain";
        case Stage::kRepair:
            return "repair";
        case Stage::kSynthesis:
            return "synthesis";
        case Stage::kOracle:
            return "oracle";
    }
    return "unknown";
}

Error::Error(Stage stage, const std::string &message)
    : std::runtime_error("[" + std::string(stage_name(stage)) + "] " + message), stage_(stage) {
}

}  // namespace qbc
