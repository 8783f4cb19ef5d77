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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbc {

/// Pipeline stage that raised an error. The CLI maps stages to exit codes.
enum class Stage {
    kParse,
    kValidation,
    kEras,
    kChain,
    kRepair,
    kSynthesis,
    kOracle,
};

std::string_view stage_name(Stage stage);

class Error : public std::runtime_error {
   public:
    Error(Stage stage, const std::string &message);

    Stage stage() const noexcept {
        return stage_;
    }

   private:
    Stage stage_;
};

}  // namespace qbc
