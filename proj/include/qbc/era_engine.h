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

#include <span>
#include <string_view>
#include <vector>

#include "qbc/net_model.h"

namespace qbc {

enum class EraKind {
    kRootNode,
    kExternalNode,
};

std::string_view era_kind_name(EraKind kind);

/// Ordered partition T_1..T_L of the node ids. Era numbers are 1-based and
/// every arrow points from a lower-numbered era to a higher-numbered one.
class EraDecomposition {
   public:
    EraDecomposition(EraKind kind, std::vector<std::vector<int>> eras, const QBNet &net);

    EraKind kind() const {
        return kind_;
    }
    int count() const {
        return static_cast<int>(eras_.size());
    }
    /// T_a, ascending ids.
    const std::vector<int> &era(int a) const {
        return eras_.at(static_cast<std::size_t>(a - 1));
    }
    /// Gamma_a: union of the parent sets of the era's nodes, ascending.
    const std::vector<int> &inputs(int a) const {
        return gamma_.at(static_cast<std::size_t>(a - 1));
    }
    /// Era number containing node `id`.
    int era_of(int id) const {
        return era_of_.at(static_cast<std::size_t>(id - 1));
    }
    const std::vector<std::vector<int>> &eras() const {
        return eras_;
    }

   private:
    EraKind kind_;
    std::vector<std::vector<int>> eras_;
    std::vector<std::vector<int>> gamma_;
    std::vector<int> era_of_;
};

/// Repeatedly peels the current root nodes. Throws Error(kEras) on a cycle.
EraDecomposition root_node_eras(const QBNet &net);

/// Repeatedly peels the current external (childless) nodes, then numbers the
/// layers in reverse so that the last peeled layer is T_1.
EraDecomposition external_node_eras(const QBNet &net);

EraDecomposition compute_eras(const QBNet &net, EraKind kind);

/// B_a[(x)_{T_a} | (x)_{Gamma_a}]. `row_states` is aligned with era(a) and
/// `input_states` with inputs(a). Throws std::invalid_argument on a domain mismatch.
Complex era_amplitude(
    const QBNet &net,
    const EraDecomposition &eras,
    int a,
    std::span<const int> row_states,
    std::span<const int> input_states);

}  // namespace qbc
