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

#include "qbc/era_engine.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qbc/errors.h"

namespace qbc {

std::string_view era_kind_name(EraKind kind) {
    return kind == EraKind::kRootNode ? "root" : "external";
}

EraDecomposition::EraDecomposition(EraKind kind, std::vector<std::vector<int>> eras, const QBNet &net)
    : kind_(kind), eras_(std::move(eras)), era_of_(net.size(), 0) {
    for (std::size_t a = 0; a < eras_.size(); a++) {
        std::sort(eras_[a].begin(), eras_[a].end());
        std::set<int> inputs;
        for (int id : eras_[a]) {
            era_of_.at(static_cast<std::size_t>(id - 1)) = static_cast<int>(a + 1);
            const auto &parents = net.node(id).parents;
            inputs.insert(parents.begin(), parents.end());
        }
        gamma_.emplace_back(inputs.begin(), inputs.end());
    }
}

namespace {

// Peels layers of nodes whose count of remaining `links` is zero. For root
// eras the links are parents, for external eras they are children.
std::vector<std::vector<int>> peel(const QBNet &net, bool by_parents) {
    std::size_t n = net.size();
    std::vector<int> remaining(n, 0);
    for (const auto &node : net.nodes()) {
        remaining[static_cast<std::size_t>(node.id - 1)] =
            static_cast<int>(by_parents ? node.parents.size() : net.children(node.id).size());
    }
    std::vector<bool> done(n, false);
    std::vector<std::vector<int>> layers;
    std::size_t assigned = 0;
    while (assigned < n) {
        std::vector<int> layer;
        for (std::size_t k = 0; k < n; k++) {
            if (!done[k] && remaining[k] == 0) {
                layer.push_back(static_cast<int>(k + 1));
            }
        }
        if (layer.empty()) {
            throw Error(Stage::kEras, "cycle detected: " + std::to_string(n - assigned) + " nodes cannot be peeled");
        }
        for (int id : layer) {
            done[static_cast<std::size_t>(id - 1)] = true;
            const auto &links = by_parents ? net.children(id) : net.node(id).parents;
            for (int other : links) {
                remaining[static_cast<std::size_t>(other - 1)]--;
            }
        }
        assigned += layer.size();
        layers.push_back(std::move(layer));
    }
    return layers;
}

}  // namespace

EraDecomposition root_node_eras(const QBNet &net) {
    return EraDecomposition(EraKind::kRootNode, peel(net, true), net);
}

EraDecomposition external_node_eras(const QBNet &net) {
    auto layers = peel(net, false);
    std::reverse(layers.begin(), layers.end());
    return EraDecomposition(EraKind::kExternalNode, std::move(layers), net);
}

EraDecomposition compute_eras(const QBNet &net, EraKind kind) {
    return kind == EraKind::kRootNode ? root_node_eras(net) : external_node_eras(net);
}

Complex era_amplitude(
    const QBNet &net,
    const EraDecomposition &eras,
    int a,
    std::span<const int> row_states,
    std::span<const int> input_states) {
    if (a < 1 || a > eras.count()) {
        throw std::invalid_argument("era index out of range");
    }
    const auto &members = eras.era(a);
    const auto &inputs = eras.inputs(a);
    if (row_states.size() != members.size() || input_states.size() != inputs.size()) {
        throw std::invalid_argument("assignment does not cover T_a and Gamma_a");
    }
    auto input_value = [&](int id) {
        auto it = std::lower_bound(inputs.begin(), inputs.end(), id);
        return input_states[static_cast<std::size_t>(it - inputs.begin())];
    };
    for (std::size_t k = 0; k < inputs.size(); k++) {
        if (input_states[k] < 0 || input_states[k] >= net.cardinality(inputs[k])) {
            throw std::invalid_argument("input state out of range");
        }
    }
    Complex amplitude{1, 0};
    for (std::size_t k = 0; k < members.size(); k++) {
        const Node &node = net.node(members[k]);
        if (row_states[k] < 0 || row_states[k] >= node.states.cardinality()) {
            throw std::invalid_argument("row state out of range");
        }
        Eigen::Index column = 0;
        for (int p : node.parents) {
            column = column * net.cardinality(p) + input_value(p);
        }
        amplitude *= node.matrix(row_states[k], column);
    }
    return amplitude;
}

}  // namespace qbc
