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

#include "qbc/index_schema.h"

#include <algorithm>
#include <stdexcept>

#include "qbc/net_model.h"

namespace qbc {

IndexSchema::IndexSchema(std::vector<int> node_ids, std::vector<int> radices)
    : node_ids_(std::move(node_ids)), radices_(std::move(radices)) {
    if (node_ids_.size() != radices_.size()) {
        throw std::invalid_argument("schema needs one radix per node id");
    }
    if (!std::is_sorted(node_ids_.begin(), node_ids_.end()) ||
        std::adjacent_find(node_ids_.begin(), node_ids_.end()) != node_ids_.end()) {
        throw std::invalid_argument("schema node ids must be strictly ascending");
    }
    for (int r : radices_) {
        if (r < 1) {
            throw std::invalid_argument("schema radices must be positive");
        }
        dimension_ *= static_cast<std::size_t>(r);
    }
}

IndexSchema IndexSchema::over(const QBNet &net, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<int> radices;
    radices.reserve(ids.size());
    for (int id : ids) {
        radices.push_back(net.cardinality(id));
    }
    return IndexSchema(std::move(ids), std::move(radices));
}

std::optional<std::size_t> IndexSchema::position(int node_id) const {
    auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), node_id);
    if (it == node_ids_.end() || *it != node_id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - node_ids_.begin());
}

std::size_t IndexSchema::encode(std::span<const int> values) const {
    if (values.size() != radices_.size()) {
        throw std::out_of_range("assignment length does not match schema");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < values.size(); k++) {
        if (values[k] < 0 || values[k] >= radices_[k]) {
            throw std::out_of_range("state " + std::to_string(values[k]) + " out of range for node " +
                                    std::to_string(node_ids_[k]));
        }
        index = index * static_cast<std::size_t>(radices_[k]) + static_cast<std::size_t>(values[k]);
    }
    return index;
}

std::vector<int> IndexSchema::decode(std::size_t index) const {
    if (index >= dimension_) {
        throw std::out_of_range("flat index out of range");
    }
    std::vector<int> values(radices_.size());
    for (std::size_t k = radices_.size(); k-- > 0;) {
        auto r = static_cast<std::size_t>(radices_[k]);
        values[k] = static_cast<int>(index % r);
        index /= r;
    }
    return values;
}

Axis Axis::full(IndexSchema schema) {
    Axis axis{std::move(schema), {}};
    axis.labels.resize(axis.schema.dimension());
    for (std::size_t k = 0; k < axis.labels.size(); k++) {
        axis.labels[k] = k;
    }
    return axis;
}

bool Axis::is_full() const {
    if (labels.size() != schema.dimension()) {
        return false;
    }
    for (std::size_t k = 0; k < labels.size(); k++) {
        if (labels[k] != k) {
            return false;
        }
    }
    return true;
}

}  // namespace qbc
