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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qbc {

class QBNet;

/// Mixed-radix codec over an ascending list of node ids. The smallest id is
/// the most significant digit; the empty schema has a single index 0.
class IndexSchema {
   public:
    IndexSchema() = default;
    IndexSchema(std::vector<int> node_ids, std::vector<int> radices);

    /// Schema over `ids` (any order, deduplicated) with radices from the net.
    static IndexSchema over(const QBNet &net, std::vector<int> ids);

    const std::vector<int> &node_ids() const {
        return node_ids_;
    }
    const std::vector<int> &radices() const {
        return radices_;
    }
    std::size_t size() const {
        return node_ids_.size();
    }
    bool empty() const {
        return node_ids_.empty();
    }
    std::size_t dimension() const {
        return dimension_;
    }
    std::optional<std::size_t> position(int node_id) const;

    /// `values` aligned with node_ids(). Throws std::out_of_range.
    std::size_t encode(std::span<const int> values) const;
    std::vector<int> decode(std::size_t index) const;

    bool operator==(const IndexSchema &other) const {
        return node_ids_ == other.node_ids_ && radices_ == other.radices_;
    }

   private:
    std::vector<int> node_ids_;
    std::vector<int> radices_;
    std::size_t dimension_ = 1;
};

/// A matrix axis: the retained subset of a schema's flat indices, in order.
/// Axes start out full and lose entries when repair prunes zero rows.
struct Axis {
    IndexSchema schema;
    std::vector<std::size_t> labels;

    static Axis full(IndexSchema schema);

    std::size_t size() const {
        return labels.size();
    }
    bool is_full() const;

    bool operator==(const Axis &) const = default;
};

}  // namespace qbc
