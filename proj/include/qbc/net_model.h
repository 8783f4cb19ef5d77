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
#include <span>
#include <string>
#include <vector>

#include "qbc/linalg.h"

namespace qbc {

/// Finite set of possible states of a node's random variable. Labels are
/// compiled to dense 0-based indices in list order.
class StateSpace {
   public:
    StateSpace() = default;
    explicit StateSpace(std::vector<std::string> labels);

    /// States labelled "0", "1", ..., "n-1".
    static StateSpace numbered(std::size_t cardinality);

    const std::vector<std::string> &labels() const {
        return labels_;
    }
    int cardinality() const {
        return static_cast<int>(labels_.size());
    }
    /// -1 if absent.
    int index_of(std::string_view label) const;

    bool operator==(const StateSpace &) const = default;

   private:
    std::vector<std::string> labels_;
};

/// A node of a QB net. `matrix` has one row per state and one column per
/// joint parent state; the column index is the mixed-radix code of the
/// parent states with the smallest parent id most significant.
struct Node {
    int id = 0;
    std::string name;
    std::vector<int> parents;
    StateSpace states;
    CMatrix matrix;

    bool operator==(const Node &other) const;
};

/// Labelled acyclic graph with one node matrix per node. Node ids are 1..N.
/// The constructor sorts nodes by id and parents ascending but does not
/// validate; call validate_net before handing the net to the compiler.
class QBNet {
   public:
    QBNet() = default;
    explicit QBNet(std::vector<Node> nodes);

    std::size_t size() const {
        return nodes_.size();
    }
    const std::vector<Node> &nodes() const {
        return nodes_;
    }
    /// Node with the given 1-based id. Requires a valid net.
    const Node &node(int id) const {
        return nodes_.at(static_cast<std::size_t>(id - 1));
    }
    int cardinality(int id) const {
        return node(id).states.cardinality();
    }
    /// Ids of nodes having `id` as a parent, ascending.
    const std::vector<int> &children(int id) const {
        return children_.at(static_cast<std::size_t>(id - 1));
    }
    /// -1 if absent.
    int id_of(std::string_view name) const;

    bool operator==(const QBNet &other) const {
        return nodes_ == other.nodes_;
    }

   private:
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> children_;
};

struct Violation {
    enum class Kind {
        kBadIds,
        kEmptyStates,
        kDuplicateState,
        kDuplicateName,
        kSelfParent,
        kDuplicateParent,
        kDanglingParent,
        kCycle,
        kShape,
        kNonFinite,
    };
    Kind kind;
    int node = 0;
    /// Witness for kCycle: ids along the arrows, first id repeated at the end.
    std::vector<int> cycle;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        return violations.empty();
    }
    bool has(Violation::Kind kind) const;
    std::string str() const;
};

ValidationReport validate_net(const QBNet &net);

struct NodeClasses {
    std::vector<int> internal;
    std::vector<int> external;
};

/// External nodes are those with no outgoing arrows; isolated nodes count as external.
NodeClasses classify_nodes(const QBNet &net);

/// Product of node amplitudes A_j[x_j | parents] for one full story.
/// `story[j-1]` is the state index of node j.
Complex story_amplitude(const QBNet &net, std::span<const int> story);

}  // namespace qbc
