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

#include "qbc/net_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qbc {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
}

StateSpace StateSpace::numbered(std::size_t cardinality) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < cardinality; k++) {
        labels.push_back(std::to_string(k));
    }
    return StateSpace(std::move(labels));
}

int StateSpace::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

bool Node::operator==(const Node &other) const {
    return id == other.id && name == other.name && parents == other.parents && states == other.states &&
           matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() && matrix == other.matrix;
}

QBNet::QBNet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    std::stable_sort(nodes_.begin(), nodes_.end(), [](const Node &a, const Node &b) {
        return a.id < b.id;
    });
    children_.resize(nodes_.size());
    for (auto &n : nodes_) {
        std::sort(n.parents.begin(), n.parents.end());
    }
    for (const auto &n : nodes_) {
        for (int p : std::set<int>(n.parents.begin(), n.parents.end())) {
            if (p >= 1 && static_cast<std::size_t>(p) <= nodes_.size() && p != n.id) {
                children_[static_cast<std::size_t>(p - 1)].push_back(n.id);
            }
        }
    }
    for (auto &c : children_) {
        std::sort(c.begin(), c.end());
    }
}

int QBNet::id_of(std::string_view name) const {
    for (const auto &n : nodes_) {
        if (n.name == name) {
            return n.id;
        }
    }
    return -1;
}

bool ValidationReport::has(Violation::Kind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation &v) {
        return v.kind == kind;
    });
}

std::string ValidationReport::str() const {
    std::ostringstream out;
    for (const auto &v : violations) {
        out << v.message << "\n";
    }
    return out.str();
}

namespace {

void add(ValidationReport &report, Violation::Kind kind, int node, std::string message, std::vector<int> cycle = {}) {
    report.violations.push_back(Violation{kind, node, std::move(cycle), std::move(message)});
}

std::string node_label(const Node &n) {
    return "node " + std::to_string(n.id) + " (" + n.name + ")";
}

// Depth-first search along arrows; every back edge yields one witness cycle.
class CycleFinder {
   public:
    CycleFinder(const QBNet &net, const std::map<int, std::size_t> &index) : net_(net) {
        children_.resize(net.size());
        for (const auto &n : net.nodes()) {
            for (int p : n.parents) {
                auto it = index.find(p);
                if (it != index.end()) {
                    children_[it->second].push_back(index.at(n.id));
                }
            }
        }
        for (auto &c : children_) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
    }

    std::vector<std::vector<int>> run() {
        color_.assign(net_.size(), 0);
        for (std::size_t k = 0; k < net_.size(); k++) {
            if (color_[k] == 0) {
                visit(k);
            }
        }
        return cycles_;
    }

   private:
    void visit(std::size_t k) {
        color_[k] = 1;
        path_.push_back(k);
        for (std::size_t c : children_[k]) {
            if (color_[c] == 1) {
                std::vector<int> cycle;
                auto start = std::find(path_.begin(), path_.end(), c);
                for (auto it = start; it != path_.end(); ++it) {
                    cycle.push_back(net_.nodes()[*it].id);
                }
                cycle.push_back(net_.nodes()[c].id);
                cycles_.push_back(std::move(cycle));
            } else if (color_[c] == 0) {
                visit(c);
            }
        }
        path_.pop_back();
        color_[k] = 2;
    }

    const QBNet &net_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<int> color_;
    std::vector<std::size_t> path_;
    std::vector<std::vector<int>> cycles_;
};

}  // namespace

ValidationReport validate_net(const QBNet &net) {
    ValidationReport report;
    std::map<int, std::size_t> index;
    for (std::size_t k = 0; k < net.size(); k++) {
        const Node &n = net.nodes()[k];
        if (!index.emplace(n.id, k).second) {
            add(report, Violation::Kind::kBadIds, n.id, "duplicate node id " + std::to_string(n.id));
        }
    }
    for (std::size_t k = 0; k < net.size(); k++) {
        if (!index.contains(static_cast<int>(k + 1))) {
            add(report,
                Violation::Kind::kBadIds,
                static_cast<int>(k + 1),
                "node ids must be exactly 1.." + std::to_string(net.size()) + "; missing " + std::to_string(k + 1));
        }
    }

    std::map<std::string, int> names;
    for (const auto &n : net.nodes()) {
        auto [it, inserted] = names.emplace(n.name, n.id);
        if (!inserted) {
            add(report,
                Violation::Kind::kDuplicateName,
                n.id,
                node_label(n) + ": name already used by node " + std::to_string(it->second));
        }
        if (n.states.cardinality() == 0) {
            add(report, Violation::Kind::kEmptyStates, n.id, node_label(n) + ": empty state space");
        }
        std::set<std::string> labels(n.states.labels().begin(), n.states.labels().end());
        if (labels.size() != n.states.labels().size()) {
            add(report, Violation::Kind::kDuplicateState, n.id, node_label(n) + ": duplicate state labels");
        }

        bool parents_ok = true;
        for (std::size_t k = 0; k < n.parents.size(); k++) {
            int p = n.parents[k];
            if (p == n.id) {
                parents_ok = false;
                add(report, Violation::Kind::kSelfParent, n.id, node_label(n) + ": lists itself as a parent");
            } else if (!index.contains(p)) {
                parents_ok = false;
                add(report,
                    Violation::Kind::kDanglingParent,
                    n.id,
                    node_label(n) + ": parent " + std::to_string(p) + " does not exist");
            } else if (k > 0 && n.parents[k - 1] == p) {
                parents_ok = false;
                add(report,
                    Violation::Kind::kDuplicateParent,
                    n.id,
                    node_label(n) + ": parent " + std::to_string(p) + " listed twice");
            }
        }

        if (parents_ok) {
            std::size_t cols = 1;
            for (int p : n.parents) {
                cols *= static_cast<std::size_t>(net.nodes()[index.at(p)].states.cardinality());
            }
            auto rows = static_cast<std::size_t>(n.states.cardinality());
            if (static_cast<std::size_t>(n.matrix.rows()) != rows ||
                static_cast<std::size_t>(n.matrix.cols()) != cols) {
                add(report,
                    Violation::Kind::kShape,
                    n.id,
                    node_label(n) + ": node matrix is " + std::to_string(n.matrix.rows()) + "x" +
                        std::to_string(n.matrix.cols()) + ", expected " + std::to_string(rows) + "x" +
                        std::to_string(cols));
            }
        }
        if (!all_finite(n.matrix)) {
            add(report, Violation::Kind::kNonFinite, n.id, node_label(n) + ": node matrix has non-finite entries");
        }
    }

    for (auto &cycle : CycleFinder(net, index).run()) {
        std::string text = "cycle:";
        for (int id : cycle) {
            text += " " + std::to_string(id);
        }
        add(report, Violation::Kind::kCycle, cycle.front(), text, cycle);
    }
    return report;
}

NodeClasses classify_nodes(const QBNet &net) {
    NodeClasses classes;
    for (const auto &n : net.nodes()) {
        (net.children(n.id).empty() ? classes.external : classes.internal).push_back(n.id);
    }
    return classes;
}

Complex story_amplitude(const QBNet &net, std::span<const int> story) {
    if (story.size() != net.size()) {
        throw std::invalid_argument("story must assign one state per node");
    }
    Complex amplitude{1, 0};
    for (const auto &n : net.nodes()) {
        int x = story[static_cast<std::size_t>(n.id - 1)];
        if (x < 0 || x >= n.states.cardinality()) {
            throw std::out_of_range("story state out of range for " + n.name);
        }
        Eigen::Index column = 0;
        for (int p : n.parents) {
            column = column * net.cardinality(p) + story[static_cast<std::size_t>(p - 1)];
        }
        amplitude *= n.matrix(x, column);
    }
    return amplitude;
}

}  // namespace qbc
