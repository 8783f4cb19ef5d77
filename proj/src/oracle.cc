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

#include "qbc/oracle.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "qbc/errors.h"

namespace qbc::oracle {

std::size_t story_count(const QBNet &net) {
    std::size_t count = 1;
    for (const auto &node : net.nodes()) {
        auto c = static_cast<std::size_t>(node.states.cardinality());
        if (c != 0 && count > std::numeric_limits<std::size_t>::max() / c) {
            return std::numeric_limits<std::size_t>::max();
        }
        count *= c;
    }
    return count;
}

namespace {

void check_cap(const QBNet &net, std::size_t story_cap) {
    std::size_t count = story_count(net);
    if (count > story_cap) {
        throw Error(Stage::kOracle,
                    "net has " + std::to_string(count) + " stories, above the cap of " + std::to_string(story_cap));
    }
}

// Amplitude of one story straight from the node matrices.
Complex amplitude(const QBNet &net, const std::vector<int> &x) {
    Complex product{1, 0};
    for (const auto &node : net.nodes()) {
        Eigen::Index column = 0;
        for (int p : node.parents) {
            column = column * net.nodes()[static_cast<std::size_t>(p - 1)].states.cardinality() +
                     x[static_cast<std::size_t>(p - 1)];
        }
        product *= node.matrix(x[static_cast<std::size_t>(node.id - 1)], column);
    }
    return product;
}

// Advances `x` as an odometer over the positions in `free`, last position fastest.
bool advance(const QBNet &net, std::vector<int> &x, const std::vector<std::size_t> &free) {
    for (std::size_t k = free.size(); k-- > 0;) {
        std::size_t j = free[k];
        if (++x[j] < net.nodes()[j].states.cardinality()) {
            return true;
        }
        x[j] = 0;
    }
    return false;
}

std::vector<bool> external_mask(const QBNet &net) {
    std::vector<bool> has_child(net.size(), false);
    for (const auto &node : net.nodes()) {
        for (int p : node.parents) {
            has_child[static_cast<std::size_t>(p - 1)] = true;
        }
    }
    has_child.flip();
    return has_child;
}

}  // namespace

Complex feynman_integral(const QBNet &net, std::span<const int> external_state, std::size_t story_cap) {
    check_cap(net, story_cap);
    std::vector<bool> external = external_mask(net);
    std::vector<int> x(net.size(), 0);
    std::vector<std::size_t> internal;
    std::size_t e = 0;
    for (std::size_t j = 0; j < net.size(); j++) {
        if (external[j]) {
            if (e >= external_state.size()) {
                throw Error(Stage::kOracle, "external state is too short");
            }
            x[j] = external_state[e++];
            if (x[j] < 0 || x[j] >= net.nodes()[j].states.cardinality()) {
                throw Error(Stage::kOracle, "external state out of range");
            }
        } else {
            internal.push_back(j);
        }
    }
    if (e != external_state.size()) {
        throw Error(Stage::kOracle, "external state is too long");
    }
    Complex sum{0, 0};
    do {
        sum += amplitude(net, x);
    } while (advance(net, x, internal));
    return sum;
}

CVector feynman_vector(const QBNet &net, std::size_t story_cap) {
    check_cap(net, story_cap);
    std::vector<bool> external = external_mask(net);
    std::size_t dimension = 1;
    for (std::size_t j = 0; j < net.size(); j++) {
        if (external[j]) {
            dimension *= static_cast<std::size_t>(net.nodes()[j].states.cardinality());
        }
    }
    std::vector<std::size_t> all(net.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    CVector fi = CVector::Zero(static_cast<Eigen::Index>(dimension));
    std::vector<int> x(net.size(), 0);
    do {
        Eigen::Index index = 0;
        for (std::size_t j = 0; j < net.size(); j++) {
            if (external[j]) {
                index = index * net.nodes()[j].states.cardinality() + x[j];
            }
        }
        fi[index] += amplitude(net, x);
    } while (advance(net, x, all));
    return fi;
}

CMatrix random_isometry(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    if (cols > rows) {
        throw std::invalid_argument("random_isometry needs cols <= rows");
    }
    auto r = static_cast<Eigen::Index>(rows);
    auto c = static_cast<Eigen::Index>(cols);
    for (std::uint32_t stream = 0;; stream++) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss;
        CMatrix q(r, c);
        bool degenerate = false;
        for (Eigen::Index k = 0; k < c && !degenerate; k++) {
            CVector v(r);
            for (Eigen::Index i = 0; i < r; i++) {
                double re = gauss(rng);
                double im = gauss(rng);
                v[i] = Complex{re, im};
            }
            double scale = v.norm();
            // Classical Gram-Schmidt, applied twice.
            for (int pass = 0; pass < 2; pass++) {
                CVector projections = q.leftCols(k).adjoint() * v;
                v -= q.leftCols(k) * projections;
            }
            double norm = v.norm();
            if (norm < 1e-8 * scale) {
                degenerate = true;
            } else {
                q.col(k) = v / norm;
            }
        }
        if (!degenerate) {
            return q;
        }
    }
}

QBNet random_net(int node_count, int max_states, int max_parents, std::uint64_t seed) {
    if (node_count < 1 || max_states < 1) {
        throw std::invalid_argument("random_net needs node_count >= 1 and max_states >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> states(1, max_states);
    std::vector<Node> nodes;
    for (int id = 1; id <= node_count; id++) {
        Node node;
        node.id = id;
        node.name = "x" + std::to_string(id);
        int cardinality = states(rng);
        node.states = StateSpace::numbered(static_cast<std::size_t>(cardinality));

        std::vector<int> candidates(static_cast<std::size_t>(id - 1));
        std::iota(candidates.begin(), candidates.end(), 1);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        int limit = std::min(std::max(max_parents, 0), id - 1);
        int wanted = std::uniform_int_distribution<int>(0, limit)(rng);
        std::size_t columns = 1;
        for (int p : candidates) {
            if (static_cast<int>(node.parents.size()) >= wanted) {
                break;
            }
            auto pc = static_cast<std::size_t>(nodes[static_cast<std::size_t>(p - 1)].states.cardinality());
            if (columns * pc <= static_cast<std::size_t>(cardinality)) {
                node.parents.push_back(p);
                columns *= pc;
            }
        }
        std::sort(node.parents.begin(), node.parents.end());
        node.matrix = random_isometry(static_cast<std::size_t>(cardinality), columns, rng());
        nodes.push_back(std::move(node));
    }
    return QBNet(std::move(nodes));
}

}  // namespace qbc::oracle
