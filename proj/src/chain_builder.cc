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

#include "qbc/chain_builder.h"

#include <algorithm>
#include <iterator>

#include "qbc/errors.h"

namespace qbc {

AppearanceBounds appearance_bounds(const QBNet &net, const EraDecomposition &eras) {
    int era_count = eras.count();
    AppearanceBounds bounds{era_count, std::vector<int>(net.size(), 0), std::vector<int>(net.size(), 0)};
    auto touch = [&](int id, int a) {
        auto k = static_cast<std::size_t>(id - 1);
        if (bounds.first[k] == 0 || a < bounds.first[k]) {
            bounds.first[k] = a;
        }
        bounds.last[k] = std::max(bounds.last[k], a);
    };
    for (int a = 1; a <= era_count; a++) {
        for (int id : eras.era(a)) {
            touch(id, a);
        }
        for (int id : eras.inputs(a)) {
            touch(id, a);
        }
    }
    for (const auto &node : net.nodes()) {
        auto k = static_cast<std::size_t>(node.id - 1);
        if (bounds.first[k] != eras.era_of(node.id)) {
            throw Error(Stage::kChain,
                        "node " + node.name + " first appears in era " + std::to_string(bounds.first[k]) +
                            " but belongs to era " + std::to_string(eras.era_of(node.id)));
        }
        if (net.children(node.id).empty()) {
            bounds.last[k] = era_count + 1;
        }
    }
    return bounds;
}

std::vector<std::vector<int>> delta_sets(const AppearanceBounds &bounds) {
    std::vector<std::vector<int>> deltas(static_cast<std::size_t>(bounds.era_count));
    for (int a = 1; a <= bounds.era_count; a++) {
        for (std::size_t k = 0; k < bounds.first.size(); k++) {
            if (bounds.first[k] < a && a < bounds.last[k]) {
                deltas[static_cast<std::size_t>(a - 1)].push_back(static_cast<int>(k + 1));
            }
        }
    }
    return deltas;
}

std::vector<int> carried_nodes(const EraDecomposition &eras, const std::vector<std::vector<int>> &deltas, int a) {
    if (a == 0) {
        return {};
    }
    const auto &members = eras.era(a);
    const auto &delta = deltas.at(static_cast<std::size_t>(a - 1));
    std::vector<int> carried;
    std::set_union(members.begin(), members.end(), delta.begin(), delta.end(), std::back_inserter(carried));
    return carried;
}

EraMatrix build_era_matrix(const QBNet &net, const EraDecomposition &eras, const AppearanceBounds &bounds, int a) {
    auto deltas = delta_sets(bounds);
    const auto &members = eras.era(a);
    const auto &inputs = eras.inputs(a);
    const auto &delta = deltas[static_cast<std::size_t>(a - 1)];

    std::vector<int> previous = carried_nodes(eras, deltas, a - 1);
    std::vector<int> needed;
    std::set_union(inputs.begin(), inputs.end(), delta.begin(), delta.end(), std::back_inserter(needed));
    if (needed != previous) {
        throw Error(Stage::kChain, "era " + std::to_string(a) + ": Gamma_a u Delta_a differs from V_{a-1}");
    }

    IndexSchema row_schema = IndexSchema::over(net, carried_nodes(eras, deltas, a));
    IndexSchema col_schema = IndexSchema::over(net, previous);
    IndexSchema member_schema = IndexSchema::over(net, members);

    // Where each row component comes from: a member of T_a or a carried column value.
    struct Source {
        bool member;
        std::size_t index;
    };
    std::vector<Source> sources;
    for (int id : row_schema.node_ids()) {
        if (auto m = member_schema.position(id)) {
            sources.push_back({true, *m});
        } else {
            sources.push_back({false, *col_schema.position(id)});
        }
    }
    // Parent positions inside the column assignment, per member.
    std::vector<std::vector<std::size_t>> parent_positions;
    for (int id : members) {
        auto &positions = parent_positions.emplace_back();
        for (int p : net.node(id).parents) {
            positions.push_back(*col_schema.position(p));
        }
    }

    CMatrix entries = CMatrix::Zero(
        static_cast<Eigen::Index>(row_schema.dimension()), static_cast<Eigen::Index>(col_schema.dimension()));
    std::vector<int> row_values(row_schema.size());
    for (std::size_t c = 0; c < col_schema.dimension(); c++) {
        std::vector<int> col_values = col_schema.decode(c);
        for (std::size_t t = 0; t < member_schema.dimension(); t++) {
            std::vector<int> member_values = member_schema.decode(t);
            Complex amplitude{1, 0};
            for (std::size_t m = 0; m < members.size(); m++) {
                const Node &node = net.node(members[m]);
                Eigen::Index column = 0;
                for (std::size_t k = 0; k < node.parents.size(); k++) {
                    column = column * net.cardinality(node.parents[k]) + col_values[parent_positions[m][k]];
                }
                amplitude *= node.matrix(member_values[m], column);
            }
            for (std::size_t k = 0; k < sources.size(); k++) {
                row_values[k] = sources[k].member ? member_values[sources[k].index] : col_values[sources[k].index];
            }
            entries(static_cast<Eigen::Index>(row_schema.encode(row_values)), static_cast<Eigen::Index>(c)) =
                amplitude;
        }
    }
    return EraMatrix{a, a, Axis::full(std::move(row_schema)), Axis::full(std::move(col_schema)), std::move(entries)};
}

std::vector<EraMatrix> build_era_matrices(const QBNet &net, const EraDecomposition &eras) {
    AppearanceBounds bounds = appearance_bounds(net, eras);
    std::vector<EraMatrix> matrices;
    for (int a = 1; a <= eras.count(); a++) {
        matrices.push_back(build_era_matrix(net, eras, bounds, a));
    }
    return matrices;
}

EraMatrix multiply_run(std::span<const EraMatrix> run) {
    if (run.empty()) {
        throw Error(Stage::kChain, "cannot multiply an empty run of era matrices");
    }
    CMatrix product = run.front().entries;
    for (std::size_t k = 1; k < run.size(); k++) {
        if (!(run[k].cols == run[k - 1].rows)) {
            throw Error(Stage::kChain,
                        "columns of M_" + std::to_string(run[k].first_era) + " do not match rows of M_" +
                            std::to_string(run[k - 1].last_era));
        }
        product = run[k].entries * product;
    }
    return EraMatrix{run.front().first_era, run.back().last_era, run.back().rows, run.front().cols, std::move(product)};
}

ChainVector chain_product(std::span<const EraMatrix> matrices) {
    if (matrices.empty()) {
        throw Error(Stage::kChain, "empty chain");
    }
    const Axis &input = matrices.front().cols;
    if (!input.schema.empty() || input.size() != 1) {
        throw Error(Stage::kChain, "first era matrix must have a single column");
    }
    EraMatrix product = multiply_run(matrices);
    return ChainVector{std::move(product.rows), product.entries.col(0)};
}

}  // namespace qbc
