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
#include <vector>

#include "qbc/era_engine.h"
#include "qbc/index_schema.h"
#include "qbc/linalg.h"

namespace qbc {

/// First and last era in which each node's value appears in some B_a.
/// External nodes are carried to the end: last = L + 1.
struct AppearanceBounds {
    int era_count = 0;
    std::vector<int> first;
    std::vector<int> last;

    int a_min(int id) const {
        return first.at(static_cast<std::size_t>(id - 1));
    }
    int a_max(int id) const {
        return last.at(static_cast<std::size_t>(id - 1));
    }
};

AppearanceBounds appearance_bounds(const QBNet &net, const EraDecomposition &eras);

/// Delta_a = { j | a_min(j) < a < a_max(j) } for a = 1..L; element a-1 is Delta_a.
std::vector<std::vector<int>> delta_sets(const AppearanceBounds &bounds);

/// Rows of M_a are labelled by V_a = T_a u Delta_a; columns by V_{a-1}, with V_0 = {}.
std::vector<int> carried_nodes(const EraDecomposition &eras, const std::vector<std::vector<int>> &deltas, int a);

/// A (possibly merged) era matrix covering eras first_era..last_era.
struct EraMatrix {
    int first_era = 0;
    int last_era = 0;
    Axis rows;
    Axis cols;
    CMatrix entries;
};

EraMatrix build_era_matrix(const QBNet &net, const EraDecomposition &eras, const AppearanceBounds &bounds, int a);

/// M_1..M_L.
std::vector<EraMatrix> build_era_matrices(const QBNet &net, const EraDecomposition &eras);

struct ChainVector {
    Axis rows;
    CVector values;
};

/// M_K ... M_1 applied to the one-dimensional input. Throws Error(kChain) if
/// adjacent axes do not chain or the first matrix has a non-trivial column axis.
ChainVector chain_product(std::span<const EraMatrix> matrices);

/// Product of a contiguous run of chained matrices (bottom first).
EraMatrix multiply_run(std::span<const EraMatrix> run);

}  // namespace qbc
