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
#include <cstdint>
#include <span>

#include "qbc/linalg.h"
#include "qbc/net_model.h"

namespace qbc::oracle {

inline constexpr std::size_t kDefaultStoryCap = std::size_t{1} << 20;

/// Sum of story amplitudes over all internal states, for one external state
/// given in ascending external-node order. Pure enumeration; throws
/// Error(kOracle) when the net has more than `story_cap` stories.
Complex feynman_integral(
    const QBNet &net, std::span<const int> external_state, std::size_t story_cap = kDefaultStoryCap);

/// FI for every external state, indexed by the mixed-radix code of the
/// external states (smallest id most significant).
CVector feynman_vector(const QBNet &net, std::size_t story_cap = kDefaultStoryCap);

/// Product of cardinalities, saturating at SIZE_MAX.
std::size_t story_count(const QBNet &net);

/// Orthonormal-column matrix from seeded complex Gaussian columns. Requires cols <= rows.
CMatrix random_isometry(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Random acyclic net: parents are drawn from lower ids and restricted so
/// that every node matrix can be an isometry.
QBNet random_net(int node_count, int max_states, int max_parents, std::uint64_t seed);

}  // namespace qbc::oracle
