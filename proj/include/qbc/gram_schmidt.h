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

#include "qbc/linalg.h"

namespace qbc {

struct GramSchmidtOptions {
    /// A residual whose norm is at most drop_tolerance * |input| becomes the zero vector.
    double drop_tolerance = 1e-10;
    /// Leading inputs that are orthonormal to within this tolerance are passed through untouched.
    double prefix_tolerance = 1e-12;
};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Output i is the normalized component of input i orthogonal to all earlier
/// nonzero outputs, or the zero vector when that component is negligible. The
/// longest already-orthonormal prefix of the inputs is copied bit-exactly. All
/// inputs must share one dimension.
std::vector<CVector> gram_schmidt(std::span<const CVector> vectors, const GramSchmidtOptions &options = {});

/// Length of the longest prefix of `vectors` that is orthonormal to within `tolerance`.
std::size_t orthonormal_prefix_length(std::span<const CVector> vectors, double tolerance);

}  // namespace qbc
