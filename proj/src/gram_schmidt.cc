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

#include "qbc/gram_schmidt.h"

#include <cmath>
#include <stdexcept>

namespace qbc {

namespace {

void require_common_dimension(std::span<const CVector> vectors) {
    for (const auto &v : vectors) {
        if (v.size() != vectors.front().size()) {
            throw std::invalid_argument("gram_schmidt inputs must share one dimension");
        }
    }
}

}  // namespace

std::size_t orthonormal_prefix_length(std::span<const CVector> vectors, double tolerance) {
    require_common_dimension(vectors);
    for (std::size_t r = 0; r < vectors.size(); r++) {
        if (std::abs(vectors[r].squaredNorm() - 1.0) > tolerance) {
            return r;
        }
        for (std::size_t k = 0; k < r; k++) {
            if (std::abs(vectors[k].dot(vectors[r])) > tolerance) {
                return r;
            }
        }
    }
    return vectors.size();
}

std::vector<CVector> gram_schmidt(std::span<const CVector> vectors, const GramSchmidtOptions &options) {
    std::size_t prefix = orthonormal_prefix_length(vectors, options.prefix_tolerance);
    std::vector<CVector> out(vectors.begin(), vectors.begin() + static_cast<std::ptrdiff_t>(prefix));
    // Indices of the nonzero outputs, which form the current orthonormal basis.
    std::vector<std::size_t> basis;
    for (std::size_t k = 0; k < prefix; k++) {
        basis.push_back(k);
    }
    for (std::size_t i = prefix; i < vectors.size(); i++) {
        double input_norm = vectors[i].norm();
        CVector w = vectors[i];
        for (int pass = 0; pass < 2; pass++) {
            for (std::size_t k : basis) {
                w -= out[k] * out[k].dot(w);
            }
        }
        double residual = w.norm();
        if (input_norm == 0 || residual <= options.drop_tolerance * input_norm) {
            out.push_back(CVector::Zero(vectors[i].size()));
        } else {
            out.push_back(w / residual);
            basis.push_back(i);
        }
    }
    return out;
}

}  // namespace qbc
