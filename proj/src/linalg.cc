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

#include "qbc/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qbc {

namespace {

double identity_deviation(const CMatrix &gram) {
    double worst = 0;
    for (Eigen::Index c = 0; c < gram.cols(); c++) {
        for (Eigen::Index r = 0; r < gram.rows(); r++) {
            Complex expected = r == c ? Complex{1, 0} : Complex{0, 0};
            worst = std::max(worst, std::abs(gram(r, c) - expected));
        }
    }
    return worst;
}

}  // namespace

double isometry_residual(const CMatrix &m) {
    return identity_deviation(m.adjoint() * m);
}

double unitarity_residual(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(identity_deviation(u.adjoint() * u), identity_deviation(u * u.adjoint()));
}

double max_abs_difference(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0;
    for (Eigen::Index k = 0; k < a.size(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

bool all_finite(const CMatrix &m) {
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        for (Eigen::Index r = 0; r < m.rows(); r++) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
                return false;
            }
        }
    }
    return true;
}

CVector basis_vector(std::size_t dimension, std::size_t index) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(dimension));
    e[static_cast<Eigen::Index>(index)] = 1;
    return e;
}

}  // namespace qbc
