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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qbc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// max |M^dagger M - I| over all entries.
double isometry_residual(const CMatrix &m);

/// max(|U^dagger U - I|, |U U^dagger - I|) over all entries; infinity if U is not square.
double unitarity_residual(const CMatrix &u);

double max_abs_difference(const CVector &a, const CVector &b);

bool all_finite(const CMatrix &m);

/// Standard basis vector e_{index+1} of the given dimension.
CVector basis_vector(std::size_t dimension, std::size_t index);

}  // namespace qbc
