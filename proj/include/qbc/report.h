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

#include <string>

#include "qbc/era_engine.h"
#include "qbc/unitary_synthesis.h"

namespace qbc {

/// "{x1,x4}" style node set using node names.
std::string format_node_set(const QBNet &net, const std::vector<int> &ids);

/// Era table: T_a, Gamma_a, Delta_a and d_a per era.
std::string format_era_table(const QBNet &net, const EraDecomposition &eras);

std::string format_compilation(const QBNet &net, const Compilation &compilation);

std::string format_verification(const VerificationReport &report, double tolerance);

/// Graphviz document with one cluster per era. External nodes get a double
/// border; arrows carry log2 of the source cardinality when integral.
std::string to_dot(const QBNet &net, const EraDecomposition &eras);

}  // namespace qbc
