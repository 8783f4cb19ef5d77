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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qbc/chain_builder.h"
#include "qbc/era_engine.h"
#include "qbc/gram_schmidt.h"
#include "qbc/linalg.h"

namespace qbc {

/// Where the chain of era matrices must stay split. A breakpoint at position
/// p separates M_p from M_{p+1}; valid positions are 1..L-1.
struct BreakpointSpec {
    std::set<int> measured_nodes;
    std::set<int> positions;
};

/// A measured node keeps the breakpoint right after the last era whose row
/// axis still carries its value. Positions outside 1..L-1 are dropped.
std::set<int> kept_breakpoints(
    const EraDecomposition &eras, const std::vector<std::vector<int>> &deltas, const BreakpointSpec &spec);

/// Multiplies adjacent matrices that are not separated by a position in `breakpoints`.
std::vector<EraMatrix> merge_breakpoints(std::span<const EraMatrix> matrices, const std::set<int> &breakpoints);

struct IsometryReport {
    double residual = 0;
    bool fits = true;  // cols <= rows
    bool pass = false;
};

IsometryReport check_isometry(const CMatrix &m, double tolerance);

struct RepairAction {
    enum class Kind {
        kPrunedZeroRows,
        kReplacedFlaggedColumns,
        kRemovedBreakpoint,
    };
    Kind kind;
    int first_era = 0;
    int last_era = 0;
    /// Pruned rows of the predecessor (flat schema labels) or replaced column positions.
    std::vector<std::size_t> indices;
    /// For kRemovedBreakpoint.
    int breakpoint = 0;

    std::string str() const;
};

/// Repairs segments[index] in place if it is not an isometry, trying zero-row
/// pruning, then flagged-column replacement, then merging with a neighbour.
/// Throws Error(kRepair) once a lone segment still fails.
std::vector<RepairAction> repair(std::vector<EraMatrix> &segments, std::size_t index, double tolerance);

enum class DimMode {
    kQubit,
    kExact,
};

struct Dims {
    std::size_t max_dimension = 1;  // D
    std::size_t register_dimension = 2;  // N_S
    std::vector<std::size_t> padding;  // N_S - d per input dimension
};

/// D = max of `dims`; N_S is the next power of two >= max(D, 2), or D in exact mode.
Dims compute_dims(std::span<const std::size_t> dims, DimMode mode = DimMode::kQubit);

/// Zero-pads `m` to N_S rows and fills the remaining N_S - cols columns with
/// the first surviving Gram-Schmidt outputs of (columns of m, e_1..e_{N_S}).
CMatrix pad_and_complete(const CMatrix &m, std::size_t register_dimension, double tolerance);

enum class InitialMode {
    kV1,
    kE1,
};

struct Tolerances {
    double isometry = 1e-9;
    double gram_schmidt_drop = 1e-10;
};

struct CompileOptions {
    EraKind era_kind = EraKind::kRootNode;
    BreakpointSpec breakpoints;
    InitialMode mode = InitialMode::kV1;
    DimMode dim_mode = DimMode::kQubit;
    Tolerances tolerances;
};

struct ProgramSegment {
    int first_era = 0;
    int last_era = 0;
    Axis rows;
};

/// v = U_K ... U_2 v_1 (v1 mode) or U_K ... U_1 e_1 (e1 mode). unitaries()[i]
/// belongs to segments[i + first_unitary_segment()].
struct UnitaryProgram {
    std::size_t register_dimension = 1;
    std::optional<int> qubit_count;
    InitialMode mode = InitialMode::kV1;
    DimMode dim_mode = DimMode::kQubit;
    EraKind era_kind = EraKind::kRootNode;
    CVector initial;
    std::vector<CMatrix> unitaries;
    std::vector<ProgramSegment> segments;
    std::vector<int> breakpoints;
    /// Names of the external nodes and state labels of each retained final row.
    std::vector<std::string> external_names;
    std::vector<std::vector<std::string>> external_rows;

    std::size_t first_unitary_segment() const {
        return mode == InitialMode::kV1 ? 1 : 0;
    }
    const Axis &external_axis() const {
        return segments.back().rows;
    }
};

/// Everything the CLI reports about one compilation.
struct Compilation {
    UnitaryProgram program;
    EraDecomposition eras;
    std::vector<std::vector<int>> deltas;
    std::vector<std::size_t> era_dimensions;  // d_0..d_L before merging
    Dims dims;
    std::set<int> requested_breakpoints;
    std::vector<RepairAction> repairs;
};

Compilation compile(const QBNet &net, const CompileOptions &options = {});

/// State after each segment: element k is U_k ... e_1 or U_k ... v_1, length N_S.
std::vector<CVector> run_program_prefixes(const UnitaryProgram &program);
CVector run_program(const UnitaryProgram &program);

struct VerificationReport {
    std::vector<double> unitarity;
    std::vector<double> prefix;
    double oracle = 0;
    std::vector<std::string> problems;

    double max_residual() const;
    bool passed(double tolerance) const;
};

VerificationReport verify_program(const UnitaryProgram &program, const QBNet &net);

}  // namespace qbc
