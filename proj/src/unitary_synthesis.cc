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

#include "qbc/unitary_synthesis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "qbc/errors.h"
#include "qbc/oracle.h"

namespace qbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string era_range(int first, int last) {
    if (first == last) {
        return "M_" + std::to_string(first);
    }
    return "M_" + std::to_string(last) + "...M_" + std::to_string(first);
}

void remove_rows(EraMatrix &m, const std::vector<std::size_t> &positions) {
    std::vector<Eigen::Index> keep;
    std::vector<std::size_t> labels;
    for (std::size_t r = 0; r < m.rows.size(); r++) {
        if (!std::binary_search(positions.begin(), positions.end(), r)) {
            keep.push_back(static_cast<Eigen::Index>(r));
            labels.push_back(m.rows.labels[r]);
        }
    }
    CMatrix entries(static_cast<Eigen::Index>(keep.size()), m.entries.cols());
    for (std::size_t k = 0; k < keep.size(); k++) {
        entries.row(static_cast<Eigen::Index>(k)) = m.entries.row(keep[k]);
    }
    m.entries = std::move(entries);
    m.rows.labels = std::move(labels);
}

void remove_cols(EraMatrix &m, const std::vector<std::size_t> &positions) {
    std::vector<Eigen::Index> keep;
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < m.cols.size(); c++) {
        if (!std::binary_search(positions.begin(), positions.end(), c)) {
            keep.push_back(static_cast<Eigen::Index>(c));
            labels.push_back(m.cols.labels[c]);
        }
    }
    CMatrix entries(m.entries.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); k++) {
        entries.col(static_cast<Eigen::Index>(k)) = m.entries.col(keep[k]);
    }
    m.entries = std::move(entries);
    m.cols.labels = std::move(labels);
}

// Strategy (i): drop zero rows of the predecessor together with the matching columns.
std::optional<RepairAction> prune_zero_rows(std::vector<EraMatrix> &segments, std::size_t index, double tolerance) {
    if (index == 0) {
        return std::nullopt;
    }
    EraMatrix &prev = segments[index - 1];
    std::vector<std::size_t> zero_rows;
    for (Eigen::Index r = 0; r < prev.entries.rows(); r++) {
        if (prev.entries.row(r).norm() <= tolerance) {
            zero_rows.push_back(static_cast<std::size_t>(r));
        }
    }
    if (zero_rows.empty() || zero_rows.size() == prev.rows.size()) {
        return std::nullopt;
    }
    RepairAction action{RepairAction::Kind::kPrunedZeroRows, segments[index].first_era, segments[index].last_era, {}};
    for (std::size_t r : zero_rows) {
        action.indices.push_back(prev.rows.labels[r]);
    }
    remove_rows(prev, zero_rows);
    remove_cols(segments[index], zero_rows);
    return action;
}

// Strategy (ii): columns hit only by zero components of the prefix product are free.
std::optional<RepairAction> replace_flagged_columns(
    std::vector<EraMatrix> &segments, std::size_t index, double tolerance) {
    if (index == 0) {
        return std::nullopt;
    }
    CVector prefix = chain_product(std::span<const EraMatrix>(segments.data(), index)).values;
    EraMatrix &m = segments[index];
    std::vector<std::size_t> flagged;
    std::vector<std::size_t> kept;
    for (Eigen::Index k = 0; k < prefix.size(); k++) {
        (std::abs(prefix[k]) <= tolerance ? flagged : kept).push_back(static_cast<std::size_t>(k));
    }
    if (flagged.empty() || m.entries.cols() > m.entries.rows()) {
        return std::nullopt;
    }
    CMatrix unflagged(m.entries.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); k++) {
        unflagged.col(static_cast<Eigen::Index>(k)) = m.entries.col(static_cast<Eigen::Index>(kept[k]));
    }
    if (isometry_residual(unflagged) > tolerance) {
        return std::nullopt;
    }
    std::vector<CVector> inputs;
    for (Eigen::Index k = 0; k < unflagged.cols(); k++) {
        inputs.push_back(unflagged.col(k));
    }
    auto rows = static_cast<std::size_t>(m.entries.rows());
    for (std::size_t j = 0; j < rows; j++) {
        inputs.push_back(basis_vector(rows, j));
    }
    auto outputs = gram_schmidt(inputs, GramSchmidtOptions{1e-10, tolerance});
    std::vector<CVector> fresh;
    for (std::size_t k = kept.size(); k < outputs.size() && fresh.size() < flagged.size(); k++) {
        if (outputs[k].squaredNorm() > 0) {
            fresh.push_back(outputs[k]);
        }
    }
    if (fresh.size() < flagged.size()) {
        return std::nullopt;
    }
    for (std::size_t k = 0; k < flagged.size(); k++) {
        m.entries.col(static_cast<Eigen::Index>(flagged[k])) = fresh[k];
    }
    return RepairAction{RepairAction::Kind::kReplacedFlaggedColumns, m.first_era, m.last_era, flagged};
}

}  // namespace

std::set<int> kept_breakpoints(
    const EraDecomposition &eras, const std::vector<std::vector<int>> &deltas, const BreakpointSpec &spec) {
    int era_count = eras.count();
    std::set<int> kept;
    for (int id : spec.measured_nodes) {
        int last = 0;
        for (int a = 1; a <= era_count; a++) {
            auto carried = carried_nodes(eras, deltas, a);
            if (std::binary_search(carried.begin(), carried.end(), id)) {
                last = a;
            }
        }
        if (last >= 1 && last < era_count) {
            kept.insert(last);
        }
    }
    for (int p : spec.positions) {
        if (p >= 1 && p < era_count) {
            kept.insert(p);
        }
    }
    return kept;
}

std::vector<EraMatrix> merge_breakpoints(std::span<const EraMatrix> matrices, const std::set<int> &breakpoints) {
    std::vector<EraMatrix> merged;
    std::size_t start = 0;
    for (std::size_t k = 0; k < matrices.size(); k++) {
        if (k + 1 == matrices.size() || breakpoints.contains(matrices[k].last_era)) {
            merged.push_back(multiply_run(matrices.subspan(start, k + 1 - start)));
            start = k + 1;
        }
    }
    return merged;
}

IsometryReport check_isometry(const CMatrix &m, double tolerance) {
    IsometryReport report;
    report.residual = isometry_residual(m);
    report.fits = m.cols() <= m.rows();
    report.pass = report.fits && report.residual <= tolerance;
    return report;
}

std::string RepairAction::str() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::kPrunedZeroRows:
            out << "pruned " << indices.size() << " zero row(s) of the predecessor of " << era_range(first_era, last_era)
                << " and the matching columns";
            break;
        case Kind::kReplacedFlaggedColumns:
            out << "replaced " << indices.size() << " flagged column(s) of " << era_range(first_era, last_era)
                << " by Gram-Schmidt completion";
            break;
        case Kind::kRemovedBreakpoint:
            out << "removed breakpoint between M_" << breakpoint + 1 << " and M_" << breakpoint << "; merged into "
                << era_range(first_era, last_era);
            break;
    }
    return out.str();
}

std::vector<RepairAction> repair(std::vector<EraMatrix> &segments, std::size_t index, double tolerance) {
    std::vector<RepairAction> actions;
    while (true) {
        if (check_isometry(segments[index].entries, tolerance).pass) {
            return actions;
        }
        if (auto action = prune_zero_rows(segments, index, tolerance)) {
            actions.push_back(*action);
            if (check_isometry(segments[index].entries, tolerance).pass) {
                return actions;
            }
        }
        if (auto action = replace_flagged_columns(segments, index, tolerance)) {
            actions.push_back(*action);
            if (check_isometry(segments[index].entries, tolerance).pass) {
                return actions;
            }
        }
        if (segments.size() == 1) {
            const EraMatrix &m = segments[index];
            IsometryReport report = check_isometry(m.entries, tolerance);
            std::ostringstream message;
            message << era_range(m.first_era, m.last_era) << " (era " << m.first_era << ") is "
                    << (report.fits ? "not an isometry" : "wider than tall") << " (residual " << report.residual
                    << ") and no breakpoint is left to remove";
            throw Error(Stage::kRepair, message.str());
        }
        std::size_t lower = index + 1 < segments.size() ? index : index - 1;
        int removed = segments[lower].last_era;
        EraMatrix merged = multiply_run(std::span<const EraMatrix>(segments.data() + lower, 2));
        segments[lower] = std::move(merged);
        segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(lower) + 1);
        index = lower;
        RepairAction action{
            RepairAction::Kind::kRemovedBreakpoint, segments[index].first_era, segments[index].last_era, {}};
        action.breakpoint = removed;
        actions.push_back(action);
    }
}

Dims compute_dims(std::span<const std::size_t> dims, DimMode mode) {
    Dims out;
    for (std::size_t d : dims) {
        out.max_dimension = std::max(out.max_dimension, d);
    }
    if (mode == DimMode::kExact) {
        out.register_dimension = out.max_dimension;
    } else {
        out.register_dimension = 2;
        while (out.register_dimension < out.max_dimension) {
            out.register_dimension *= 2;
        }
    }
    for (std::size_t d : dims) {
        out.padding.push_back(out.register_dimension - d);
    }
    return out;
}

CMatrix pad_and_complete(const CMatrix &m, std::size_t register_dimension, double tolerance) {
    auto n = static_cast<Eigen::Index>(register_dimension);
    if (m.rows() > n || m.cols() > n) {
        throw Error(Stage::kSynthesis, "era matrix does not fit the register dimension");
    }
    std::vector<CVector> inputs;
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        CVector column = CVector::Zero(n);
        column.head(m.rows()) = m.col(c);
        inputs.push_back(std::move(column));
    }
    for (std::size_t j = 0; j < register_dimension; j++) {
        inputs.push_back(basis_vector(register_dimension, j));
    }
    auto given = static_cast<std::size_t>(m.cols());
    if (orthonormal_prefix_length(inputs, tolerance) < given) {
        throw Error(Stage::kSynthesis, "cannot complete a matrix whose columns are not orthonormal");
    }
    auto outputs = gram_schmidt(inputs, GramSchmidtOptions{1e-10, tolerance});

    CMatrix u(n, n);
    Eigen::Index filled = 0;
    for (std::size_t k = 0; k < outputs.size() && filled < n; k++) {
        if (k < given || outputs[k].squaredNorm() > 0) {
            u.col(filled++) = outputs[k];
        }
    }
    if (filled < n) {
        throw Error(Stage::kSynthesis,
                    "Gram-Schmidt produced only " + std::to_string(filled) + " of " + std::to_string(n) + " columns");
    }
    return u;
}

Compilation compile(const QBNet &net, const CompileOptions &options) {
    ValidationReport validation = validate_net(net);
    if (!validation.ok()) {
        throw Error(Stage::kValidation, validation.str());
    }
    for (int id : options.breakpoints.measured_nodes) {
        if (id < 1 || static_cast<std::size_t>(id) > net.size()) {
            throw Error(Stage::kValidation, "measured node " + std::to_string(id) + " does not exist");
        }
    }
    EraDecomposition eras = compute_eras(net, options.era_kind);
    AppearanceBounds bounds = appearance_bounds(net, eras);
    auto deltas = delta_sets(bounds);
    std::vector<EraMatrix> matrices;
    for (int a = 1; a <= eras.count(); a++) {
        matrices.push_back(build_era_matrix(net, eras, bounds, a));
    }
    std::vector<std::size_t> era_dimensions{1};
    for (const auto &m : matrices) {
        era_dimensions.push_back(m.rows.size());
    }

    std::set<int> requested = kept_breakpoints(eras, deltas, options.breakpoints);
    std::vector<EraMatrix> segments = merge_breakpoints(matrices, requested);
    std::vector<RepairAction> repairs;
    for (std::size_t k = 0; k < segments.size(); k++) {
        auto actions = repair(segments, k, options.tolerances.isometry);
        repairs.insert(repairs.end(), actions.begin(), actions.end());
    }

    std::vector<std::size_t> dims{1};
    for (const auto &s : segments) {
        dims.push_back(s.rows.size());
    }
    Dims register_dims = compute_dims(dims, options.dim_mode);
    std::size_t n = register_dims.register_dimension;

    UnitaryProgram program;
    program.register_dimension = n;
    if ((n & (n - 1)) == 0 && n >= 2) {
        program.qubit_count = std::countr_zero(n);
    }
    program.mode = options.mode;
    program.dim_mode = options.dim_mode;
    program.era_kind = options.era_kind;
    for (std::size_t k = 0; k < segments.size(); k++) {
        const EraMatrix &s = segments[k];
        program.segments.push_back(ProgramSegment{s.first_era, s.last_era, s.rows});
        if (k + 1 < segments.size()) {
            program.breakpoints.push_back(s.last_era);
        }
    }
    if (options.mode == InitialMode::kV1) {
        program.initial = CVector::Zero(static_cast<Eigen::Index>(n));
        program.initial.head(segments.front().entries.rows()) = segments.front().entries.col(0);
    } else {
        program.initial = basis_vector(n, 0);
    }
    for (std::size_t k = program.first_unitary_segment(); k < segments.size(); k++) {
        try {
            program.unitaries.push_back(pad_and_complete(segments[k].entries, n, options.tolerances.isometry));
        } catch (const Error &e) {
            throw Error(Stage::kSynthesis,
                        era_range(segments[k].first_era, segments[k].last_era) + ": " + e.what());
        }
    }
    const Axis &external = program.external_axis();
    for (int id : external.schema.node_ids()) {
        program.external_names.push_back(net.node(id).name);
    }
    for (std::size_t label : external.labels) {
        auto values = external.schema.decode(label);
        std::vector<std::string> row;
        for (std::size_t k = 0; k < values.size(); k++) {
            row.push_back(net.node(external.schema.node_ids()[k]).states.labels()[static_cast<std::size_t>(values[k])]);
        }
        program.external_rows.push_back(std::move(row));
    }

    return Compilation{
        std::move(program),
        std::move(eras),
        std::move(deltas),
        std::move(era_dimensions),
        std::move(register_dims),
        std::move(requested),
        std::move(repairs),
    };
}

std::vector<CVector> run_program_prefixes(const UnitaryProgram &program) {
    std::vector<CVector> states;
    CVector state = program.initial;
    if (program.mode == InitialMode::kV1) {
        states.push_back(state);
    }
    for (const auto &u : program.unitaries) {
        if (u.cols() != state.size()) {
            throw Error(Stage::kSynthesis, "unitary does not match the register dimension");
        }
        state = u * state;
        states.push_back(state);
    }
    return states;
}

CVector run_program(const UnitaryProgram &program) {
    auto states = run_program_prefixes(program);
    return states.empty() ? program.initial : states.back();
}

double VerificationReport::max_residual() const {
    double worst = oracle;
    for (double r : unitarity) {
        worst = std::isnan(r) ? kInf : std::max(worst, r);
    }
    for (double r : prefix) {
        worst = std::isnan(r) ? kInf : std::max(worst, r);
    }
    return std::isnan(worst) ? kInf : worst;
}

bool VerificationReport::passed(double tolerance) const {
    return problems.empty() && max_residual() <= tolerance;
}

namespace {

// Residual between a register state and a reference vector over the full
// schema: retained labels on top, pruned labels and padding must be zero.
double compare_with_reference(const CVector &state, const Axis &rows, const CVector &reference) {
    if (rows.schema.dimension() != static_cast<std::size_t>(reference.size()) ||
        rows.size() > static_cast<std::size_t>(state.size())) {
        return kInf;
    }
    std::vector<bool> retained(static_cast<std::size_t>(reference.size()), false);
    double worst = 0;
    for (std::size_t r = 0; r < rows.size(); r++) {
        std::size_t label = rows.labels[r];
        if (label >= retained.size()) {
            return kInf;
        }
        retained[label] = true;
        worst = std::max(worst, std::abs(state[static_cast<Eigen::Index>(r)] - reference[static_cast<Eigen::Index>(label)]));
    }
    for (std::size_t label = 0; label < retained.size(); label++) {
        if (!retained[label]) {
            worst = std::max(worst, std::abs(reference[static_cast<Eigen::Index>(label)]));
        }
    }
    for (auto r = static_cast<Eigen::Index>(rows.size()); r < state.size(); r++) {
        worst = std::max(worst, std::abs(state[r]));
    }
    return worst;
}

}  // namespace

VerificationReport verify_program(const UnitaryProgram &program, const QBNet &net) {
    VerificationReport report;
    auto n = static_cast<Eigen::Index>(program.register_dimension);
    for (const auto &u : program.unitaries) {
        report.unitarity.push_back(u.rows() == n && u.cols() == n ? unitarity_residual(u) : kInf);
    }
    report.prefix.assign(program.segments.size(), kInf);
    report.oracle = kInf;

    std::size_t expected_unitaries = program.segments.size() - std::min(program.segments.size(), program.first_unitary_segment());
    if (program.segments.empty() || program.unitaries.size() != expected_unitaries || program.initial.size() != n) {
        report.problems.push_back("program structure is inconsistent");
        return report;
    }
    ValidationReport validation = validate_net(net);
    if (!validation.ok()) {
        report.problems.push_back("net is invalid: " + validation.str());
        return report;
    }
    for (const auto &u : program.unitaries) {
        if (u.rows() != n || u.cols() != n) {
            report.problems.push_back("unitary does not match the register dimension");
            return report;
        }
    }

    std::vector<CVector> states = run_program_prefixes(program);
    try {
        EraDecomposition eras = compute_eras(net, program.era_kind);
        std::vector<EraMatrix> matrices = build_era_matrices(net, eras);
        int expected_first = 1;
        for (std::size_t k = 0; k < program.segments.size(); k++) {
            const ProgramSegment &segment = program.segments[k];
            if (segment.first_era != expected_first || segment.last_era < segment.first_era ||
                segment.last_era > eras.count()) {
                report.problems.push_back("segment " + std::to_string(k + 1) + " does not match the net's eras");
                return report;
            }
            expected_first = segment.last_era + 1;
            ChainVector reference = chain_product(
                std::span<const EraMatrix>(matrices.data(), static_cast<std::size_t>(segment.last_era)));
            if (!(reference.rows.schema == segment.rows.schema)) {
                report.problems.push_back("segment " + std::to_string(k + 1) + " row schema does not match the net");
                continue;
            }
            report.prefix[k] = compare_with_reference(states[k], segment.rows, reference.values);
        }
        if (expected_first != eras.count() + 1) {
            report.problems.push_back("segments do not cover every era");
        }

        const Axis &external = program.external_axis();
        NodeClasses classes = classify_nodes(net);
        IndexSchema external_schema = IndexSchema::over(net, classes.external);
        if (!(external.schema == external_schema)) {
            report.problems.push_back("program's external rows do not match the net's external nodes");
            return report;
        }
        CVector fi = oracle::feynman_vector(net);
        const CVector &final_state = states.back();
        double worst = 0;
        std::vector<bool> retained(static_cast<std::size_t>(fi.size()), false);
        for (std::size_t r = 0; r < external.size(); r++) {
            std::size_t label = external.labels[r];
            if (label >= retained.size()) {
                worst = kInf;
                break;
            }
            retained[label] = true;
            worst = std::max(
                worst, std::abs(final_state[static_cast<Eigen::Index>(r)] - fi[static_cast<Eigen::Index>(label)]));
        }
        for (std::size_t label = 0; label < retained.size(); label++) {
            if (!retained[label]) {
                worst = std::max(worst, std::abs(fi[static_cast<Eigen::Index>(label)]));
            }
        }
        report.oracle = worst;
    } catch (const Error &e) {
        report.problems.push_back(e.what());
    }
    return report;
}

}  // namespace qbc
