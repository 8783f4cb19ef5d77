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

#include <gtest/gtest.h>

#include "qbc/errors.h"
#include "qbc/oracle.h"
#include "test_util.h"

using namespace qbc;
using namespace qbc::testing;

namespace {

CompileOptions measuring(std::set<int> nodes, InitialMode mode = InitialMode::kV1) {
    CompileOptions options;
    options.breakpoints.measured_nodes = std::move(nodes);
    options.mode = mode;
    return options;
}

CVector final_amplitudes(const UnitaryProgram &program) {
    return run_program(program).head(static_cast<Eigen::Index>(program.external_axis().size()));
}

std::vector<EraMatrix> era_matrices(const QBNet &net) {
    return build_era_matrices(net, compute_eras(net, EraKind::kRootNode));
}

CVector full_chain(const QBNet &net) {
    return chain_product(era_matrices(net)).values;
}

// Register state scattered back onto the full external schema.
CVector scattered(const UnitaryProgram &program) {
    const Axis &axis = program.external_axis();
    CVector state = run_program(program);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(axis.schema.dimension()));
    for (std::size_t r = 0; r < axis.size(); r++) {
        out[static_cast<Eigen::Index>(axis.labels[r])] = state[static_cast<Eigen::Index>(r)];
    }
    return out;
}

}  // namespace

TEST(kept_breakpoints, measured_node_keeps_break_after_its_last_era) {
    QBNet net = teleportation();
    EraDecomposition eras = root_node_eras(net);
    auto deltas = delta_sets(appearance_bounds(net, eras));
    EXPECT_EQ(kept_breakpoints(eras, deltas, {{3}, {}}), (std::set<int>{3}));
    EXPECT_EQ(kept_breakpoints(eras, deltas, {{4}, {}}), (std::set<int>{2}));
    // external node x6 lives until the end
    EXPECT_TRUE(kept_breakpoints(eras, deltas, {{6}, {}}).empty());
    EXPECT_EQ(kept_breakpoints(eras, deltas, {{}, {0, 1, 3, 4, 9}}), (std::set<int>{1, 3}));
}

TEST(merge_breakpoints, merges_between_breakpoints) {
    auto matrices = era_matrices(teleportation());
    auto one = merge_breakpoints(matrices, {});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].first_era, 1);
    EXPECT_EQ(one[0].last_era, 4);
    EXPECT_LE(max_abs_difference(one[0].entries, multiply_run(matrices).entries), 0.0);

    auto two = merge_breakpoints(matrices, {3});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].last_era, 3);
    EXPECT_EQ(two[1].first_era, 4);
    EXPECT_EQ(two[1].entries, matrices[3].entries);

    auto all = merge_breakpoints(matrices, {1, 2, 3});
    ASSERT_EQ(all.size(), 4u);
    for (std::size_t k = 0; k < 4; k++) {
        EXPECT_EQ(all[k].entries, matrices[k].entries);
    }
}

TEST(check_isometry, examples) {
    EXPECT_TRUE(check_isometry(CMatrix::Identity(3, 3), 1e-9).pass);
    EXPECT_TRUE(check_isometry(oracle::random_isometry(5, 2, 3), 1e-9).pass);

    IsometryReport duplicate = check_isometry(matrix({{1, 1}, {0, 0}}), 1e-9);
    EXPECT_FALSE(duplicate.pass);
    EXPECT_DOUBLE_EQ(duplicate.residual, 1.0);

    IsometryReport wide = check_isometry(matrix({{1, 0}}), 1e-9);
    EXPECT_FALSE(wide.fits);
    EXPECT_FALSE(wide.pass);
}

TEST(repair, isometric_segment_is_untouched) {
    auto segments = merge_breakpoints(era_matrices(teleportation()), {3});
    auto before = segments;
    for (std::size_t k = 0; k < segments.size(); k++) {
        EXPECT_TRUE(repair(segments, k, 1e-9).empty());
    }
    ASSERT_EQ(segments.size(), before.size());
    for (std::size_t k = 0; k < segments.size(); k++) {
        EXPECT_EQ(segments[k].entries, before[k].entries);
    }
}

TEST(repair, prunes_zero_rows) {
    QBNet net = zero_row_fixture();
    auto segments = merge_breakpoints(era_matrices(net), {1});
    ASSERT_EQ(segments.size(), 2u);
    ASSERT_FALSE(check_isometry(segments[1].entries, 1e-9).pass);

    auto actions = repair(segments, 1, 1e-9);
    ASSERT_EQ(actions.size(), 1u);
    EXPECT_EQ(actions[0].kind, RepairAction::Kind::kPrunedZeroRows);
    EXPECT_EQ(actions[0].indices, (std::vector<std::size_t>{2}));
    EXPECT_EQ(segments[0].rows.labels, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(segments[1].cols.labels, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(check_isometry(segments[0].entries, 1e-9).pass);
    EXPECT_TRUE(check_isometry(segments[1].entries, 1e-9).pass);
    EXPECT_LE(max_abs_difference(chain_product(segments).values, full_chain(net)), 1e-12);
}

TEST(repair, replaces_flagged_columns) {
    QBNet net = flagged_column_fixture();
    auto segments = merge_breakpoints(era_matrices(net), {1, 2});
    ASSERT_EQ(segments.size(), 3u);
    ASSERT_FALSE(check_isometry(segments[2].entries, 1e-9).pass);

    auto actions = repair(segments, 2, 1e-9);
    ASSERT_EQ(actions.size(), 1u);
    EXPECT_EQ(actions[0].kind, RepairAction::Kind::kReplacedFlaggedColumns);
    EXPECT_EQ(actions[0].indices, (std::vector<std::size_t>{1}));
    EXPECT_LE(max_abs_difference(segments[2].entries, CMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LE(max_abs_difference(chain_product(segments).values, full_chain(net)), 1e-12);
}

TEST(repair, removes_breakpoint_when_nothing_else_helps) {
    QBNet net = merge_fixture();
    auto segments = merge_breakpoints(era_matrices(net), {1, 2});
    auto actions = repair(segments, 1, 1e-9);
    ASSERT_EQ(actions.size(), 1u);
    EXPECT_EQ(actions[0].kind, RepairAction::Kind::kRemovedBreakpoint);
    EXPECT_EQ(actions[0].breakpoint, 2);
    EXPECT_EQ(actions[0].str(), "removed breakpoint between M_3 and M_2; merged into M_3...M_2");
    ASSERT_EQ(segments.size(), 2u);
    EXPECT_EQ(segments[1].first_era, 2);
    EXPECT_EQ(segments[1].last_era, 3);
    EXPECT_TRUE(check_isometry(segments[1].entries, 1e-9).pass);
}

TEST(repair, last_segment_merges_with_predecessor) {
    // M_2 = diag(2, 1) is last; merging it with M_1 still fails.
    QBNet net({make_node(1, {}, matrix({{kHalfRoot}, {kHalfRoot}})), make_node(2, {1}, matrix({{2, 0}, {0, 1}}))});
    auto segments = merge_breakpoints(era_matrices(net), {1});
    try {
        repair(segments, 1, 1e-9);
        FAIL() << "expected a repair error";
    } catch (const Error &e) {
        EXPECT_EQ(e.stage(), Stage::kRepair);
    }
    ASSERT_EQ(segments.size(), 1u);
    EXPECT_EQ(segments[0].last_era, 2);
}

TEST(repair, lone_segment_fails) {
    auto segments = era_matrices(unrepairable_fixture());
    try {
        repair(segments, 0, 1e-9);
        FAIL() << "expected a repair error";
    } catch (const Error &e) {
        EXPECT_EQ(e.stage(), Stage::kRepair);
        EXPECT_NE(std::string(e.what()).find("M_1"), std::string::npos);
    }
}

TEST(compute_dims, examples) {
    std::vector<std::size_t> a{1, 4, 4, 2};
    Dims d = compute_dims(a);
    EXPECT_EQ(d.max_dimension, 4u);
    EXPECT_EQ(d.register_dimension, 4u);
    EXPECT_EQ(d.padding, (std::vector<std::size_t>{3, 0, 0, 2}));

    std::vector<std::size_t> b{1, 5};
    EXPECT_EQ(compute_dims(b).register_dimension, 8u);
    EXPECT_EQ(compute_dims(b, DimMode::kExact).register_dimension, 5u);

    std::vector<std::size_t> c{1};
    EXPECT_EQ(compute_dims(c).register_dimension, 2u);
    EXPECT_EQ(compute_dims(c, DimMode::kExact).register_dimension, 1u);
}

TEST(compute_dims, register_is_smallest_power_of_two) {
    for (std::size_t d = 1; d <= 300; d++) {
        std::vector<std::size_t> dims{1, d};
        std::size_t n = compute_dims(dims).register_dimension;
        EXPECT_EQ(n & (n - 1), 0u);
        EXPECT_LT(n / 2, std::max<std::size_t>(d, 2));
        EXPECT_LE(std::max<std::size_t>(d, 2), n);
    }
}

TEST(pad_and_complete, examples) {
    EXPECT_EQ(pad_and_complete(matrix({{1}, {0}}), 2, 1e-9), CMatrix::Identity(2, 2));
    EXPECT_EQ(pad_and_complete(matrix({{0}, {1}}), 2, 1e-9), matrix({{0, 1}, {1, 0}}));
    // zero rows beneath, e_j fill the rest
    EXPECT_EQ(pad_and_complete(matrix({{0}, {1}}), 4, 1e-9),
              matrix({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST(pad_and_complete, random_isometries) {
    for (std::uint64_t s = 0; s < 20; s++) {
        CMatrix m = oracle::random_isometry(8, 3, base_seed() + s);
        CMatrix u = pad_and_complete(m, 8, 1e-9);
        EXPECT_LE(unitarity_residual(u), 1e-10);
        EXPECT_EQ(u.leftCols(3), m);

        CMatrix small = oracle::random_isometry(5, 2, base_seed() + 100 + s);
        CMatrix v = pad_and_complete(small, 8, 1e-9);
        EXPECT_LE(unitarity_residual(v), 1e-10);
        EXPECT_EQ(v.block(0, 0, 5, 2), small);
        EXPECT_EQ(v.block(5, 0, 3, 2), CMatrix::Zero(3, 2));
    }
}

TEST(pad_and_complete, rejects_bad_input) {
    EXPECT_THROW(pad_and_complete(matrix({{1, 1}, {0, 0}}), 2, 1e-9), Error);
    EXPECT_THROW(pad_and_complete(CMatrix::Identity(4, 4), 2, 1e-9), Error);
}

TEST(compile, teleportation_with_measurement) {
    QBNet net = teleportation();
    Compilation v1 = compile(net, measuring({3}));
    EXPECT_EQ(v1.requested_breakpoints, (std::set<int>{3}));
    EXPECT_TRUE(v1.repairs.empty());
    EXPECT_EQ(v1.era_dimensions, (std::vector<std::size_t>{1, 4, 8, 8, 8}));
    EXPECT_EQ(v1.dims.max_dimension, 8u);
    const UnitaryProgram &p = v1.program;
    EXPECT_EQ(p.register_dimension, 8u);
    EXPECT_EQ(p.qubit_count, 3);
    ASSERT_EQ(p.segments.size(), 2u);
    EXPECT_EQ(p.segments[0].last_era, 3);
    EXPECT_EQ(p.breakpoints, (std::vector<int>{3}));
    EXPECT_EQ(p.unitaries.size(), 1u);
    EXPECT_EQ(p.external_names, (std::vector<std::string>{"x6"}));
    EXPECT_EQ(p.external_rows.size(), 8u);

    Compilation e1 = compile(net, measuring({3}, InitialMode::kE1));
    EXPECT_EQ(e1.program.unitaries.size(), 2u);
    EXPECT_EQ(e1.program.initial, basis_vector(8, 0));
}

TEST(compile, no_measurement_gives_single_segment) {
    Compilation c = compile(teleportation(), measuring({}, InitialMode::kE1));
    EXPECT_EQ(c.program.segments.size(), 1u);
    EXPECT_EQ(c.program.unitaries.size(), 1u);
    EXPECT_LE(max_abs_difference(final_amplitudes(c.program), oracle::feynman_vector(teleportation())), 1e-12);
}

TEST(compile, single_node_net) {
    QBNet net({make_node(1, {}, matrix({{1}, {0}}))});
    Compilation v1 = compile(net);
    EXPECT_TRUE(v1.program.unitaries.empty());
    EXPECT_EQ(v1.program.initial, matrix({{1}, {0}}));

    Compilation e1 = compile(net, measuring({}, InitialMode::kE1));
    ASSERT_EQ(e1.program.unitaries.size(), 1u);
    EXPECT_EQ(e1.program.unitaries[0], CMatrix::Identity(2, 2));
    EXPECT_EQ(e1.program.initial, basis_vector(2, 0));

    Compilation exact = compile(net, [] {
        CompileOptions o;
        o.dim_mode = DimMode::kExact;
        return o;
    }());
    EXPECT_EQ(exact.program.register_dimension, 2u);
}

TEST(compile, exact_mode_keeps_odd_dimension) {
    CompileOptions options;
    options.dim_mode = DimMode::kExact;
    QBNet net({make_node(1, {}, oracle::random_isometry(3, 1, 5))});
    Compilation c = compile(net, options);
    EXPECT_EQ(c.program.register_dimension, 3u);
    EXPECT_FALSE(c.program.qubit_count.has_value());
    EXPECT_EQ(compile(net).program.qubit_count, 2);
}

TEST(compile, repair_fixtures) {
    Compilation pruned = compile(zero_row_fixture(), measuring({1}));
    ASSERT_EQ(pruned.repairs.size(), 1u);
    EXPECT_EQ(pruned.repairs[0].kind, RepairAction::Kind::kPrunedZeroRows);
    EXPECT_EQ(pruned.program.register_dimension, 2u);
    EXPECT_TRUE(verify_program(pruned.program, zero_row_fixture()).passed(1e-9));

    Compilation flagged = compile(flagged_column_fixture(), measuring({1, 2}, InitialMode::kE1));
    ASSERT_EQ(flagged.repairs.size(), 1u);
    EXPECT_EQ(flagged.repairs[0].kind, RepairAction::Kind::kReplacedFlaggedColumns);
    EXPECT_TRUE(verify_program(flagged.program, flagged_column_fixture()).passed(1e-9));

    Compilation merged = compile(merge_fixture(), measuring({1, 2}));
    ASSERT_EQ(merged.repairs.size(), 1u);
    EXPECT_EQ(merged.repairs[0].breakpoint, 2);
    EXPECT_EQ(merged.program.breakpoints, (std::vector<int>{1}));
    EXPECT_TRUE(verify_program(merged.program, merge_fixture()).passed(1e-9));

    try {
        compile(unrepairable_fixture());
        FAIL() << "expected a repair error";
    } catch (const Error &e) {
        EXPECT_EQ(e.stage(), Stage::kRepair);
    }
}

TEST(compile, rejects_invalid_input) {
    EXPECT_THROW(compile(teleportation(), measuring({7})), Error);
    QBNet cyclic({make_node(1, {2}, CMatrix::Identity(2, 2)), make_node(2, {1}, CMatrix::Identity(2, 2))});
    try {
        compile(cyclic);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.stage(), Stage::kValidation);
    }
}

TEST(verify_program, compiled_fixtures_pass) {
    for (const QBNet &net : {teleportation(), external_not_last()}) {
        for (InitialMode mode : {InitialMode::kV1, InitialMode::kE1}) {
            for (int measured = 0; measured <= static_cast<int>(net.size()); measured++) {
                std::set<int> nodes;
                if (measured > 0) {
                    nodes.insert(measured);
                }
                VerificationReport report = verify_program(compile(net, measuring(nodes, mode)).program, net);
                EXPECT_TRUE(report.passed(1e-9)) << "measured " << measured;
                EXPECT_LE(report.oracle, 1e-10);
                for (double r : report.prefix) {
                    EXPECT_LE(r, 1e-10);
                }
            }
        }
    }
}

TEST(verify_program, detects_perturbed_unitary) {
    QBNet net = teleportation();
    UnitaryProgram program = compile(net, measuring({3})).program;
    program.unitaries[0](2, 5) += 1e-3;
    VerificationReport report = verify_program(program, net);
    EXPECT_GE(report.unitarity[0], 1e-4);
    EXPECT_FALSE(report.passed(1e-9));
}

TEST(verify_program, single_node_compares_initial_vector) {
    QBNet net({make_node(1, {}, matrix({{0.6}, {Complex(0, 0.8)}}))});
    UnitaryProgram program = compile(net).program;
    EXPECT_TRUE(program.unitaries.empty());
    EXPECT_LE(verify_program(program, net).oracle, 1e-15);
    program.initial[1] = Complex(0, -0.8);
    VerificationReport report = verify_program(program, net);
    EXPECT_NEAR(report.oracle, 1.6, 1e-12);
}

TEST(verify_program, mismatched_net_fails) {
    UnitaryProgram program = compile(teleportation()).program;
    QBNet other = teleportation();
    std::vector<Node> nodes;
    for (std::size_t k = 0; k < other.size(); k++) {
        nodes.push_back(other.node(static_cast<int>(k + 1)));
    }
    nodes[0].matrix = matrix({{kHalfRoot}, {-kHalfRoot}});
    VerificationReport report = verify_program(program, QBNet(nodes));
    EXPECT_FALSE(report.passed(1e-9));
    EXPECT_GT(report.oracle, 1e-3);
}

class synthesis_property : public ::testing::TestWithParam<int> {};

TEST_P(synthesis_property, unitarity_and_invariance) {
    std::uint64_t seed = base_seed() + static_cast<std::uint64_t>(GetParam());
    QBNet net = oracle::random_net(2 + GetParam() % 5, 3, 2, seed);
    Compilation none = compile(net, measuring({}, InitialMode::kV1));
    for (const auto &u : none.program.unitaries) {
        EXPECT_LE(unitarity_residual(u), 1e-9);
    }

    CompileOptions all;
    for (int p = 1; p < none.eras.count(); p++) {
        all.breakpoints.positions.insert(p);
    }
    Compilation split_v1 = compile(net, all);
    all.mode = InitialMode::kE1;
    Compilation split_e1 = compile(net, all);
    Compilation none_e1 = compile(net, measuring({}, InitialMode::kE1));

    EXPECT_LE(max_abs_difference(scattered(split_v1.program), scattered(split_e1.program)), 1e-12);
    EXPECT_LE(max_abs_difference(scattered(none.program), scattered(none_e1.program)), 1e-12);
    EXPECT_LE(max_abs_difference(scattered(none.program), scattered(split_v1.program)), 1e-12);
    EXPECT_TRUE(verify_program(split_e1.program, net).passed(1e-9));
}

INSTANTIATE_TEST_SUITE_P(random_nets, synthesis_property, ::testing::Range(0, 30));
