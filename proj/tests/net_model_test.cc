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

#include "qbc/net_model.h"

#include <gtest/gtest.h>

#include "qbc/oracle.h"
#include "test_util.h"

using namespace qbc;
using qbc::testing::make_node;

namespace {

CMatrix column(std::initializer_list<Complex> values) {
    CMatrix m(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index r = 0;
    for (Complex v : values) {
        m(r++, 0) = v;
    }
    return m;
}

}  // namespace

TEST(validate_net, single_root_node_is_valid) {
    QBNet net({make_node(1, {}, column({1, 0}))});
    EXPECT_TRUE(validate_net(net).ok());
}

TEST(validate_net, two_cycle_reports_witness) {
    QBNet net({make_node(1, {2}, CMatrix::Identity(2, 2)), make_node(2, {1}, CMatrix::Identity(2, 2))});
    auto report = validate_net(net);
    ASSERT_TRUE(report.has(Violation::Kind::kCycle));
    for (const auto &v : report.violations) {
        if (v.kind == Violation::Kind::kCycle) {
            EXPECT_EQ(v.cycle, (std::vector<int>{1, 2, 1}));
        }
    }
}

TEST(validate_net, row_count_must_match_cardinality) {
    Node node = make_node(1, {}, column({1, 0, 0}));
    node.states = StateSpace::numbered(2);
    auto report = validate_net(QBNet({node}));
    EXPECT_TRUE(report.has(Violation::Kind::kShape));
}

TEST(validate_net, column_count_must_match_parents) {
    QBNet net({make_node(1, {}, column({1, 0})), make_node(2, {1}, column({1, 0}))});
    EXPECT_TRUE(validate_net(net).has(Violation::Kind::kShape));
}

TEST(validate_net, reports_every_kind_of_violation) {
    Node bad_values = make_node(1, {}, column({std::numeric_limits<double>::quiet_NaN(), 0}));
    Node dangling = make_node(2, {7}, CMatrix::Ones(2, 2));
    Node self = make_node(3, {3}, CMatrix::Ones(2, 2));
    Node twin = make_node(4, {1, 1}, CMatrix::Ones(2, 4));
    twin.name = "x1";
    auto report = validate_net(QBNet({bad_values, dangling, self, twin}));
    EXPECT_TRUE(report.has(Violation::Kind::kNonFinite));
    EXPECT_TRUE(report.has(Violation::Kind::kDanglingParent));
    EXPECT_TRUE(report.has(Violation::Kind::kSelfParent));
    EXPECT_TRUE(report.has(Violation::Kind::kDuplicateParent));
    EXPECT_TRUE(report.has(Violation::Kind::kDuplicateName));
    EXPECT_FALSE(report.str().empty());
}

TEST(validate_net, ids_must_be_contiguous) {
    QBNet net({make_node(1, {}, column({1, 0})), make_node(3, {}, column({1, 0}))});
    EXPECT_TRUE(validate_net(net).has(Violation::Kind::kBadIds));
}

TEST(validate_net, longer_cycle_among_valid_nodes) {
    auto net = qbc::testing::topology(4, {{1, 2}, {2, 3}, {3, 4}, {4, 2}});
    auto report = validate_net(net);
    ASSERT_TRUE(report.has(Violation::Kind::kCycle));
    EXPECT_EQ(report.violations.back().cycle, (std::vector<int>{2, 3, 4, 2}));
}

TEST(classify_nodes, teleportation_topology) {
    auto classes = classify_nodes(qbc::testing::topology(6, qbc::testing::kTeleportationArrows));
    EXPECT_EQ(classes.external, (std::vector<int>{6}));
    EXPECT_EQ(classes.internal, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(classify_nodes, external_node_before_last_era) {
    auto classes = classify_nodes(qbc::testing::topology(5, qbc::testing::kExternalNotLastArrows));
    EXPECT_EQ(classes.external, (std::vector<int>{2, 5}));
}

TEST(classify_nodes, isolated_node_is_external) {
    auto classes = classify_nodes(QBNet({make_node(1, {}, column({1, 0}))}));
    EXPECT_EQ(classes.external, (std::vector<int>{1}));
    EXPECT_TRUE(classes.internal.empty());
}

TEST(classify_nodes, partition_on_random_nets) {
    for (int trial = 0; trial < 50; trial++) {
        auto net = oracle::random_net(6, 3, 3, qbc::testing::base_seed() + trial);
        auto classes = classify_nodes(net);
        std::vector<int> all = classes.internal;
        all.insert(all.end(), classes.external.begin(), classes.external.end());
        std::sort(all.begin(), all.end());
        std::vector<int> expected(net.size());
        std::iota(expected.begin(), expected.end(), 1);
        ASSERT_EQ(all, expected) << "seed " << qbc::testing::base_seed() + trial;
    }
}

TEST(story_amplitude, single_node) {
    QBNet net({make_node(1, {}, column({1, 0}))});
    EXPECT_EQ(story_amplitude(net, std::vector<int>{0}), Complex(1, 0));
    EXPECT_EQ(story_amplitude(net, std::vector<int>{1}), Complex(0, 0));
}

TEST(story_amplitude, two_node_chain) {
    Complex a0{0.6, 0.1}, a1{-0.3, 0.7};
    CMatrix b(2, 2);
    b << Complex{1, 2}, Complex{3, -1}, Complex{0.5, 0}, Complex{0, -2};
    QBNet net({make_node(1, {}, column({a0, a1})), make_node(2, {1}, b)});
    for (int x1 = 0; x1 < 2; x1++) {
        for (int x2 = 0; x2 < 2; x2++) {
            Complex expected = b(x2, x1) * (x1 == 0 ? a0 : a1);
            EXPECT_EQ(story_amplitude(net, std::vector<int>{x1, x2}), expected);
        }
    }
}

TEST(story_amplitude, teleportation_reference_values) {
    // Reference values from tools/make_fixtures.py (numpy, term-by-term product).
    auto net = qbc::testing::teleportation();
    struct Case {
        std::vector<int> story;
        Complex expected;
    };
    std::vector<Case> cases{
        {{0, 0, 0, 0, 0, 0}, {0.11941706114070069, 0}},
        {{0, 0, 0, 0, 2, 5}, {-0.057251588855911355, 0.10479833044927545}},
        {{1, 1, 1, 0, 1, 2}, {0.037654869829186102, 0.11332495431117057}},
        {{1, 0, 1, 1, 3, 7}, {0, 0}},
    };
    for (const auto &c : cases) {
        Complex got = story_amplitude(net, c.story);
        EXPECT_NEAR(got.real(), c.expected.real(), 1e-15);
        EXPECT_NEAR(got.imag(), c.expected.imag(), 1e-15);
    }
}

TEST(story_amplitude, multiplicative_over_disjoint_union) {
    auto left = oracle::random_net(3, 3, 2, 11);
    auto right = oracle::random_net(2, 3, 1, 12);
    std::vector<Node> nodes = left.nodes();
    for (Node n : right.nodes()) {
        n.id += 3;
        n.name = "y" + std::to_string(n.id);
        for (int &p : n.parents) {
            p += 3;
        }
        nodes.push_back(n);
    }
    QBNet joined(std::move(nodes));
    ASSERT_TRUE(validate_net(joined).ok());
    qbc::testing::for_each_story(joined, [&](const std::vector<int> &x) {
        std::vector<int> a(x.begin(), x.begin() + 3), b(x.begin() + 3, x.end());
        Complex expected = story_amplitude(left, a) * story_amplitude(right, b);
        EXPECT_LE(std::abs(story_amplitude(joined, x) - expected), 1e-15);
    });
}

TEST(story_amplitude, single_node_reproduces_column) {
    CMatrix a = oracle::random_isometry(5, 1, 3);
    QBNet net({make_node(1, {}, a)});
    for (int x = 0; x < 5; x++) {
        EXPECT_EQ(story_amplitude(net, std::vector<int>{x}), a(x, 0));
    }
}

TEST(story_amplitude, rejects_out_of_range_story) {
    QBNet net({make_node(1, {}, column({1, 0}))});
    EXPECT_THROW(story_amplitude(net, std::vector<int>{2}), std::out_of_range);
    EXPECT_THROW(story_amplitude(net, std::vector<int>{0, 0}), std::invalid_argument);
}

TEST(qbnet, sorts_parents_and_nodes) {
    QBNet net({make_node(3, {2, 1}, CMatrix::Ones(2, 4)),
               make_node(1, {}, column({1, 0})),
               make_node(2, {}, column({1, 0}))});
    EXPECT_EQ(net.nodes().front().id, 1);
    EXPECT_EQ(net.node(3).parents, (std::vector<int>{1, 2}));
    EXPECT_EQ(net.children(1), (std::vector<int>{3}));
    EXPECT_EQ(net.id_of("x2"), 2);
    EXPECT_EQ(net.id_of("nope"), -1);
}
