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

#include "qbc/report.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "qbc/chain_builder.h"

namespace qbc {

std::string format_node_set(const QBNet &net, const std::vector<int> &ids) {
    std::string out = "{";
    for (std::size_t k = 0; k < ids.size(); k++) {
        out += (k ? "," : "") + net.node(ids[k]).name;
    }
    return out + "}";
}

std::string format_era_table(const QBNet &net, const EraDecomposition &eras) {
    AppearanceBounds bounds = appearance_bounds(net, eras);
    auto deltas = delta_sets(bounds);
    std::ostringstream out;
    out << era_kind_name(eras.kind()) << "-node eras (L=" << eras.count() << ")\n";
    for (int a = 1; a <= eras.count(); a++) {
        std::size_t rows = IndexSchema::over(net, carried_nodes(eras, deltas, a)).dimension();
        std::size_t cols = IndexSchema::over(net, carried_nodes(eras, deltas, a - 1)).dimension();
        out << "  T_" << a << "=" << format_node_set(net, eras.era(a)) << "  Gamma_" << a << "="
            << format_node_set(net, eras.inputs(a)) << "  Delta_" << a << "="
            << format_node_set(net, deltas[static_cast<std::size_t>(a - 1)]) << "  d_" << a << "=" << rows
            << "  M_" << a << ": " << rows << "x" << cols << "\n";
    }
    return out.str();
}

std::string format_compilation(const QBNet &net, const Compilation &compilation) {
    const UnitaryProgram &program = compilation.program;
    std::ostringstream out;
    out << format_era_table(net, compilation.eras);
    out << "breakpoints:";
    if (compilation.requested_breakpoints.empty()) {
        out << " none requested";
    }
    for (int p : compilation.requested_breakpoints) {
        out << " [between M_" << p + 1 << " and M_" << p << "]";
    }
    out << "\n";
    for (const auto &action : compilation.repairs) {
        out << "repair: " << action.str() << "\n";
    }
    if (compilation.repairs.empty()) {
        out << "repair: none needed\n";
    }
    out << "segments: " << program.segments.size() << "\n";
    for (std::size_t k = 0; k < program.segments.size(); k++) {
        const auto &segment = program.segments[k];
        out << "  M'_" << k + 1 << " = ";
        for (int a = segment.last_era; a >= segment.first_era; a--) {
            out << "M_" << a;
        }
        out << "  rows " << format_node_set(net, segment.rows.schema.node_ids()) << " d=" << segment.rows.size()
            << "\n";
    }
    out << "D=" << compilation.dims.max_dimension << " N_S=" << program.register_dimension << " qubits=";
    if (program.qubit_count) {
        out << *program.qubit_count;
    } else {
        out << "n/a";
    }
    out << " mode=" << (program.mode == InitialMode::kV1 ? "v1" : "e1") << " unitaries=" << program.unitaries.size()
        << "\n";
    return out.str();
}

std::string format_verification(const VerificationReport &report, double tolerance) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(3);
    auto status = [&](double r) {
        return r <= tolerance ? "ok" : "FAIL";
    };
    for (std::size_t k = 0; k < report.unitarity.size(); k++) {
        out << "unitarity  U#" << k + 1 << "  " << report.unitarity[k] << "  " << status(report.unitarity[k]) << "\n";
    }
    for (std::size_t k = 0; k < report.prefix.size(); k++) {
        out << "prefix     segment " << k + 1 << "  " << report.prefix[k] << "  " << status(report.prefix[k]) << "\n";
    }
    out << "oracle     final  " << report.oracle << "  " << status(report.oracle) << "\n";
    for (const auto &p : report.problems) {
        out << "problem: " << p << "\n";
    }
    out << (report.passed(tolerance) ? "verified" : "verification failed") << " (tol " << tolerance << ")\n";
    return out.str();
}

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string arrow_label(int cardinality) {
    int bits = 0;
    while ((1 << bits) < cardinality) {
        bits++;
    }
    return (1 << bits) == cardinality ? std::to_string(bits) : std::to_string(cardinality);
}

}  // namespace

std::string to_dot(const QBNet &net, const EraDecomposition &eras) {
    std::ostringstream out;
    out << "digraph qbnet {\n  rankdir=BT;\n";
    for (int a = 1; a <= eras.count(); a++) {
        out << "  subgraph cluster_era" << a << " {\n    label=\"T_" << a << "\";\n";
        for (int id : eras.era(a)) {
            const Node &node = net.node(id);
            out << "    n" << id << " [label=" << quoted(node.name)
                << (net.children(id).empty() ? ", peripheries=2" : "") << "];\n";
        }
        out << "  }\n";
    }
    for (const auto &node : net.nodes()) {
        for (int p : node.parents) {
            out << "  n" << p << " -> n" << node.id << " [label=\"" << arrow_label(net.cardinality(p)) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace qbc
