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

#include "qbc/io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qbc/errors.h"

namespace qbc {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string &message) {
    throw Error(Stage::kParse, message);
}

const Json &field(const Json &object, const char *key, const std::string &where) {
    auto it = object.find(key);
    if (it == object.end()) {
        fail(where + ": missing field '" + key + "'");
    }
    return *it;
}

void reject_unknown(const Json &object, const std::set<std::string> &known, const std::string &where) {
    for (const auto &[key, value] : object.items()) {
        if (!known.contains(key)) {
            fail(where + ": unknown field '" + key + "'");
        }
    }
}

int as_int(const Json &value, const std::string &where) {
    if (!value.is_number_integer()) {
        fail(where + ": expected an integer");
    }
    return value.get<int>();
}

std::size_t as_size(const Json &value, const std::string &where) {
    if (!value.is_number_unsigned()) {
        fail(where + ": expected a non-negative integer");
    }
    return value.get<std::size_t>();
}

Complex as_complex(const Json &value, const std::string &where) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        fail(where + ": expected a [re, im] pair");
    }
    return {value[0].get<double>(), value[1].get<double>()};
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

CMatrix as_matrix(const Json &value, const std::string &where) {
    if (!value.is_array()) {
        fail(where + ": expected a list of rows");
    }
    auto rows = static_cast<Eigen::Index>(value.size());
    Eigen::Index cols = rows == 0 ? 0 : -1;
    CMatrix m;
    for (Eigen::Index r = 0; r < rows; r++) {
        const Json &row = value[static_cast<std::size_t>(r)];
        if (!row.is_array()) {
            fail(where + ": row " + std::to_string(r) + " is not a list");
        }
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            fail(where + ": rows have different lengths");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            m(r, c) = as_complex(row[static_cast<std::size_t>(c)], where);
        }
    }
    if (rows == 0) {
        m.resize(0, 0);
    }
    return m;
}

Json matrix_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

template <typename T>
std::vector<T> as_list(const Json &value, const std::string &where, T (*convert)(const Json &, const std::string &)) {
    if (!value.is_array()) {
        fail(where + ": expected a list");
    }
    std::vector<T> out;
    for (const auto &item : value) {
        out.push_back(convert(item, where));
    }
    return out;
}

std::string as_string(const Json &value, const std::string &where) {
    if (!value.is_string()) {
        fail(where + ": expected a string");
    }
    return value.get<std::string>();
}

}  // namespace

QBNet parse_net(const std::string &text, bool strict) {
    Json doc = parse_json(text);
    if (!doc.is_object()) {
        fail("net file must be a JSON object");
    }
    if (strict) {
        reject_unknown(doc, {"version", "nodes"}, "net file");
    }
    if (as_int(field(doc, "version", "net file"), "version") != 1) {
        fail("unsupported net file version");
    }
    const Json &nodes = field(doc, "nodes", "net file");
    if (!nodes.is_array()) {
        fail("'nodes' must be a list");
    }
    std::vector<Node> out;
    for (std::size_t k = 0; k < nodes.size(); k++) {
        const Json &item = nodes[k];
        std::string where = "node #" + std::to_string(k + 1);
        if (!item.is_object()) {
            fail(where + ": expected an object");
        }
        if (strict) {
            reject_unknown(item, {"id", "name", "states", "parents", "matrix"}, where);
        }
        Node node;
        node.id = as_int(field(item, "id", where), where + " id");
        node.name = as_string(field(item, "name", where), where + " name");
        node.states = StateSpace(as_list<std::string>(field(item, "states", where), where + " states", as_string));
        node.parents = as_list<int>(field(item, "parents", where), where + " parents", as_int);
        node.matrix = as_matrix(field(item, "matrix", where), where + " matrix");
        out.push_back(std::move(node));
    }
    return QBNet(std::move(out));
}

static std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

QBNet read_net_file(const std::filesystem::path &path, bool strict) {
    return parse_net(read_text_file(path), strict);
}

std::string serialize_net(const QBNet &net) {
    Json doc;
    doc["version"] = 1;
    doc["nodes"] = Json::array();
    for (const auto &node : net.nodes()) {
        Json item;
        item["id"] = node.id;
        item["name"] = node.name;
        item["states"] = node.states.labels();
        item["parents"] = node.parents;
        item["matrix"] = matrix_json(node.matrix);
        doc["nodes"].push_back(std::move(item));
    }
    return doc.dump(1) + "\n";
}

UnitaryProgram parse_program(const std::string &text) {
    Json doc = parse_json(text);
    if (!doc.is_object()) {
        fail("program file must be a JSON object");
    }
    const std::string where = "program file";
    if (as_string(field(doc, "format", where), "format") != "qbc-program" ||
        as_int(field(doc, "version", where), "version") != 1) {
        fail("not a version 1 qbc program file");
    }
    UnitaryProgram program;
    std::string mode = as_string(field(doc, "mode", where), "mode");
    if (mode != "v1" && mode != "e1") {
        fail("mode must be v1 or e1");
    }
    program.mode = mode == "v1" ? InitialMode::kV1 : InitialMode::kE1;
    std::string kind = as_string(field(doc, "era_kind", where), "era_kind");
    if (kind != "root" && kind != "external") {
        fail("era_kind must be root or external");
    }
    program.era_kind = kind == "root" ? EraKind::kRootNode : EraKind::kExternalNode;
    std::string dim_mode = as_string(field(doc, "dimension_mode", where), "dimension_mode");
    if (dim_mode != "qubit" && dim_mode != "exact") {
        fail("dimension_mode must be qubit or exact");
    }
    program.dim_mode = dim_mode == "qubit" ? DimMode::kQubit : DimMode::kExact;
    program.register_dimension = as_size(field(doc, "N_S", where), "N_S");
    const Json &qubits = field(doc, "qubit_count", where);
    if (!qubits.is_null()) {
        program.qubit_count = as_int(qubits, "qubit_count");
    }

    const Json &segments = field(doc, "segments", where);
    if (!segments.is_array() || segments.empty()) {
        fail("'segments' must be a non-empty list");
    }
    for (const auto &item : segments) {
        if (!item.is_object()) {
            fail("segment: expected an object");
        }
        ProgramSegment segment;
        segment.first_era = as_int(field(item, "first_era", "segment"), "first_era");
        segment.last_era = as_int(field(item, "last_era", "segment"), "last_era");
        auto ids = as_list<int>(field(item, "row_nodes", "segment"), "row_nodes", as_int);
        auto radices = as_list<int>(field(item, "row_radices", "segment"), "row_radices", as_int);
        try {
            segment.rows.schema = IndexSchema(std::move(ids), std::move(radices));
        } catch (const std::invalid_argument &e) {
            fail(std::string("segment row schema: ") + e.what());
        }
        segment.rows.labels = as_list<std::size_t>(field(item, "row_labels", "segment"), "row_labels", as_size);
        program.segments.push_back(std::move(segment));
    }
    program.breakpoints = as_list<int>(field(doc, "breakpoints", where), "breakpoints", as_int);
    program.external_names = as_list<std::string>(field(doc, "external_nodes", where), "external_nodes", as_string);
    const Json &rows = field(doc, "external_rows", where);
    if (!rows.is_array()) {
        fail("'external_rows' must be a list");
    }
    for (const auto &row : rows) {
        program.external_rows.push_back(as_list<std::string>(row, "external_rows", as_string));
    }

    auto initial = as_list<Complex>(field(doc, "initial", where), "initial", as_complex);
    program.initial = CVector(static_cast<Eigen::Index>(initial.size()));
    for (std::size_t k = 0; k < initial.size(); k++) {
        program.initial[static_cast<Eigen::Index>(k)] = initial[k];
    }
    const Json &unitaries = field(doc, "unitaries", where);
    if (!unitaries.is_array()) {
        fail("'unitaries' must be a list");
    }
    for (const auto &u : unitaries) {
        program.unitaries.push_back(as_matrix(u, "unitary"));
    }
    return program;
}

UnitaryProgram read_program_file(const std::filesystem::path &path) {
    return parse_program(read_text_file(path));
}

std::string serialize_program(const UnitaryProgram &program) {
    Json doc;
    doc["format"] = "qbc-program";
    doc["version"] = 1;
    doc["mode"] = program.mode == InitialMode::kV1 ? "v1" : "e1";
    doc["era_kind"] = std::string(era_kind_name(program.era_kind));
    doc["dimension_mode"] = program.dim_mode == DimMode::kQubit ? "qubit" : "exact";
    doc["N_S"] = program.register_dimension;
    doc["qubit_count"] = program.qubit_count ? Json(*program.qubit_count) : Json(nullptr);
    doc["segments"] = Json::array();
    for (const auto &segment : program.segments) {
        Json item;
        item["first_era"] = segment.first_era;
        item["last_era"] = segment.last_era;
        item["row_nodes"] = segment.rows.schema.node_ids();
        item["row_radices"] = segment.rows.schema.radices();
        item["row_labels"] = segment.rows.labels;
        doc["segments"].push_back(std::move(item));
    }
    doc["breakpoints"] = program.breakpoints;
    doc["external_nodes"] = program.external_names;
    doc["external_rows"] = program.external_rows;
    doc["initial"] = Json::array();
    for (Eigen::Index k = 0; k < program.initial.size(); k++) {
        doc["initial"].push_back(complex_json(program.initial[k]));
    }
    doc["unitaries"] = Json::array();
    for (const auto &u : program.unitaries) {
        doc["unitaries"].push_back(matrix_json(u));
    }
    return doc.dump(1) + "\n";
}

}  // namespace qbc
