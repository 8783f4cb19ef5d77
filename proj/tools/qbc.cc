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

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbc/errors.h"
#include "qbc/io.h"
#include "qbc/report.h"
#include "qbc/unitary_synthesis.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCompile = 4;

int exit_code_for(qbc::Stage stage) {
    switch (stage) {
        case qbc::Stage::kParse:
            return kExitParse;
        case qbc::Stage::kValidation:
            return kExitValidation;
        default:
            return kExitCompile;
    }
}

qbc::EraKind parse_era_kind(const std::string &text) {
    return text == "external" ? qbc::EraKind::kExternalNode : qbc::EraKind::kRootNode;
}

qbc::QBNet load_valid_net(const std::string &path) {
    qbc::QBNet net = qbc::read_net_file(path);
    qbc::ValidationReport report = qbc::validate_net(net);
    if (!report.ok()) {
        throw qbc::Error(qbc::Stage::kValidation, path + ":\n" + report.str());
    }
    return net;
}

struct CompileArgs {
    std::string net_path;
    std::string out_path;
    std::string eras = "root";
    std::vector<std::string> measure;
    std::string mode = "v1";
    bool exact_dim = false;
    double tol = 1e-9;
};

int run_compile(const CompileArgs &args) {
    qbc::QBNet net = load_valid_net(args.net_path);
    qbc::CompileOptions options;
    options.era_kind = parse_era_kind(args.eras);
    options.mode = args.mode == "e1" ? qbc::InitialMode::kE1 : qbc::InitialMode::kV1;
    options.dim_mode = args.exact_dim ? qbc::DimMode::kExact : qbc::DimMode::kQubit;
    options.tolerances.isometry = args.tol;
    for (const std::string &name : args.measure) {
        int id = net.id_of(name);
        if (id < 0) {
            throw qbc::Error(qbc::Stage::kValidation, "--measure: no node named '" + name + "'");
        }
        options.breakpoints.measured_nodes.insert(id);
    }
    qbc::Compilation compilation = qbc::compile(net, options);
    std::cout << qbc::format_compilation(net, compilation);
    qbc::write_text_file(args.out_path, qbc::serialize_program(compilation.program));
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

int run_verify(const std::string &net_path, const std::string &program_path, double tol) {
    qbc::QBNet net = load_valid_net(net_path);
    qbc::UnitaryProgram program = qbc::read_program_file(program_path);
    qbc::VerificationReport report = qbc::verify_program(program, net);
    std::cout << qbc::format_verification(report, tol);
    return report.passed(tol) ? 0 : kExitVerifyFailed;
}

int run_eras(const std::string &net_path, const std::string &eras, const std::string &dot_path) {
    qbc::QBNet net = load_valid_net(net_path);
    qbc::EraDecomposition decomposition = qbc::compute_eras(net, parse_era_kind(eras));
    std::cout << qbc::format_era_table(net, decomposition);
    if (!dot_path.empty()) {
        qbc::write_text_file(dot_path, qbc::to_dot(net, decomposition));
        std::cout << "wrote " << dot_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qbc: compile a quantum Bayesian net into a product of unitary matrices"};
    app.require_subcommand(1);

    CompileArgs compile_args;
    auto *compile = app.add_subcommand("compile", "compile a net file into a program file");
    compile->add_option("net-file", compile_args.net_path, "input net file")->required();
    compile->add_option("-o,--output", compile_args.out_path, "output program file")->required();
    compile->add_option("--eras", compile_args.eras, "era kind")->check(CLI::IsMember({"root", "external"}));
    compile->add_option("--measure", compile_args.measure, "names of nodes measured mid-circuit")->delimiter(',');
    compile->add_option("--mode", compile_args.mode, "initial vector mode")->check(CLI::IsMember({"v1", "e1"}));
    compile->add_flag("--exact-dim", compile_args.exact_dim, "use N_S = D instead of a power of two");
    compile->add_option("--tol", compile_args.tol, "isometry tolerance")->check(CLI::PositiveNumber);

    std::string verify_net, verify_program;
    double verify_tol = 1e-9;
    auto *verify = app.add_subcommand("verify", "check a program file against its net");
    verify->add_option("net-file", verify_net, "net file")->required();
    verify->add_option("program-file", verify_program, "program file")->required();
    verify->add_option("--tol", verify_tol, "residual tolerance")->check(CLI::PositiveNumber);

    std::string eras_net, eras_kind = "root", dot_path;
    auto *eras = app.add_subcommand("eras", "print the era decomposition of a net");
    eras->add_option("net-file", eras_net, "net file")->required();
    eras->add_option("--eras", eras_kind, "era kind")->check(CLI::IsMember({"root", "external"}));
    eras->add_option("--dot", dot_path, "write a Graphviz file clustered by era");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (compile->parsed()) {
            return run_compile(compile_args);
        }
        if (verify->parsed()) {
            return run_verify(verify_net, verify_program, verify_tol);
        }
        return run_eras(eras_net, eras_kind, dot_path);
    } catch (const qbc::Error &e) {
        std::cerr << "qbc: " << e.what() << "\n";
        return exit_code_for(e.stage());
    } catch (const std::exception &e) {
        std::cerr << "qbc: " << e.what() << "\n";
        return kExitCompile;
    }
}
