/*
 * Copyright 2026 The defalg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "defalg/defalg.h"

namespace {

const std::map<std::string, std::string> kAbout = {
    {"spectrum-oscillator", "Deformed oscillator levels: closed form against the spin-j matrix"},
    {"spectrum-position", "Position-operator eigenvalues on a momentum grid"},
    {"minimal-length", "Minimal length from the quadrature and the Dirichlet variational problem"},
    {"verify-algebra", "su(2), deformed-triple and square-root relation residuals"},
    {"closure-fit", "Least-squares closure coefficients of ff' = alpha + beta p + gamma f"},
    {"expansion-check", "Inhomogeneous rotation relations and their expansion to so(2,1)/so(3)"},
    {"contraction-study", "Approach of the deformed oscillator to n + 1/2 as j grows"},
};

const std::map<std::string, std::string> kKeyHelp = {
    {"j", "spin label (1/2, 1, 7/2, ...); comma list sweeps"},
    {"lambda", "deformation scale"},
    {"beta", "quadratic coefficient of f^2 = c + beta p^2"},
    {"c", "integration constant c > 0 (default 1)"},
    {"N", "grid size"},
    {"L", "half-width of the truncated xi or p domain"},
    {"bc", "periodic | antiperiodic"},
    {"epsilon", "+1 or -1"},
    {"n-max", "largest oscillator level n"},
    {"j-list", "comma list of spin labels"},
    {"family", "trig | hyper | flat | tabulated"},
    {"ratio", "lambda1 / lambda2 under the constraint (default 1)"},
    {"file", "two-column (p f) table"},
    {"samples", "closure-fit sample count (default 200)"},
};

int usage_error(const std::string& msg) {
    std::cerr << "defalg: " << msg << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deformed Heisenberg algebra laboratory"};
    app.set_version_flag("--version", std::string(defalg_version()));
    app.require_subcommand(1);

    std::string params_json, format = "json", output;
    std::optional<double> tolerance;
    std::map<std::string, std::map<std::string, std::string>> values;

    for (size_t i = 0; i < defalg_command_count(); ++i) {
        const std::string name = defalg_command_name(i);
        auto about = kAbout.find(name);
        CLI::App* sub = app.add_subcommand(name, about == kAbout.end() ? "" : about->second);
        for (size_t k = 0; const char* key = defalg_command_key(name.c_str(), k); ++k) {
            auto help = kKeyHelp.find(key);
            sub->add_option(std::string("--") + key, values[name][key],
                            help == kKeyHelp.end() ? "" : help->second);
        }
        sub->add_option("--params-json", params_json,
                        "JSON object or array of objects; @PATH reads a file");
        sub->add_option("--tolerance", tolerance, "replace the primary tolerance");
        sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", output, "write the report to PATH instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    nlohmann::json params = nlohmann::json::object();
    if (!params_json.empty()) {
        std::string text = params_json;
        if (text.front() == '@') {
            std::ifstream in(text.substr(1));
            if (!in) return usage_error("cannot read " + text.substr(1));
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        try {
            params = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            return usage_error(std::string("--params-json is not valid JSON: ") + e.what());
        }
    }
    for (const auto& [key, value] : values[command]) {
        if (value.empty()) continue;
        if (!params.is_object()) return usage_error("flags cannot be combined with a --params-json array");
        params[key] = value;
    }

    defalg_report* report = nullptr;
    const double tol = tolerance.value_or(0.0);
    const std::string text = params.dump();
    const defalg_status st = defalg_run(command.c_str(), text.c_str(), tolerance ? &tol : nullptr, &report);
    if (st != DEFALG_OK) return usage_error(std::string(defalg_status_name(st)) + ": " + defalg_last_error());

    char* body = nullptr;
    const defalg_status ss = defalg_report_serialize(report, format.c_str(), &body);
    const bool passed = defalg_report_passed(report) != 0;
    defalg_report_destroy(report);
    if (ss != DEFALG_OK) return usage_error(defalg_last_error());

    int exit_code = passed ? 0 : 2;
    if (output.empty()) {
        std::fputs(body, stdout);
        std::fflush(stdout);
    } else {
        std::ofstream out(output, std::ios::binary);
        out << body;
        out.close();
        if (!out) exit_code = usage_error("cannot write " + output);
    }
    defalg_string_free(body);
    if (exit_code == 2) std::cerr << "defalg: " << command << ": one or more checks failed\n";
    return exit_code;
}
