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


#include "core/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace defalg {
namespace {

void emit(const nlohmann::json& v, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    switch (v.type()) {
    case nlohmann::json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + nlohmann::json(it.key()).dump() + ": ";
            emit(it.value(), depth + 1, out);
        }
        out += "\n" + close + "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& e : v) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            emit(e, depth + 1, out);
        }
        out += "\n" + close + "]";
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double d = v.get<double>();
        out += std::isfinite(d) ? format_double(d) : "null";
        return;
    }
    default: out += v.dump(); return;
    }
}

std::string cell(const nlohmann::json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_string()) return v.get<std::string>();
    return "";
}

} // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_json_text(const nlohmann::json& doc) {
    std::string out;
    emit(doc, 0, out);
    out += "\n";
    return out;
}

std::string to_csv_text(const nlohmann::json& report) {
    const nlohmann::json empty = nlohmann::json::array();
    const nlohmann::json& results = report.contains("results") ? report["results"] : empty;
    bool with_j = false;
    for (const auto& r : results)
        for (const auto& row : r.value("rows", empty))
            if (row.contains("j")) with_j = true;
    const bool with_point = results.size() > 1;

    std::string out;
    if (with_point) out += "point,";
    if (with_j) out += "j,";
    out += "index,computed,reference,deviation\n";
    for (std::size_t p = 0; p < results.size(); ++p) {
        for (const auto& row : results[p].value("rows", empty)) {
            if (with_point) out += std::to_string(p) + ",";
            if (with_j) out += cell(row.value("j", nlohmann::json())) + ",";
            out += cell(row.value("index", nlohmann::json())) + "," +
                   cell(row.value("computed", nlohmann::json())) + "," +
                   cell(row.value("reference", nlohmann::json())) + "," +
                   cell(row.value("deviation", nlohmann::json())) + "\n";
        }
    }
    return out;
}

} // namespace defalg
