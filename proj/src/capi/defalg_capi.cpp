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


#include "defalg/defalg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/algebra.hpp"
#include "core/deformation.hpp"
#include "core/error.hpp"
#include "core/harness.hpp"
#include "core/minimal_length.hpp"
#include "core/serialize.hpp"

struct defalg_spin_rep {
    defalg::SpinRep rep;
};

struct defalg_report {
    nlohmann::json doc;
    bool passed = false;
};

namespace {

thread_local std::string last_error;

defalg_status status_of(defalg::ErrorCode code) {
    using defalg::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidParameter: return DEFALG_ERR_INVALID_PARAMETER;
    case ErrorCode::ResourceLimit: return DEFALG_ERR_RESOURCE_LIMIT;
    case ErrorCode::Constraint: return DEFALG_ERR_CONSTRAINT;
    case ErrorCode::NumericalConsistency: return DEFALG_ERR_NUMERICAL;
    case ErrorCode::Unsupported: return DEFALG_ERR_UNSUPPORTED;
    case ErrorCode::Precondition: return DEFALG_ERR_PRECONDITION;
    case ErrorCode::RepresentationInconsistency: return DEFALG_ERR_REPRESENTATION;
    case ErrorCode::Io: return DEFALG_ERR_IO;
    }
    return DEFALG_ERR_INTERNAL;
}

template <class F>
defalg_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return DEFALG_OK;
    } catch (const defalg::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("malformed parameters: ") + e.what();
        return DEFALG_ERR_INVALID_PARAMETER;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return DEFALG_ERR_RESOURCE_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return DEFALG_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return DEFALG_ERR_INTERNAL;
    }
}

defalg_status null_argument(const char* what) {
    last_error = std::string("null argument: ") + what;
    return DEFALG_ERR_NULL_ARGUMENT;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* defalg_version(void) { return defalg::library_version(); }

const char* defalg_last_error(void) { return last_error.c_str(); }

const char* defalg_status_name(defalg_status status) {
    switch (status) {
    case DEFALG_OK: return "ok";
    case DEFALG_ERR_INVALID_PARAMETER: return "invalid-parameter";
    case DEFALG_ERR_RESOURCE_LIMIT: return "resource-limit";
    case DEFALG_ERR_CONSTRAINT: return "constraint";
    case DEFALG_ERR_NUMERICAL: return "numerical-consistency";
    case DEFALG_ERR_UNSUPPORTED: return "unsupported";
    case DEFALG_ERR_PRECONDITION: return "precondition";
    case DEFALG_ERR_REPRESENTATION: return "representation-inconsistency";
    case DEFALG_ERR_IO: return "io";
    case DEFALG_ERR_NULL_ARGUMENT: return "null-argument";
    case DEFALG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void defalg_string_free(char* s) { std::free(s); }

defalg_status defalg_spin_rep_create(double j, defalg_spin_rep** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new defalg_spin_rep{defalg::build_spin_rep(j)}; });
}

void defalg_spin_rep_destroy(defalg_spin_rep* rep) { delete rep; }

size_t defalg_spin_rep_dim(const defalg_spin_rep* rep) {
    return rep ? static_cast<size_t>(rep->rep.dim()) : 0;
}

defalg_status defalg_spin_rep_component(const defalg_spin_rep* rep, char axis, double* re, double* im,
                                        size_t capacity) {
    if (!rep) return null_argument("rep");
    if (!re || !im) return null_argument("re/im");
    return guarded([&] {
        const defalg::HermitianOperator* op = axis == 'x'   ? &rep->rep.jx
                                              : axis == 'y' ? &rep->rep.jy
                                              : axis == 'z' ? &rep->rep.jz
                                                            : nullptr;
        if (!op) defalg::fail(defalg::ErrorCode::InvalidParameter, "axis must be 'x', 'y' or 'z'");
        const auto n = static_cast<size_t>(op->n());
        if (capacity < n * n)
            defalg::fail(defalg::ErrorCode::InvalidParameter,
                         "buffer holds " + std::to_string(capacity) + " entries, need " + std::to_string(n * n));
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                const auto v = op->matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                re[r * n + c] = v.real();
                im[r * n + c] = v.imag();
            }
    });
}

defalg_status defalg_spin_rep_to_json(const defalg_spin_rep* rep, char** out) {
    if (!rep) return null_argument("rep");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        std::string s = "{\"dim\":" + std::to_string(rep->rep.dim()) +
                        ",\"j\":" + defalg::format_double(rep->rep.j.value()) +
                        ",\"jx\":" + defalg::matrix_to_json(rep->rep.jx.matrix()) +
                        ",\"jy\":" + defalg::matrix_to_json(rep->rep.jy.matrix()) +
                        ",\"jz\":" + defalg::matrix_to_json(rep->rep.jz.matrix()) + "}";
        *out = copy_string(s);
    });
}

defalg_status defalg_oscillator_level(double j, double n, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        const defalg::Spin s = defalg::Spin::from_double(j);
        if (!(n >= 0.0) || n > s.value() || n != std::floor(n))
            defalg::fail(defalg::ErrorCode::InvalidParameter, "n must be an integer in [0, j]");
        *out = defalg::oscillator_level(s, n);
    });
}

defalg_status defalg_minimal_length(const char* family, double parameter, double c, double* out) {
    if (!family) return null_argument("family");
    if (!out) return null_argument("out");
    return guarded([&] {
        const defalg::Family f = defalg::family_from_string(family);
        const defalg::DeformationSpec spec =
            f == defalg::Family::Trig    ? defalg::DeformationSpec::trig(parameter, c)
            : f == defalg::Family::Hyper ? defalg::DeformationSpec::hyper(parameter, c)
            : f == defalg::Family::Flat  ? defalg::DeformationSpec::flat(c)
                                         : (defalg::fail(defalg::ErrorCode::Unsupported,
                                                         "tabulated functions are loaded through defalg_run"),
                                            defalg::DeformationSpec::flat(c));
        *out = defalg::minimal_length_quadrature(spec);
    });
}

defalg_status defalg_run(const char* command, const char* params_json, const double* tolerance,
                         defalg_report** out) {
    if (!command) return null_argument("command");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const nlohmann::json params =
            params_json && *params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        std::optional<double> tol;
        if (tolerance) tol = *tolerance;
        defalg::RunOutcome r = defalg::run_command(command, params, tol);
        *out = new defalg_report{std::move(r.report), r.passed};
    });
}

int defalg_report_passed(const defalg_report* report) { return report && report->passed ? 1 : 0; }

defalg_status defalg_report_serialize(const defalg_report* report, const char* format, char** out) {
    if (!report) return null_argument("report");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const std::string f = format ? format : "json";
        if (f == "json") *out = copy_string(defalg::to_json_text(report->doc));
        else if (f == "csv") *out = copy_string(defalg::to_csv_text(report->doc));
        else defalg::fail(defalg::ErrorCode::InvalidParameter, "format must be 'json' or 'csv'");
    });
}

void defalg_report_destroy(defalg_report* report) { delete report; }

size_t defalg_command_count(void) { return defalg::command_names().size(); }

const char* defalg_command_name(size_t i) {
    const auto& names = defalg::command_names();
    return i < names.size() ? names[i].c_str() : nullptr;
}

const char* defalg_command_key(const char* command, size_t i) {
    if (!command) return nullptr;
    try {
        const auto& keys = defalg::command_keys(command);
        return i < keys.size() ? keys[i].c_str() : nullptr;
    } catch (...) {
        return nullptr;
    }
}

} // extern "C"
