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


#include "core/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "core/algebra.hpp"
#include "core/error.hpp"
#include "core/grid.hpp"
#include "core/linearizer.hpp"
#include "core/minimal_length.hpp"

#ifndef DEFALG_VERSION_STRING
#define DEFALG_VERSION_STRING "0.0.0"
#endif

namespace defalg {

using nlohmann::json;

namespace {

enum class Kind { Real, Int, Text, RealList };

const std::map<std::string, Kind>& key_kinds() {
    static const std::map<std::string, Kind> kinds = {
        {"L", Kind::Real},       {"N", Kind::Int},        {"bc", Kind::Text},
        {"beta", Kind::Real},    {"c", Kind::Real},       {"epsilon", Kind::Int},
        {"family", Kind::Text},  {"file", Kind::Text},    {"j", Kind::Real},
        {"j-list", Kind::RealList}, {"lambda", Kind::Real}, {"n-max", Kind::Int},
        {"ratio", Kind::Real},   {"samples", Kind::Int},
    };
    return kinds;
}

const std::map<std::string, std::vector<std::string>>& command_table() {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"spectrum-oscillator", {"j"}},
        {"spectrum-position", {"L", "N", "bc", "beta", "c", "family", "lambda"}},
        {"minimal-length", {"N", "beta", "c", "family", "file", "lambda"}},
        {"verify-algebra", {"j", "ratio"}},
        {"closure-fit", {"beta", "c", "family", "file", "lambda", "samples"}},
        {"expansion-check", {"L", "N", "beta", "c", "epsilon", "family", "lambda"}},
        {"contraction-study", {"j-list", "n-max"}},
    };
    return table;
}

[[noreturn]] void usage(const std::string& msg) { fail(ErrorCode::InvalidParameter, msg); }

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

/// Decimal, or a fraction p/q (spin labels such as 7/2).
double parse_real(const std::string& key, const std::string& text) {
    auto number = [&](const std::string& t) {
        double v = 0.0;
        const char* first = t.data();
        const char* last = t.data() + t.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (t.empty() || ec != std::errc() || ptr != last)
            usage("parameter '" + key + "': '" + text + "' is not a number");
        return v;
    };
    const auto slash = text.find('/');
    const double v = slash == std::string::npos
                         ? number(text)
                         : number(text.substr(0, slash)) / number(text.substr(slash + 1));
    if (!std::isfinite(v)) usage("parameter '" + key + "' must be finite");
    return v;
}

json typed_value(const std::string& key, Kind kind, const json& raw) {
    auto as_text = [&](const json& v) -> std::string {
        if (v.is_string()) return trim(v.get<std::string>());
        if (v.is_number()) return v.dump();
        usage("parameter '" + key + "' has an unsupported JSON type");
    };
    switch (kind) {
    case Kind::Real: return parse_real(key, as_text(raw));
    case Kind::Int: {
        const double v = parse_real(key, as_text(raw));
        if (v != std::floor(v) || std::abs(v) > 1e9) usage("parameter '" + key + "' must be an integer");
        return static_cast<long long>(v);
    }
    case Kind::Text: {
        if (!raw.is_string()) usage("parameter '" + key + "' must be a string");
        return trim(raw.get<std::string>());
    }
    case Kind::RealList: {
        json list = json::array();
        if (raw.is_array()) {
            for (const auto& e : raw) list.push_back(parse_real(key, as_text(e)));
        } else {
            for (const auto& s : split(as_text(raw))) list.push_back(parse_real(key, s));
        }
        if (list.empty()) usage("parameter '" + key + "' needs at least one value");
        return list;
    }
    }
    return {};
}

std::vector<json> expand_object(const std::string& command, const json& obj) {
    if (!obj.is_object()) usage("parameters must be a JSON object or an array of objects");
    const auto& allowed = command_keys(command);
    std::vector<std::pair<std::string, std::vector<json>>> axes;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto kind = key_kinds().find(it.key());
        if (kind == key_kinds().end()) usage("unknown parameter '" + it.key() + "'");
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            usage("parameter '" + it.key() + "' is not accepted by " + command);
        std::vector<json> values;
        if (kind->second == Kind::RealList) {
            values.push_back(typed_value(it.key(), kind->second, it.value()));
        } else if (it.value().is_array()) {
            for (const auto& e : it.value()) values.push_back(typed_value(it.key(), kind->second, e));
        } else if (it.value().is_string() && it.value().get<std::string>().find(',') != std::string::npos) {
            for (const auto& s : split(it.value().get<std::string>()))
                values.push_back(typed_value(it.key(), kind->second, json(s)));
        } else {
            values.push_back(typed_value(it.key(), kind->second, it.value()));
        }
        if (values.empty()) usage("parameter '" + it.key() + "' has an empty sweep");
        axes.emplace_back(it.key(), std::move(values));
    }
    std::vector<json> points{json::object()};
    for (const auto& [key, values] : axes) {
        std::vector<json> next;
        for (const auto& p : points)
            for (const auto& v : values) {
                json q = p;
                q[key] = v;
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

// -- per-command evaluation ------------------------------------------------

using Tolerances = std::map<std::string, double>;

struct Spec {
    Tolerances tolerances;
    std::string primary;
};

Spec command_tolerances(const std::string& command) {
    if (command == "spectrum-oscillator") return {{{"spectrum", 1e-10}, {"cluster", 1e-9}}, "spectrum"};
    if (command == "spectrum-position") return {{{"spectrum", 1e-10}, {"overlap", 1e-10}}, "spectrum"};
    if (command == "minimal-length")
        return {{{"quadrature", 1e-10}, {"dirichlet", 1e-3}, {"ratio_low", 0.2}, {"ratio_high", 0.3}},
                "quadrature"};
    if (command == "verify-algebra")
        return {{{"su2_per_dim", 1e-12}, {"triple_per_dim", 1e-12}, {"nonlinear_per_dim", 1e-10},
                 {"unprojected_floor", 1e-3}},
                "nonlinear_per_dim"};
    if (command == "closure-fit")
        return {{{"evenness", 1e-8}, {"residual", 1e-10}, {"round_trip", 1e-8}}, "residual"};
    if (command == "expansion-check") return {{{"relation", 1e-8}, {"casimir", 1e-10}}, "relation"};
    return {{{"bound_factor", 1.0}}, "bound_factor"};
}

struct Checks {
    json list = json::array();
    bool all = true;
    void add(const std::string& name, double value, const std::string& cmp, double limit, bool pass) {
        list.push_back({{"name", name}, {"value", value}, {"comparison", cmp}, {"limit", limit}, {"pass", pass}});
        all = all && pass;
    }
    void at_most(const std::string& name, double value, double limit) {
        add(name, value, "<=", limit, value <= limit);
    }
    void at_least(const std::string& name, double value, double limit) {
        add(name, value, ">=", limit, value >= limit);
    }
    void flag(const std::string& name, bool pass) {
        list.push_back({{"name", name}, {"pass", pass}});
        all = all && pass;
    }
};

double get_real(const json& p, const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (p.contains(key)) return p[key].get<double>();
    if (!fallback) usage("missing required parameter '" + key + "'");
    return *fallback;
}

int get_int(const json& p, const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (p.contains(key)) return static_cast<int>(p[key].get<long long>());
    if (!fallback) usage("missing required parameter '" + key + "'");
    return *fallback;
}

std::string get_text(const json& p, const std::string& key, const std::string& fallback) {
    return p.contains(key) ? p[key].get<std::string>() : fallback;
}

json vec(const std::vector<double>& v) { return json(v); }

/// Parametric spec from family / lambda / beta / c.
DeformationSpec parametric_spec(const json& p, const std::string& default_family,
                                std::optional<double> default_lambda = std::nullopt) {
    const Family fam = family_from_string(get_text(p, "family", default_family));
    const double c = get_real(p, "c", 1.0);
    switch (fam) {
    case Family::Trig: {
        if (p.contains("beta") && !p.contains("lambda")) {
            const double beta = get_real(p, "beta");
            if (!(beta < 0.0)) usage("the trig family needs beta < 0");
            return DeformationSpec::trig(std::sqrt(-beta), c);
        }
        return DeformationSpec::trig(get_real(p, "lambda", default_lambda), c);
    }
    case Family::Hyper: {
        if (p.contains("lambda") && !p.contains("beta")) {
            const double l = get_real(p, "lambda");
            return DeformationSpec::hyper(l * l, c);
        }
        if (!p.contains("beta") && default_lambda) return DeformationSpec::hyper(*default_lambda * *default_lambda, c);
        return DeformationSpec::hyper(get_real(p, "beta"), c);
    }
    case Family::Flat: return DeformationSpec::flat(c);
    case Family::Tabulated: {
        if (!p.contains("file")) usage("the tabulated family needs 'file'");
        return load_tabulated(p["file"].get<std::string>());
    }
    }
    usage("unknown family");
}

json spectrum_json(const SpectrumReport& r) {
    return {{"computed", vec(r.computed)},   {"reference", vec(r.reference)}, {"labels", r.labels},
            {"matched", vec(r.matched)},     {"deviations", vec(r.deviations)}, {"max_dev", r.max_dev},
            {"context", r.context}};
}

json run_oscillator(const json& p, const Tolerances& tol, Checks& checks) {
    const Spin j = Spin::from_double(get_real(p, "j"));
    const SpectrumReport analytic = oscillator_spectrum_analytic(j);
    const LambdaPair lp = constrained_lambdas(j, 1.0);
    const DeformedTriple t = build_deformed_triple(build_spin_rep(j.value()), lp.lambda1, lp.lambda2);
    const SpectrumReport matrix = oscillator_spectrum_matrix(t);
    const std::vector<Level> levels = degeneracy_pattern(matrix.computed, tol.at("cluster"));

    checks.at_most("analytic n-form vs m-form", analytic.max_dev, tol.at("spectrum"));
    checks.at_most("matrix vs analytic multiset", matrix.max_dev, tol.at("spectrum"));
    // Expected: one level per n = 0..floor(j), twice degenerate unless m = 0.
    bool pattern = levels.size() == analytic.computed.size();
    json degeneracy = json::array();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        degeneracy.push_back({{"value", levels[k].value}, {"multiplicity", levels[k].multiplicity}});
        if (!pattern) continue;
        const double m = j.value() - static_cast<double>(k);
        const int expected = m > 0.0 ? 2 : 1;
        pattern = levels[k].multiplicity == expected &&
                  std::abs(levels[k].value - analytic.computed[k]) <= tol.at("spectrum");
    }
    checks.flag("degeneracy pattern (2 per m > 0, 1 for m = 0)", pattern);

    json rows = json::array();
    for (std::size_t k = 0; k < matrix.computed.size(); ++k)
        rows.push_back({{"index", static_cast<long long>(k)},
                        {"computed", matrix.matched[k]},
                        {"reference", matrix.reference[k]},
                        {"deviation", matrix.deviations[k]}});
    return {{"j", j.value()},
            {"lambda", lp.lambda1},
            {"analytic", spectrum_json(analytic)},
            {"matrix", spectrum_json(matrix)},
            {"degeneracy", degeneracy},
            {"rows", rows}};
}

json run_position(const json& p, const Tolerances& tol, Checks& checks) {
    const DeformationSpec spec = parametric_spec(p, "trig");
    std::optional<double> half_width;
    if (p.contains("L")) half_width = get_real(p, "L");
    const GridRep g = build_grid(spec, get_int(p, "N"), half_width,
                                 boundary_from_string(get_text(p, "bc", "periodic")));
    const PositionSpectrum ps = position_spectrum(g);
    checks.at_most("eigenvalues vs reference levels", ps.report.max_dev, tol.at("spectrum"));
    checks.at_least("eigenvector overlap", ps.min_overlap, 1.0 - tol.at("overlap"));

    std::vector<std::size_t> order(ps.report.reference.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = ps.report.reference[a], rb = ps.report.reference[b];
        if (std::abs(std::abs(ra) - std::abs(rb)) > 1e-9 * std::max(1.0, std::abs(ra))) return std::abs(ra) < std::abs(rb);
        return ra > rb;
    });
    json rows = json::array();
    for (std::size_t k : order)
        rows.push_back({{"index", ps.report.labels[k]},
                        {"computed", ps.report.matched[k]},
                        {"reference", ps.report.reference[k]},
                        {"deviation", ps.report.deviations[k]}});
    json out = spectrum_json(ps.report);
    out["overlaps"] = vec(ps.overlaps);
    out["min_overlap"] = ps.min_overlap;
    out["rows"] = rows;
    return out;
}

json run_minimal_length(const json& p, const Tolerances& tol, Checks& checks) {
    const bool tabulated = p.contains("file");
    if (tabulated && p.contains("family") && p["family"] != "tabulated")
        usage("'file' selects the tabulated family");
    const DeformationSpec spec = tabulated ? load_tabulated(p["file"].get<std::string>())
                                           : parametric_spec(p, "trig");
    const double l0 = minimal_length_quadrature(spec);
    json out = {{"l0", l0}, {"family", to_string(spec.family())}};
    json rows = json::array();
    if (!tabulated) {
        const double exact = minimal_length_analytic(spec);
        out["analytic_l0"] = exact;
        if (exact == 0.0) {
            checks.add("l0 vanishes for an unbounded momentum", l0, "==", 0.0, l0 == 0.0);
        } else {
            checks.at_most("|l0 - closed form|", std::abs(l0 - exact), tol.at("quadrature"));
        }
        rows.push_back({{"index", 0}, {"computed", l0}, {"reference", exact}, {"deviation", std::abs(l0 - exact)}});
    }
    if (p.contains("N")) {
        if (spec.family() != Family::Trig)
            fail(ErrorCode::Unsupported, "the Dirichlet variational check needs the trig family");
        const int n = get_int(p, "N");
        const double exact = minimal_length_analytic(spec);
        const UncertaintyReport a = dirichlet_min_uncertainty(spec, n);
        const UncertaintyReport b = dirichlet_min_uncertainty(spec, 2 * n);
        const double ea = std::abs(a.min_uncertainty - exact), eb = std::abs(b.min_uncertainty - exact);
        const double ratio = ea > 0.0 ? eb / ea : 0.0;
        checks.at_most("|Dirichlet minimum - l0| at N", ea, tol.at("dirichlet"));
        checks.add("error ratio err(2N)/err(N)", ratio, "in", tol.at("ratio_low"),
                   ratio >= tol.at("ratio_low") && ratio <= tol.at("ratio_high"));
        checks.flag("golden-section search converged", a.converged && b.converged);
        auto rep = [](const UncertaintyReport& u) {
            return json{{"N", u.n},
                        {"min_uncertainty", u.min_uncertainty},
                        {"shift", u.shift},
                        {"iterations", u.iterations},
                        {"converged", u.converged}};
        };
        out["dirichlet"] = {{"at_N", rep(a)}, {"at_2N", rep(b)}, {"error_ratio", ratio}};
        rows.push_back({{"index", 1}, {"computed", a.min_uncertainty}, {"reference", exact}, {"deviation", ea}});
        rows.push_back({{"index", 2}, {"computed", b.min_uncertainty}, {"reference", exact}, {"deviation", eb}});
    }
    out["rows"] = rows;
    return out;
}

json run_verify_algebra(const json& p, const Tolerances& tol, Checks& checks) {
    const Spin j = Spin::from_double(get_real(p, "j"));
    const double ratio = get_real(p, "ratio", 1.0);
    if (!(ratio > 0.0)) usage("ratio must be positive");
    const SpinRep rep = build_spin_rep(j.value());
    const double dim = static_cast<double>(rep.dim());
    const Su2Residuals su2 = su2_residuals(rep);
    const LambdaPair lp = constrained_lambdas(j, ratio);
    const DeformedTriple t = build_deformed_triple(rep, lp.lambda1, lp.lambda2);
    const TripleResiduals tr = triple_residuals(t);
    const double projected = verify_nonlinear_relation(t, true);
    const double positive = verify_nonlinear_relation(t, false);
    const double full = nonlinear_relation_residual(t, Sector::Full);

    checks.at_most("su(2) commutators and Casimir", su2.worst(), tol.at("su2_per_dim") * dim);
    checks.at_most("deformed triple commutators", tr.worst(), tol.at("triple_per_dim") * dim);
    checks.at_most("square-root relation on m >= 0", projected, tol.at("nonlinear_per_dim") * dim);
    if (j.value() >= 1.0) checks.add("square-root relation on the full space", full, ">", tol.at("unprojected_floor"),
                                     full > tol.at("unprojected_floor"));

    const std::vector<std::pair<const char*, double>> items = {
        {"su2_xy", su2.xy},   {"su2_zx", su2.zx},   {"su2_yz", su2.yz},       {"su2_casimir", su2.casimir},
        {"triple_xp", tr.xp}, {"triple_xf", tr.xf}, {"triple_pf", tr.pf},     {"nonlinear_m_nonneg", projected},
        {"nonlinear_m_pos", positive}, {"nonlinear_full", full}};
    json rows = json::array();
    json residuals = json::object();
    for (std::size_t k = 0; k < items.size(); ++k) {
        residuals[items[k].first] = items[k].second;
        rows.push_back({{"index", static_cast<long long>(k)},
                        {"computed", items[k].second},
                        {"reference", 0.0},
                        {"deviation", items[k].second}});
    }
    return {{"j", j.value()},
            {"dim", rep.dim()},
            {"lambda1", lp.lambda1},
            {"lambda2", lp.lambda2},
            {"residuals", residuals},
            {"rows", rows}};
}

json run_closure(const json& p, const Tolerances& tol, Checks& checks) {
    const int samples = get_int(p, "samples", 200);
    std::optional<DeformationSpec> spec;
    std::string route;
    if (p.contains("file")) {
        if (p.contains("family") && p["family"] != "tabulated") usage("'file' selects the tabulated family");
        spec = load_tabulated(p["file"].get<std::string>());
        route = "tabulated";
    } else if (!p.contains("family")) {
        if (!p.contains("beta")) usage("closure-fit needs 'beta' (ODE route), 'family' or 'file'");
        spec = solve_closure_ode(get_real(p, "beta"), get_real(p, "c", 1.0));
        route = "ode";
    } else {
        spec = parametric_spec(p, "trig");
        route = "parametric";
    }
    const ClosureFit fit = fit_closure_coefficients(*spec, samples);
    const bool parametric = spec->family() != Family::Tabulated;

    checks.at_most("|alpha| (evenness)", std::abs(fit.alpha), tol.at("evenness"));
    checks.at_most("|gamma| (evenness)", std::abs(fit.gamma), tol.at("evenness"));
    if (parametric) {
        checks.at_most("fit residual inside the closed family", fit.residual, tol.at("residual"));
        checks.at_most("|fitted beta - beta|", std::abs(fit.beta - spec->beta()), tol.at("round_trip"));
    }
    json out = {{"route", route},
                {"family", to_string(spec->family())},
                {"alpha", fit.alpha},
                {"beta", fit.beta},
                {"gamma", fit.gamma},
                {"residual", fit.residual},
                {"rank", fit.rank},
                {"reduced_basis", fit.reduced_basis},
                {"diagnostic", fit.diagnostic},
                {"samples", fit.grid.size()},
                {"closed", fit.residual <= tol.at("residual")},
                {"f_at_0", spec->f(0.0)}};
    out["domain_bound"] = std::isfinite(spec->bound()) ? json(spec->bound()) : json(nullptr);
    if (route == "ode") {
        out["ode_residual"] = closure_ode_residual(*spec, spec->beta());
        if (!std::isfinite(spec->bound()) || spec->bound() > 1.0) out["f_at_1"] = spec->f(1.0);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double ref[3] = {0.0, parametric ? spec->beta() : nan, 0.0};
    const double got[3] = {fit.alpha, fit.beta, fit.gamma};
    json rows = json::array();
    for (int k = 0; k < 3; ++k)
        rows.push_back({{"index", k},
                        {"computed", got[k]},
                        {"reference", ref[k]},
                        {"deviation", std::isfinite(ref[k]) ? std::abs(got[k] - ref[k]) : nan}});
    out["rows"] = rows;
    return out;
}

json residual_json(const std::vector<RelationResidual>& v) {
    json out = json::array();
    for (const auto& r : v)
        out.push_back({{"relation", r.relation}, {"state", r.state}, {"residual", r.residual},
                       {"tolerance", r.tolerance}, {"pass", r.pass}});
    return out;
}

json run_expansion(const json& p, const Tolerances& tol, Checks& checks) {
    const std::string family = get_text(p, "family", "trig");
    const bool hyper = family == "hyper";
    if (!hyper && family != "trig") usage("expansion-check needs the trig or hyper family");
    const DeformationSpec spec = parametric_spec(p, family, hyper ? 0.5 : 1.0);
    const int n = get_int(p, "N", hyper ? 512 : 128);
    const int epsilon = get_int(p, "epsilon", 1);
    const GridRep g = hyper ? build_grid(spec, n, get_real(p, "L", 20.0))
                            : build_grid(spec, n, std::nullopt, Boundary::Periodic, ThetaSpan::Full);
    const std::vector<TestState> states = default_states(g);
    const double rtol = tol.at("relation");

    const auto iso = verify_iso_relations(g, states, rtol);
    const ExpansionSet e = build_expansion(g, epsilon);
    const ExpansionReport rep = verify_expansion_relations(e, states, rtol);

    double iso_worst = 0.0, exp_worst = 0.0;
    for (const auto& r : iso) iso_worst = std::max(iso_worst, r.residual);
    for (const auto& r : rep.relations) exp_worst = std::max(exp_worst, r.residual);
    checks.at_most("inhomogeneous rotation relations (worst state)", iso_worst, rtol);
    checks.at_most("expansion relations (worst state)", exp_worst, rtol);
    const double expected_c2 = g.c / (g.lambda * g.lambda);
    checks.at_most("|C2 - c/lambda^2|", std::abs(e.casimir_value - expected_c2), tol.at("casimir"));
    json k_rows = json::array();
    if (!hyper) {
        const auto k = theta_casimir_residuals(g, states, tol.at("casimir"));
        double worst = 0.0;
        for (const auto& r : k) worst = std::max(worst, r.residual);
        checks.at_most("K = P^2 + F^2/lambda^2 scalar", worst, tol.at("casimir"));
        k_rows = residual_json(k);
    }
    const HermiticityFlags expected = expected_hermiticity(e.beta_sign, epsilon);
    checks.flag("hermiticity flags match the epsilon-sign table", e.flags == expected);

    auto flags_json = [](const HermiticityFlags& f) {
        return json{{"At1", f.a1}, {"At2", f.a2}, {"At3", f.a3}};
    };
    json cas = json::array();
    for (const auto& [state, value] : rep.casimir_values) cas.push_back({{"state", state}, {"value", value}});
    json rows = json::array();
    long long idx = 0;
    for (const auto* list : {&iso, &rep.relations})
        for (const auto& r : *list)
            rows.push_back({{"index", idx++}, {"computed", r.residual}, {"reference", 0.0}, {"deviation", r.residual}});
    return {{"family", family},
            {"beta_sign", e.beta_sign},
            {"epsilon", epsilon},
            {"lambda", g.lambda},
            {"N", g.n},
            {"domain", {g.lo, g.hi}},
            {"casimir_value", e.casimir_value},
            {"scale", {e.scale.real(), e.scale.imag()}},
            {"hermitian_observed", flags_json(e.flags)},
            {"hermitian_expected", flags_json(expected)},
            {"iso_relations", residual_json(iso)},
            {"expansion_relations", residual_json(rep.relations)},
            {"literal_forms", residual_json(rep.literal)},
            {"expansion_casimir", cas},
            {"k_casimir", k_rows},
            {"rows", rows}};
}

json run_contraction(const json& p, const Tolerances& tol, Checks& checks) {
    if (!p.contains("j-list")) usage("missing required parameter 'j-list'");
    std::vector<Spin> js;
    for (const auto& v : p["j-list"]) js.push_back(Spin::from_double(v.get<double>()));
    const int n_max = get_int(p, "n-max", 3);
    if (n_max < 0) usage("n-max must be non-negative");
    for (const Spin& j : js)
        if (n_max > j.twice() / 2) usage("n-max exceeds floor(j) for j = " + std::to_string(j.value()));
    const std::vector<ContractionPoint> pts = contraction_study(js, n_max);
    const double factor = tol.at("bound_factor");

    json rows = json::array();
    json structure = json::array();
    std::map<int, std::vector<std::pair<double, double>>> by_n;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& c = pts[k];
        std::ostringstream name;
        name << "|E_n - (n + 1/2)| <= bound at j=" << c.j << " n=" << c.n;
        checks.at_most(name.str(), c.deviation, factor * c.bound);
        by_n[c.n].emplace_back(c.j, c.deviation);
        rows.push_back({{"j", c.j}, {"index", c.n}, {"computed", c.energy}, {"reference", c.n + 0.5},
                        {"deviation", c.deviation}});
    }
    for (auto& [n, list] : by_n) {
        std::sort(list.begin(), list.end());
        bool decreasing = true;
        for (std::size_t k = 1; k < list.size(); ++k)
            if (list[k].first > list[k - 1].first && !(list[k].second < list[k - 1].second)) decreasing = false;
        checks.flag("deviation decreases with j at n=" + std::to_string(n), decreasing);
    }
    for (const Spin& j : js)
        structure.push_back({{"j", j.value()}, {"lambda1_squared", contraction_structure_constant(j)}});
    return {{"n_max", n_max}, {"structure_constant", structure}, {"rows", rows}};
}

json run_point(const std::string& command, const json& p, const Tolerances& tol) {
    Checks checks;
    json out;
    try {
        if (command == "spectrum-oscillator") out = run_oscillator(p, tol, checks);
        else if (command == "spectrum-position") out = run_position(p, tol, checks);
        else if (command == "minimal-length") out = run_minimal_length(p, tol, checks);
        else if (command == "verify-algebra") out = run_verify_algebra(p, tol, checks);
        else if (command == "closure-fit") out = run_closure(p, tol, checks);
        else if (command == "expansion-check") out = run_expansion(p, tol, checks);
        else out = run_contraction(p, tol, checks);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NumericalConsistency && e.code() != ErrorCode::RepresentationInconsistency)
            throw;
        out = json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}, {"rows", json::array()}};
        checks.all = false;
    }
    out["params"] = p;
    out["checks"] = checks.list;
    out["pass"] = checks.all;
    return out;
}

} // namespace

const char* library_version() noexcept { return DEFALG_VERSION_STRING; }

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, keys] : command_table()) v.push_back(name);
        return v;
    }();
    return names;
}

const std::vector<std::string>& command_keys(const std::string& command) {
    const auto it = command_table().find(command);
    if (it == command_table().end()) usage("unknown command '" + command + "'");
    return it->second;
}

std::vector<json> expand_sweep(const std::string& command, const json& params) {
    command_keys(command);
    std::vector<json> points;
    if (params.is_null()) return expand_object(command, json::object());
    if (params.is_array()) {
        if (params.empty()) usage("an empty parameter array has no sweep points");
        for (const auto& obj : params) {
            auto more = expand_object(command, obj);
            points.insert(points.end(), more.begin(), more.end());
        }
        return points;
    }
    return expand_object(command, params);
}

RunOutcome run_command(const std::string& command, const json& params, std::optional<double> tolerance) {
    const std::vector<json> points = expand_sweep(command, params);
    Spec spec = command_tolerances(command);
    if (tolerance) {
        if (!std::isfinite(*tolerance) || *tolerance < 0.0) usage("tolerance must be finite and non-negative");
        spec.tolerances[spec.primary] = *tolerance;
    }
    std::vector<std::future<json>> jobs;
    jobs.reserve(points.size());
    for (const json& p : points)
        jobs.push_back(std::async(std::launch::async,
                                  [&command, &spec, p] { return run_point(command, p, spec.tolerances); }));
    // Collect every job before rethrowing so no worker outlives the call.
    std::vector<json> results;
    std::exception_ptr first_error;
    for (auto& job : jobs) {
        try {
            results.push_back(job.get());
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    RunOutcome out;
    out.passed = true;
    json list = json::array();
    for (auto& r : results) {
        out.passed = out.passed && r["pass"].get<bool>();
        list.push_back(std::move(r));
    }
    json tol = json::object();
    for (const auto& [name, value] : spec.tolerances) tol[name] = value;
    out.report = {{"command", command},
                  {"params", params.is_null() ? json::object() : params},
                  {"version", library_version()},
                  {"tolerances", tol},
                  {"primary_tolerance", spec.primary},
                  {"results", list},
                  {"pass", out.passed}};
    return out;
}

} // namespace defalg
