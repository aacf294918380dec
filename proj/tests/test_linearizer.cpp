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


#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/linearizer.hpp"

using namespace defalg;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

GridRep theta_grid(double lam, int n) {
    return build_grid(DeformationSpec::trig(lam), n, std::nullopt, Boundary::Periodic, ThetaSpan::Full);
}

GridRep xi_grid(double lam, double L, int n) {
    return build_grid(DeformationSpec::hyper(lam * lam), n, L);
}

} // namespace

TEST_CASE("parametric deformations close with alpha = gamma = 0") {
    for (double beta : {-1.0, -0.25, 0.3, 2.0}) {
        const auto spec = beta < 0 ? DeformationSpec::trig(std::sqrt(-beta), 1.3) : DeformationSpec::hyper(beta, 1.3);
        const ClosureFit fit = fit_closure_coefficients(spec);
        CHECK(fit.rank == 3);
        CHECK_FALSE(fit.reduced_basis);
        CHECK(std::abs(fit.alpha) <= 1e-8);
        CHECK(std::abs(fit.gamma) <= 1e-8);
        CHECK(std::abs(fit.beta - beta) <= 1e-8);
        CHECK(fit.residual <= 1e-10);
        CHECK(fit.grid.size() == 200);
    }
}

TEST_CASE("flat deformation gives a reduced design") {
    const ClosureFit fit = fit_closure_coefficients(DeformationSpec::flat(2.0));
    CHECK(fit.reduced_basis);
    CHECK(fit.rank == 2);
    CHECK(fit.diagnostic.find("dropped") != std::string::npos);
    CHECK(std::abs(fit.beta) <= 1e-12);
    CHECK(fit.residual <= 1e-12);
}

TEST_CASE("closure fit sample count is validated") {
    CHECK(code_of([] { fit_closure_coefficients(DeformationSpec::hyper(0.3), 20); }) == ErrorCode::InvalidParameter);
    std::vector<double> p, f;
    for (int k = -10; k <= 10; ++k) {
        p.push_back(0.1 * k);
        f.push_back(1.0 + 0.01 * k * k);
    }
    CHECK(code_of([&] { fit_closure_coefficients(DeformationSpec::tabulated(p, f)); }) == ErrorCode::Precondition);
}

TEST_CASE("tabulated square-root profile recovers beta") {
    std::vector<double> p, f;
    for (int k = -200; k <= 200; ++k) {
        p.push_back(0.01 * k);
        f.push_back(std::sqrt(1.0 + 0.3 * p.back() * p.back()));
    }
    const ClosureFit fit = fit_closure_coefficients(DeformationSpec::tabulated(p, f));
    CHECK(fit.grid.size() == 397);
    CHECK(std::abs(fit.beta - 0.3) <= 1e-7);
    CHECK(std::abs(fit.alpha) <= 1e-7);
    CHECK(std::abs(fit.gamma) <= 1e-7);
    CHECK(fit.residual <= 1e-8);
}

TEST_CASE("quadratic deformation does not close") {
    // f f' = 0.6 p + 0.18 p^3 has a cubic term outside span{1, p, f}.
    std::vector<double> p, f;
    for (int k = -200; k <= 200; ++k) {
        p.push_back(0.01 * k);
        f.push_back(1.0 + 0.3 * p.back() * p.back());
    }
    const ClosureFit fit = fit_closure_coefficients(DeformationSpec::tabulated(p, f));
    CHECK(fit.residual > 1e-3);
}

TEST_CASE("closure ODE solutions") {
    const auto t = solve_closure_ode(-0.25, 1.0);
    CHECK(t.family() == Family::Trig);
    CHECK(t.lambda() == doctest::Approx(0.5));
    CHECK(t.bound() == doctest::Approx(2.0));
    CHECK(solve_closure_ode(0.3).family() == Family::Hyper);
    CHECK(solve_closure_ode(0.0, 2.0).family() == Family::Flat);
    CHECK(code_of([] { solve_closure_ode(0.3, 0.0); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { solve_closure_ode(0.3, -1.0); }) == ErrorCode::InvalidParameter);

    for (double beta : {-2.0, -0.5, 0.0, 0.5, 3.0})
        for (double c : {0.5, 1.0, 4.0}) {
            const auto s = solve_closure_ode(beta, c);
            CHECK(closure_ode_residual(s, beta) <= 1e-12);
            CHECK(s.f(0.0) == doctest::Approx(std::sqrt(c)));
            if (beta != 0.0) CHECK(std::abs(fit_closure_coefficients(s).beta - beta) <= 1e-8);
        }
    CHECK(closure_ode_residual(DeformationSpec::hyper(0.3), 0.5) > 0.1);
}

TEST_CASE("precursor operators are anti-hermitian and A3 is hermitian") {
    // A commutator of two hermitian operators is anti-hermitian.
    for (const GridRep& g : {theta_grid(1.0, 64), xi_grid(0.5, 10.0, 128)}) {
        for (int eps : {1, -1}) {
            const ExpansionSet e = build_expansion(g, eps);
            CHECK(e.iso.pplus.symmetry() == Symmetry::Hermitian);
            CHECK(e.pi_plus.symmetry() == Symmetry::SkewHermitian);
            CHECK(e.pi_minus.symmetry() == Symmetry::SkewHermitian);
            CHECK(e.at3.symmetry() == Symmetry::Hermitian);
            CHECK(e.flags.a3);
            // C2 = c / lambda^2 on both grids.
            CHECK(e.casimir_value == doctest::Approx(1.0 / (g.lambda * g.lambda)).epsilon(1e-12));
        }
    }
}

TEST_CASE("expected hermiticity table") {
    CHECK(expected_hermiticity(1, 1) == HermiticityFlags{true, true, true});
    CHECK(expected_hermiticity(-1, 1) == HermiticityFlags{true, true, true});
    CHECK(expected_hermiticity(1, -1) == HermiticityFlags{false, false, true});
    CHECK(expected_hermiticity(-1, -1) == HermiticityFlags{false, false, true});
}

TEST_CASE("expansion rejects bad input") {
    CHECK(code_of([] { build_expansion(theta_grid(1.0, 64), 0); }) == ErrorCode::InvalidParameter);
    const GridRep half = build_grid(DeformationSpec::trig(1.0), 64, std::nullopt);
    CHECK(code_of([&] { build_expansion(half, 1); }) == ErrorCode::Unsupported);
}

TEST_CASE("expansion relations on theta grids") {
    for (int eps : {1, -1}) {
        const GridRep g = theta_grid(1.0, 128);
        const ExpansionSet e = build_expansion(g, eps);
        const ExpansionReport r = verify_expansion_relations(e, default_states(g));
        CHECK(!r.relations.empty());
        CHECK(r.literal.empty());
        for (const auto& rel : r.relations) CHECK_MESSAGE(rel.pass, rel.relation << " on " << rel.state << ": " << rel.residual);
        REQUIRE(!r.casimir_values.empty());
        for (const auto& [name, v] : r.casimir_values)
            CHECK(v == doctest::Approx(r.casimir_values.front().second).epsilon(1e-10));
    }
}

TEST_CASE("[At2,At3] on cos 2 theta at N = 256") {
    const GridRep g = theta_grid(1.0, 256);
    const ExpansionSet e = build_expansion(g, 1);
    bool seen = false;
    for (const auto& rel : verify_expansion_relations(e, default_states(g)).relations)
        if (rel.state == "cos_2u" && rel.relation == "[At2,At3] = iAt1") {
            seen = true;
            CHECK(rel.residual <= 1e-9);
        }
    CHECK(seen);
}

TEST_CASE("expansion relations on the xi grid") {
    const GridRep g = xi_grid(0.5, 20.0, 512);
    const ExpansionSet e = build_expansion(g, 1);
    const ExpansionReport r = verify_expansion_relations(e, default_states(g));
    for (const auto& rel : r.relations) CHECK_MESSAGE(rel.pass, rel.relation << " on " << rel.state << ": " << rel.residual);
    CHECK(!r.literal.empty());
}

TEST_CASE("scalar Casimir on theta grids") {
    for (double lam : {0.5, 1.0, 2.0}) {
        const GridRep g = build_grid(DeformationSpec::trig(lam, 1.7), 128, std::nullopt);
        for (const auto& r : theta_casimir_residuals(g, default_states(g))) CHECK(r.pass);
    }
    const GridRep x = xi_grid(0.5, 10.0, 64);
    CHECK(code_of([&] { theta_casimir_residuals(x, default_states(x)); }) == ErrorCode::Unsupported);
}
