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
#include <numbers>
#include <sstream>
#include <vector>

#include "core/deformation.hpp"
#include "core/error.hpp"
#include "core/minimal_length.hpp"

using namespace defalg;
using std::numbers::pi;

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

} // namespace

TEST_CASE("parametric families") {
    const auto h = DeformationSpec::hyper(0.3);
    CHECK(h.f(1.0) == doctest::Approx(1.1401754250991380).epsilon(1e-15));
    CHECK(h.df(1.0) == doctest::Approx(0.3 / std::sqrt(1.3)).epsilon(1e-15));
    CHECK(std::isinf(h.bound()));

    const auto t = DeformationSpec::trig(0.5);
    CHECK(t.beta() == -0.25);
    CHECK(t.bound() == 2.0);
    CHECK(t.f(2.0) == 0.0);
    CHECK(t.f(1.0) == doctest::Approx(std::sqrt(0.75)));
    t.validate();
    h.validate();

    CHECK(DeformationSpec::flat(2.0).f(5.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(code_of([] { DeformationSpec::trig(0.0); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { DeformationSpec::hyper(-1.0); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { DeformationSpec::flat(0.0); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([&] { t.with_bound(3.0); }) == ErrorCode::InvalidParameter);
    CHECK(family_from_string("hyper") == Family::Hyper);
    CHECK(code_of([] { family_from_string("cubic"); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("five-point sampled derivative is exact on quartics") {
    // Irregular increasing grid.
    std::vector<double> x, y;
    for (int k = 0; k < 23; ++k) {
        const double v = -1.0 + 0.09 * k + 0.01 * std::sin(3.0 * k);
        x.push_back(v);
        y.push_back(2.0 - v + 0.5 * v * v - 3.0 * v * v * v + 0.25 * v * v * v * v);
    }
    const auto d = sampled_derivative(x, y);
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double v = x[k];
        CHECK(d[k] == doctest::Approx(-1.0 + v - 9.0 * v * v + v * v * v).epsilon(1e-9));
    }
    CHECK(code_of([] { sampled_derivative({0, 1, 2, 3}, {0, 1, 2, 3}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("tabulated input parsing") {
    std::istringstream good("# p f\n-1 2\n-0.5 1.25  # comment\n\n0 1\n0.5 1.25\n1 2\n");
    const auto spec = read_tabulated(good, "mem");
    CHECK(spec.family() == Family::Tabulated);
    CHECK(spec.table_p().size() == 5);
    CHECK(spec.f(0.25) == doctest::Approx(1.125));
    spec.validate();

    std::istringstream three("0 1 2\n");
    try {
        read_tabulated(three, "mem");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidParameter);
        CHECK(std::string(e.what()).find("mem:1") != std::string::npos);
    }
    std::istringstream text("0 1\nabc def\n");
    CHECK(code_of([&] { read_tabulated(text, "mem"); }) == ErrorCode::InvalidParameter);
    std::istringstream unsorted("0 1\n1 2\n0.5 1\n2 3\n3 4\n");
    CHECK(code_of([&] { read_tabulated(unsorted, "mem"); }) == ErrorCode::InvalidParameter);
    CHECK(code_of([] { load_tabulated("/nonexistent/table.txt"); }) == ErrorCode::Io);

    const auto odd = DeformationSpec::tabulated({-1, -0.5, 0, 0.5, 1}, {2, 1.5, 1, 1.25, 2});
    CHECK(code_of([&] { odd.validate(); }) == ErrorCode::InvalidParameter);
    const auto negative = DeformationSpec::tabulated({-1, -0.5, 0, 0.5, 1}, {1, -1, 1, -1, 1});
    CHECK(code_of([&] { negative.validate(); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("minimal length of the trig family is lambda") {
    for (double lam : {0.1, 0.25, 0.5, 1.0, 2.0})
        for (double c : {1.0, 2.5}) {
            const auto s = DeformationSpec::trig(lam, c);
            CHECK(std::abs(minimal_length_quadrature(s) - lam) <= 1e-10);
            CHECK(minimal_length_analytic(s) == lam);
        }
}

TEST_CASE("minimal length of the trig family with a reduced cutoff") {
    // integral_0^a dp / sqrt(1 - lambda^2 p^2) = asin(lambda a) / lambda.
    const double lam = 0.5, a = 1.2;
    const auto s = DeformationSpec::trig(lam).with_bound(a);
    CHECK(minimal_length_quadrature(s) == doctest::Approx(0.5 * pi * lam / std::asin(lam * a)).epsilon(1e-12));
}

TEST_CASE("unbounded hyper and flat families have zero minimal length") {
    CHECK(minimal_length_quadrature(DeformationSpec::hyper(0.3)) == 0.0);
    CHECK(minimal_length_analytic(DeformationSpec::hyper(0.3)) == 0.0);
    CHECK(minimal_length_quadrature(DeformationSpec::flat()) == 0.0);
}

TEST_CASE("bounded hyper and flat families") {
    for (double beta : {0.1, 0.3, 2.0})
        for (double a : {0.5, 3.0}) {
            const auto s = DeformationSpec::hyper(beta, 1.5).with_bound(a);
            // integral_0^a dp / sqrt(c + beta p^2) = asinh(a sqrt(beta/c)) / sqrt(beta).
            const double ref = 0.5 * pi * std::sqrt(beta) / std::asinh(a * std::sqrt(beta / 1.5));
            CHECK(minimal_length_quadrature(s) == doctest::Approx(ref).epsilon(1e-12));
            CHECK(minimal_length_analytic(s) == doctest::Approx(ref).epsilon(1e-14));
        }
    const auto f = DeformationSpec::flat(4.0).with_bound(2.0);
    CHECK(minimal_length_quadrature(f) == doctest::Approx(0.5 * pi).epsilon(1e-13));
}

TEST_CASE("tabulated minimal length uses the trapezoid rule") {
    const auto s = DeformationSpec::tabulated({-3, -1.5, 0, 1.5, 3}, {2, 2, 2, 2, 2}).with_bound(3.0);
    CHECK(minimal_length_quadrature(s) == doctest::Approx(pi / 3.0).epsilon(1e-14));
    CHECK(code_of([&] { minimal_length_analytic(s); }) == ErrorCode::Unsupported);
    const auto z = DeformationSpec::tabulated({-2, -1, 0, 1, 2}, {0, 1, 1, 1, 0}).with_bound(2.0);
    CHECK(code_of([&] { minimal_length_quadrature(z); }) == ErrorCode::NumericalConsistency);
}

TEST_CASE("Dirichlet variance at zero shift is the discrete Laplacian ground state") {
    for (double lam : {0.5, 1.0, 2.0})
        for (int n : {32, 100, 400}) {
            const auto s = DeformationSpec::trig(lam);
            const double h = (pi / lam) / (n + 1);
            const double ref = 4.0 / (h * h) * std::pow(std::sin(pi / (2.0 * (n + 1))), 2);
            // Backward-stable eigensolver: error of order eps * ||A|| = eps * 4/h^2.
            CHECK(std::abs(dirichlet_shifted_variance(s, n, 0.0) - ref) <= 64 * 2.2e-16 * 4.0 / (h * h));
        }
}

TEST_CASE("Dirichlet minimal uncertainty approaches lambda") {
    const auto s = DeformationSpec::trig(1.0);
    const auto r = dirichlet_min_uncertainty(s, 400);
    CHECK(r.converged);
    CHECK(std::abs(r.min_uncertainty - 1.0) <= 1e-3);
    // The minimum is flat to second order, so the shift is resolved only to
    // about sqrt(roundoff) of the objective.
    CHECK(std::abs(r.shift) <= 1e-3);
    // Refinement moves toward the continuum value.
    const auto coarse = dirichlet_min_uncertainty(s, 100);
    CHECK(std::abs(coarse.min_uncertainty - 1.0) > std::abs(r.min_uncertainty - 1.0));

    CHECK(code_of([] { dirichlet_min_uncertainty(DeformationSpec::hyper(0.3), 64); }) == ErrorCode::Unsupported);
    CHECK(code_of([&] { dirichlet_min_uncertainty(s, 16); }) == ErrorCode::InvalidParameter);
}
