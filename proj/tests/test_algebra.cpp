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

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/error.hpp"

using namespace defalg;

namespace {

using C = std::complex<double>;

// Plain triple-loop product, independent of Eigen's kernels.
Matrix naive_product(const Matrix& a, const Matrix& b) {
    const Eigen::Index n = a.rows();
    Matrix r = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
    return r;
}

Matrix naive_commutator(const Matrix& a, const Matrix& b) {
    return naive_product(a, b) - naive_product(b, a);
}

double max_entry(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("spin labels parse exactly") {
    CHECK(Spin::from_double(0.5).twice() == 1);
    CHECK(Spin::from_double(3.5).dim() == 8);
    CHECK(Spin::from_double(2).is_integer());
    CHECK(Spin::from_double(1.5).m_of_row(0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(Spin::from_double(0.3), Error);
    CHECK_THROWS_AS(Spin::from_double(0.0), Error);
    CHECK_THROWS_AS(Spin::from_double(-1.0), Error);
    try {
        Spin::from_double(0.3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidParameter);
    }
}

TEST_CASE("spin one half is half the Pauli matrices") {
    const SpinRep rep = build_spin_rep(0.5);
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, C(0, -1), C(0, 1), 0;
    sz << 1, 0, 0, -1;
    CHECK(max_entry(rep.jx.matrix() - 0.5 * sx) < 1e-15);
    CHECK(max_entry(rep.jy.matrix() - 0.5 * sy) < 1e-15);
    CHECK(max_entry(rep.jz.matrix() - 0.5 * sz) < 1e-15);
}

TEST_CASE("spin one matches the textbook matrices") {
    const SpinRep rep = build_spin_rep(1.0);
    const double r = 1.0 / std::sqrt(2.0);
    Matrix jx(3, 3), jz(3, 3);
    jx << 0, r, 0, r, 0, r, 0, r, 0;
    jz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    CHECK(max_entry(rep.jx.matrix() - jx) < 1e-15);
    CHECK(max_entry(rep.jz.matrix() - jz) < 1e-15);
}

TEST_CASE("su(2) relations hold against a naive commutator for j up to 25/2") {
    for (int twice = 1; twice <= 25; ++twice) {
        const SpinRep rep = build_spin_rep(0.5 * twice);
        const Matrix& x = rep.jx.matrix();
        const Matrix& y = rep.jy.matrix();
        const Matrix& z = rep.jz.matrix();
        const double dim = static_cast<double>(rep.dim());
        CHECK(max_entry(naive_commutator(x, y) - C(0, 1) * z) <= 1e-12 * dim);
        CHECK(max_entry(naive_commutator(z, x) - C(0, 1) * y) <= 1e-12 * dim);
        CHECK(max_entry(naive_commutator(y, z) - C(0, 1) * x) <= 1e-12 * dim);
        const Matrix casimir = naive_product(x, x) + naive_product(y, y) + naive_product(z, z);
        const double jj = 0.25 * twice * (twice + 2);
        CHECK(max_entry(casimir - jj * Matrix::Identity(rep.dim(), rep.dim())) <= 1e-12 * dim);
        CHECK(su2_residuals(rep).worst() <= 1e-12 * dim);
    }
}

TEST_CASE("spin cap is enforced") {
    CHECK_THROWS_AS(build_spin_rep(10.0, 5.0), Error);
    try {
        build_spin_rep(10.0, 5.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
}

TEST_CASE("deformed triple closes under the constraint") {
    for (double j : {0.5, 1.0, 2.5, 6.0}) {
        const Spin s = Spin::from_double(j);
        for (double ratio : {1.0, 2.0, 0.5}) {
            const LambdaPair lp = constrained_lambdas(s, ratio);
            CHECK(lp.lambda1 / lp.lambda2 == doctest::Approx(ratio).epsilon(1e-14));
            CHECK(lp.lambda1 * lp.lambda1 * lp.lambda2 * lp.lambda2 * s.casimir() ==
                  doctest::Approx(1.0).epsilon(1e-14));
            const DeformedTriple t = build_deformed_triple(build_spin_rep(j), lp.lambda1, lp.lambda2);
            const Matrix& x = t.x.matrix();
            const Matrix& p = t.p.matrix();
            const Matrix& f = t.f.matrix();
            const double dim = static_cast<double>(t.dim());
            CHECK(max_entry(naive_commutator(x, p) - C(0, 1) * f) <= 1e-12 * dim);
            CHECK(max_entry(naive_commutator(x, f) + C(0, lp.lambda2 * lp.lambda2) * p) <= 1e-12 * dim);
            CHECK(max_entry(naive_commutator(p, f) - C(0, lp.lambda1 * lp.lambda1) * x) <= 1e-12 * dim);
        }
    }
}

TEST_CASE("constraint violation reports the residual") {
    const SpinRep rep = build_spin_rep(1.0);
    try {
        build_deformed_triple(rep, 1.0, 1.0);
        FAIL("expected a constraint error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Constraint);
        CHECK(std::string(e.what()).find("residual") != std::string::npos);
    }
}

TEST_CASE("square-root relation holds on m >= 0 and fails on the full space") {
    for (double j : {0.5, 1.0, 3.5, 10.0}) {
        const Spin s = Spin::from_double(j);
        for (double ratio : {1.0, 2.0}) {
            const LambdaPair lp = constrained_lambdas(s, ratio);
            const DeformedTriple t = build_deformed_triple(build_spin_rep(j), lp.lambda1, lp.lambda2);
            CHECK(verify_nonlinear_relation(t) <= 1e-10 * static_cast<double>(t.dim()));
            CHECK(verify_nonlinear_relation(t, false) <= 1e-10 * static_cast<double>(t.dim()));
            if (j >= 1.0) CHECK(nonlinear_relation_residual(t, Sector::Full) > 1e-3);
        }
    }
}

TEST_CASE("full-space defect for j = 1 sits on the m = -1 sector") {
    // [X,P] = i F = i lambda^2 Jz while the root is lambda^2 |Jz|: on m = -1
    // they differ by 2 lambda1 lambda2.
    const Spin s = Spin::from_double(1.0);
    const LambdaPair lp = constrained_lambdas(s);
    const DeformedTriple t = build_deformed_triple(build_spin_rep(1.0), lp.lambda1, lp.lambda2);
    CHECK(nonlinear_relation_residual(t, Sector::Full) ==
          doctest::Approx(2.0 * lp.lambda1 * lp.lambda2).epsilon(1e-12));
}

TEST_CASE("oscillator levels match the closed form") {
    // j = 1: E_0 = 1/(2 sqrt 2), E_1 = 1/sqrt 2.
    const Spin one = Spin::from_double(1.0);
    CHECK(oscillator_level(one, 0) == doctest::Approx(0.35355339059327373).epsilon(1e-15));
    CHECK(oscillator_level(one, 1) == doctest::Approx(0.70710678118654757).epsilon(1e-15));
    for (double j : {0.5, 1.0, 3.0, 10.0, 50.0}) {
        const Spin s = Spin::from_double(j);
        const LambdaPair lp = constrained_lambdas(s);
        const DeformedTriple t = build_deformed_triple(build_spin_rep(j), lp.lambda1, lp.lambda2);
        const SpectrumReport m = oscillator_spectrum_matrix(t);
        CHECK(m.max_dev <= 1e-10);
        // Oracle: (j(j+1) - m^2) / (2 sqrt(j(j+1))) over every m = -j..j.
        std::vector<double> expected;
        for (int k = 0; k <= s.twice(); ++k) {
            const double mm = j - k;
            expected.push_back((j * (j + 1) - mm * mm) / (2.0 * std::sqrt(j * (j + 1))));
        }
        std::sort(expected.begin(), expected.end());
        REQUIRE(expected.size() == m.computed.size());
        for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(m.computed[k] - expected[k]) <= 1e-10);
        const auto levels = degeneracy_pattern(m.computed, 1e-9);
        CHECK(levels.size() == static_cast<std::size_t>(s.twice() / 2 + 1));
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double mm = j - static_cast<double>(k);
            CHECK(levels[k].multiplicity == (mm > 0.0 ? 2 : 1));
        }
        CHECK(oscillator_spectrum_analytic(s).max_dev <= 1e-12);
    }
}

TEST_CASE("matrix oscillator requires equal lambdas") {
    const Spin s = Spin::from_double(2.0);
    const LambdaPair lp = constrained_lambdas(s, 2.0);
    const DeformedTriple t = build_deformed_triple(build_spin_rep(2.0), lp.lambda1, lp.lambda2);
    CHECK_THROWS_AS(oscillator_spectrum_matrix(t), Error);
}

TEST_CASE("contraction approaches n + 1/2 inside the bound") {
    const auto pts = contraction_study({Spin::from_double(100), Spin::from_double(1000)}, 3);
    REQUIRE(pts.size() == 8);
    for (const auto& p : pts) {
        CHECK(p.deviation <= (2.0 * p.n * p.n + 2.0 * p.n + 1.0) / (2.0 * p.j));
        CHECK(p.bound == doctest::Approx((2.0 * p.n * p.n + 2.0 * p.n + 1.0) / (2.0 * p.j)));
    }
    for (int n = 0; n <= 3; ++n) CHECK(pts[static_cast<std::size_t>(4 + n)].deviation < pts[static_cast<std::size_t>(n)].deviation);
    // lambda1^2 = 1/sqrt(j(j+1)) vanishes as j grows.
    CHECK(contraction_structure_constant(Spin::from_double(1000)) ==
          doctest::Approx(1.0 / std::sqrt(1000.0 * 1001.0)).epsilon(1e-14));
}

TEST_CASE("psd square root clamps roundoff and rejects indefinite input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 4.0;
    m(1, 1) = -1e-12;
    const Matrix r = psd_sqrt(m);
    CHECK(std::abs(r(0, 0) - 2.0) < 1e-15);
    CHECK(std::abs(r(1, 1)) == 0.0);
    m(1, 1) = -1e-6;
    CHECK_THROWS_AS(psd_sqrt(m), Error);
}
