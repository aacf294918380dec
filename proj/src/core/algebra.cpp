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

#include "core/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace defalg {

Spin Spin::from_double(double j) {
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (!std::isfinite(j) || std::abs(twice - rounded) > 1e-12 || rounded < 1.0) {
        std::ostringstream msg;
        msg << "spin j must be a positive half-integer, got " << j;
        fail(ErrorCode::InvalidParameter, msg.str());
    }
    if (rounded > 2.0e9) fail(ErrorCode::ResourceLimit, "spin j is out of integer range");
    return Spin(static_cast<int>(rounded));
}

Spin Spin::from_twice(int twice_j) {
    if (twice_j < 1)
        fail(ErrorCode::InvalidParameter, "2j must be a positive integer");
    return Spin(twice_j);
}

SpinRep build_spin_rep(double j, double cap) {
    const Spin spin = Spin::from_double(j);
    if (spin.value() > cap) {
        std::ostringstream msg;
        msg << "spin j = " << spin.value() << " exceeds the cap " << cap;
        fail(ErrorCode::ResourceLimit, msg.str());
    }
    const int dim = spin.dim();
    const double jj = spin.casimir();

    Matrix raise = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        const double m = spin.m_of_row(k);
        raise(k - 1, k) = std::sqrt(jj - m * (m + 1.0));
    }
    const Matrix lower = raise.adjoint();

    Matrix jz = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) jz(k, k) = spin.m_of_row(k);

    SpinRep rep;
    rep.j = spin;
    rep.jx = HermitianOperator(0.5 * (raise + lower), Symmetry::Hermitian);
    rep.jy = HermitianOperator(Complex(0.0, -0.5) * (raise - lower), Symmetry::Hermitian);
    rep.jz = HermitianOperator(std::move(jz), Symmetry::Hermitian);
    return rep;
}

HermitianOperator casimir_spin(const SpinRep& rep) {
    const Matrix& x = rep.jx.matrix();
    const Matrix& y = rep.jy.matrix();
    const Matrix& z = rep.jz.matrix();
    return HermitianOperator(x * x + y * y + z * z, Symmetry::Hermitian);
}

double Su2Residuals::worst() const {
    return std::max({xy, zx, yz, casimir, commute, hermitian});
}

Su2Residuals su2_residuals(const SpinRep& rep) {
    const Matrix& x = rep.jx.matrix();
    const Matrix& y = rep.jy.matrix();
    const Matrix& z = rep.jz.matrix();
    Su2Residuals r;
    r.xy = max_abs(x * y - y * x - I * z);
    r.zx = max_abs(z * x - x * z - I * y);
    r.yz = max_abs(y * z - z * y - I * x);

    const Matrix c = casimir_spin(rep).matrix();
    r.casimir = max_abs(c - rep.j.casimir() * Matrix::Identity(c.rows(), c.cols()));
    for (const Matrix* k : {&x, &y, &z})
        r.commute = std::max(r.commute, max_abs(c * *k - *k * c));
    r.hermitian = std::max({hermitian_defect(x), hermitian_defect(y), hermitian_defect(z)});
    return r;
}

DeformedTriple build_deformed_triple(const SpinRep& rep, double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) ||
        !std::isfinite(lambda2))
        fail(ErrorCode::InvalidParameter, "lambda1 and lambda2 must be positive and finite");
    const double residual = lambda1 * lambda1 * lambda2 * lambda2 * rep.j.casimir() - 1.0;
    if (std::abs(residual) > 1e-10) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "lambda1^2 lambda2^2 j(j+1) = 1 violated: residual " << residual;
        fail(ErrorCode::Constraint, msg.str());
    }
    DeformedTriple t;
    t.lambda1 = lambda1;
    t.lambda2 = lambda2;
    t.j = rep.j;
    t.x = HermitianOperator(lambda2 * rep.jx.matrix(), Symmetry::Hermitian);
    t.p = HermitianOperator(lambda1 * rep.jy.matrix(), Symmetry::Hermitian);
    t.f = HermitianOperator(lambda1 * lambda2 * rep.jz.matrix(), Symmetry::Hermitian);
    return t;
}

LambdaPair constrained_lambdas(Spin j, double ratio) {
    if (!(ratio > 0.0)) fail(ErrorCode::InvalidParameter, "lambda ratio must be positive");
    // ratio^2 lambda2^4 j(j+1) = 1
    const double lambda2 = std::pow(ratio * ratio * j.casimir(), -0.25);
    return {ratio * lambda2, lambda2};
}

double TripleResiduals::worst() const { return std::max({xp, xf, pf}); }

TripleResiduals triple_residuals(const DeformedTriple& t) {
    const Matrix& x = t.x.matrix();
    const Matrix& p = t.p.matrix();
    const Matrix& f = t.f.matrix();
    const double l1sq = t.lambda1 * t.lambda1;
    const double l2sq = t.lambda2 * t.lambda2;
    TripleResiduals r;
    r.xp = max_abs(x * p - p * x - I * f);
    r.xf = max_abs(x * f - f * x + I * l2sq * p);
    r.pf = max_abs(p * f - f * p - I * l1sq * x);
    return r;
}

double nonlinear_relation_residual(const DeformedTriple& t, Sector sector) {
    const Matrix& x = t.x.matrix();
    const Matrix& p = t.p.matrix();
    const Eigen::Index n = t.dim();
    const double l1sq = t.lambda1 * t.lambda1;
    const double l2sq = t.lambda2 * t.lambda2;

    const Matrix arg = Matrix::Identity(n, n) - l1sq * (x * x) - l2sq * (p * p);
    const Matrix root = psd_sqrt(0.5 * (arg + arg.adjoint()));
    const Matrix defect = x * p - p * x - I * root;

    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double m = t.j.m_of_row(static_cast<int>(k));
        if (sector == Sector::Full || m > 0.0 || (sector == Sector::NonNegative && m == 0.0))
            keep.push_back(k);
    }
    double worst = 0.0;
    for (Eigen::Index r : keep)
        for (Eigen::Index c : keep) worst = std::max(worst, std::abs(defect(r, c)));
    return worst;
}

double oscillator_level(Spin j, double n) {
    const double jj = j.casimir();
    const double m = j.value() - n;
    return (jj - m * m) / (2.0 * std::sqrt(jj));
}

SpectrumReport oscillator_spectrum_analytic(Spin j) {
    const double jj = j.casimir();
    const int count = j.twice() / 2 + 1; // n = 0..floor(j)
    std::vector<double> by_n, by_m;
    for (int n = 0; n < count; ++n) {
        by_n.push_back(oscillator_level(j, n));
        const double m = j.value() - n;
        by_m.push_back((jj - m * m) / (2.0 * std::sqrt(jj)));
    }
    SpectrumReport r = pair_sorted(std::move(by_n), std::move(by_m));
    r.context = {{"j", j.value()}, {"lambda", std::pow(jj, -0.25)}, {"route", "analytic"}};
    return r;
}

SpectrumReport oscillator_spectrum_matrix(const DeformedTriple& t) {
    if (std::abs(t.lambda1 - t.lambda2) > 1e-12 * t.lambda2)
        fail(ErrorCode::Unsupported,
             "oscillator spectrum is only defined here for lambda1 = lambda2");
    const Matrix& x = t.x.matrix();
    const Matrix& p = t.p.matrix();
    const Matrix h = 0.5 * (p * p + x * x);
    const RealVector eig = hermitian_eigenvalues(0.5 * (h + h.adjoint()));

    const double jj = t.j.casimir();
    std::vector<double> reference;
    for (int k = 0; k < t.j.dim(); ++k) {
        const double m = t.j.m_of_row(k);
        reference.push_back((jj - m * m) / (2.0 * std::sqrt(jj)));
    }
    SpectrumReport r =
        pair_sorted(std::vector<double>(eig.data(), eig.data() + eig.size()), std::move(reference));
    r.context = {{"j", t.j.value()}, {"lambda", t.lambda1}, {"route", "matrix"}};
    return r;
}

std::vector<ContractionPoint> contraction_study(const std::vector<Spin>& js, int n_max) {
    if (n_max < 0) fail(ErrorCode::InvalidParameter, "n-max must be non-negative");
    std::vector<ContractionPoint> out;
    for (const Spin& j : js) {
        const int top = std::min(n_max, j.twice() / 2);
        for (int n = 0; n <= top; ++n) {
            const double e = oscillator_level(j, n);
            const double bound = (2.0 * n * n + 2.0 * n + 1.0) / (2.0 * j.value());
            out.push_back({j.value(), n, e, std::abs(e - (n + 0.5)), bound});
        }
    }
    return out;
}

double contraction_structure_constant(Spin j) {
    const LambdaPair l = constrained_lambdas(j, 1.0);
    return l.lambda1 * l.lambda1;
}

} // namespace defalg
