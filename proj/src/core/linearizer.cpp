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


#include "core/linearizer.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/extended.hpp"

namespace defalg {
namespace {

const char* kColumnNames[3] = {"1", "p", "f"};

} // namespace

ClosureFit fit_closure_coefficients(const DeformationSpec& spec, int m, double window) {
    std::vector<double> p, f, df;
    if (spec.family() == Family::Tabulated) {
        // One-sided stencils cover two nodes at each end; skip them.
        const auto& tp = spec.table_p();
        for (std::size_t k = 2; k + 2 < tp.size(); ++k) {
            p.push_back(tp[k]);
            f.push_back(spec.table_f()[k]);
            df.push_back(spec.table_df()[k]);
        }
        if (p.size() < 50)
            fail(ErrorCode::Precondition, "closure fit needs at least 50 interior table samples, got " +
                                              std::to_string(p.size()));
    } else {
        if (m < 50) fail(ErrorCode::InvalidParameter, "closure fit needs at least 50 samples");
        const double half = std::isfinite(spec.bound()) ? spec.bound() : window;
        if (!(half > 0.0) || !std::isfinite(half))
            fail(ErrorCode::InvalidParameter, "closure fit window must be positive and finite");
        for (int k = 0; k < m; ++k) {
            const double x = -half + (k + 0.5) * (2.0 * half / m);
            p.push_back(x);
            f.push_back(spec.f(x));
            df.push_back(spec.df(x));
        }
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (!(f[i] > 0.0) || !std::isfinite(df[i]))
            fail(ErrorCode::Precondition, "f must be positive with a finite derivative at every sample");
        design(k, 0) = 1.0;
        design(k, 1) = p[i];
        design(k, 2) = f[i];
        rhs[k] = f[i] * df[i];
    }
    Eigen::Vector3d scale;
    for (int j = 0; j < 3; ++j) {
        scale[j] = design.col(j).norm();
        if (scale[j] == 0.0) scale[j] = 1.0;
        design.col(j) /= scale[j];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    ClosureFit out;
    out.grid = p;
    out.rank = static_cast<int>(qr.rank());
    Eigen::Vector3d coef = Eigen::Vector3d::Zero();
    if (out.rank == 3) {
        coef = qr.solve(rhs);
        out.diagnostic = "full rank";
    } else {
        out.reduced_basis = true;
        const auto& perm = qr.colsPermutation().indices();
        std::vector<int> keep;
        for (int j = 0; j < out.rank; ++j) keep.push_back(perm[j]);
        std::ostringstream msg;
        msg << "rank " << out.rank << " design; dropped";
        for (int j = out.rank; j < 3; ++j) msg << ' ' << kColumnNames[perm[j]];
        out.diagnostic = msg.str();
        if (!keep.empty()) {
            Eigen::MatrixXd sub(rows, static_cast<Eigen::Index>(keep.size()));
            for (std::size_t j = 0; j < keep.size(); ++j)
                sub.col(static_cast<Eigen::Index>(j)) = design.col(keep[j]);
            const Eigen::VectorXd x = sub.colPivHouseholderQr().solve(rhs);
            for (std::size_t j = 0; j < keep.size(); ++j) coef[keep[j]] = x[static_cast<Eigen::Index>(j)];
        }
    }
    const Eigen::VectorXd fitted = design * coef;
    out.residual = std::sqrt((rhs - fitted).squaredNorm() / static_cast<double>(rows));
    coef = coef.cwiseQuotient(scale);
    out.alpha = coef[0];
    out.beta = coef[1];
    out.gamma = coef[2];
    if (!std::isfinite(out.alpha) || !std::isfinite(out.beta) || !std::isfinite(out.gamma))
        fail(ErrorCode::NumericalConsistency, "closure fit produced non-finite coefficients");
    return out;
}

double closure_ode_residual(const DeformationSpec& spec, double beta, int samples) {
    if (spec.family() == Family::Tabulated)
        fail(ErrorCode::Unsupported, "the ODE residual is defined for the parametric family");
    const double half = std::isfinite(spec.bound()) ? spec.bound() : 2.0;
    // Complex-step derivative: independent of the analytic df.
    const double step = 1e-30;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double p = -half + (k + 1) * (2.0 * half / (samples + 1));
        const std::complex<double> z(p, step);
        const std::complex<double> fz = std::sqrt(spec.c() + spec.beta() * z * z);
        const double deriv = fz.imag() / step;
        worst = std::max(worst, std::abs(fz.real() * deriv - beta * p));
    }
    return worst;
}

DeformationSpec solve_closure_ode(double beta, double c) {
    if (!std::isfinite(beta) || !std::isfinite(c))
        fail(ErrorCode::InvalidParameter, "beta and c must be finite");
    if (!(c > 0.0)) fail(ErrorCode::InvalidParameter, "c must be positive so that f(0) > 0");
    DeformationSpec spec = beta < 0.0   ? DeformationSpec::trig(std::sqrt(-beta), c)
                           : beta > 0.0 ? DeformationSpec::hyper(beta, c)
                                        : DeformationSpec::flat(c);
    const double r = closure_ode_residual(spec, beta);
    if (r > 1e-12) {
        std::ostringstream msg;
        msg << "ODE residual " << r << " exceeds 1e-12";
        fail(ErrorCode::NumericalConsistency, msg.str());
    }
    return spec;
}

HermiticityFlags expected_hermiticity(int beta_sign, int epsilon) {
    (void)beta_sign;
    // epsilon = 1: all hermitian; epsilon = -1: At1, At2 anti- or nonhermitian.
    if (epsilon > 0) return {true, true, true};
    return {false, false, true};
}

ExpansionSet build_expansion(const GridRep& g, int epsilon) {
    if (epsilon != 1 && epsilon != -1) fail(ErrorCode::InvalidParameter, "epsilon must be +1 or -1");
    if (g.variable == Variable::Theta && g.span != ThetaSpan::Full)
        fail(ErrorCode::Unsupported,
             "P+- mix the periodic and antiperiodic sectors of the half theta span; "
             "build the grid with ThetaSpan::Full");
    ExpansionSet e;
    e.grid = g;
    e.epsilon = epsilon;
    e.iso = iso_generators(g);
    e.beta_sign = e.iso.beta_sign;
    e.lambda = g.lambda;
    const double lam2 = g.lambda * g.lambda;

    const Eigen::VectorXcd pp = e.iso.pplus.matrix().diagonal();
    const Eigen::VectorXcd pm = e.iso.pminus.matrix().diagonal();
    Eigen::VectorXd c2(g.n);
    for (int k = 0; k < g.n; ++k) {
        c2[k] = e.beta_sign > 0 ? (pp[k] * pm[k]).real() / lam2
                                : (pp[k] * pp[k] + pm[k] * pm[k]).real() / (2.0 * lam2);
    }
    e.casimir_value = c2.mean();
    const double spread = (c2.array() - e.casimir_value).abs().maxCoeff();
    if (spread > 1e-12 * std::abs(e.casimir_value)) {
        std::ostringstream msg;
        msg << "Casimir C2 is not scalar on the grid (relative spread " << spread / std::abs(e.casimir_value)
            << ")";
        fail(ErrorCode::RepresentationInconsistency, msg.str());
    }
    e.scale = std::sqrt(Complex(epsilon * lam2 * e.casimir_value, 0.0));

    const Matrix& a3 = e.iso.a3.matrix();
    const Matrix a3sq = a3 * a3;
    // P+- are diagonal: [A, D]_{jk} = A_{jk} (d_k - d_j).
    Matrix pip(g.n, g.n), pim(g.n, g.n);
    for (int k = 0; k < g.n; ++k)
        for (int j = 0; j < g.n; ++j) {
            pip(j, k) = a3sq(j, k) * (pp[k] - pp[j]);
            pim(j, k) = a3sq(j, k) * (pm[k] - pm[j]);
        }
    const Complex inv = 1.0 / (2.0 * e.scale);
    Matrix ptp = inv * pip, ptm = inv * pim;
    e.at1 = HermitianOperator::classified(0.5 * (ptp - ptm));
    e.at2 = HermitianOperator::classified(0.5 * (ptp + ptm));
    e.at3 = e.iso.a3;
    e.pi_plus = HermitianOperator::classified(std::move(pip));
    e.pi_minus = HermitianOperator::classified(std::move(pim));
    e.pt_plus = HermitianOperator::classified(std::move(ptp));
    e.pt_minus = HermitianOperator::classified(std::move(ptm));
    e.flags = {e.at1.symmetry() == Symmetry::Hermitian, e.at2.symmetry() == Symmetry::Hermitian,
               e.at3.symmetry() == Symmetry::Hermitian};
    return e;
}

ExpansionReport verify_expansion_relations(const ExpansionSet& e, const std::vector<TestState>& states,
                                           double tolerance) {
    const SpectralOps ops(e.grid);
    const Complex128 i(0, 1);
    const Real128 eps = e.epsilon;
    const Complex128 inv = Complex128(1) / (Real128(2) * Complex128(e.scale.real(), e.scale.imag()));
    const Real128 lam2c2 = Real128(e.lambda) * Real128(e.lambda) * Real128(e.casimir_value);
    const bool hyperbolic = e.beta_sign > 0;

    auto a3 = [&](const Vector128& v) { return ops.a3(v); };
    auto pp = [&](const Vector128& v) { return ops.pplus(v); };
    auto pm = [&](const Vector128& v) { return ops.pminus(v); };
    auto pip = [&](const Vector128& v) { return a3(a3(pp(v))) - pp(a3(a3(v))); };
    auto pim = [&](const Vector128& v) { return a3(a3(pm(v))) - pm(a3(a3(v))); };
    auto ptp = [&](const Vector128& v) { return inv * pip(v); };
    auto ptm = [&](const Vector128& v) { return inv * pim(v); };
    auto at1 = [&](const Vector128& v) { return Complex128(0.5) * (ptp(v) - ptm(v)); };
    auto at2 = [&](const Vector128& v) { return Complex128(0.5) * (ptp(v) + ptm(v)); };
    auto comm = [](auto a, auto b, const Vector128& v) { return a(b(v)) - b(a(v)); };
    auto inner = [](const Vector128& a, const Vector128& b) {
        Complex128 s = 0;
        for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
        return s;
    };

    ExpansionReport out;
    std::optional<Complex128> first_value;
    for (const TestState& s : states) {
        require_band_limited(e.grid, s, 0.125);
        if (!s.profile) fail(ErrorCode::Precondition, "state '" + s.name + "' has no profile");
        const Vector128 psi = ops.sample(s.profile);
        const double norm = norm128(psi);
        auto record = [&](std::vector<RelationResidual>& into, std::string rel, const Vector128& defect,
                          double scale = 1.0) {
            RelationResidual r{std::move(rel), s.name, norm128(defect) / (norm * scale), tolerance, false};
            r.pass = r.residual <= tolerance;
            into.push_back(std::move(r));
        };
        auto& gate = out.relations;

        const Vector128 a3psi = a3(psi);
        if (hyperbolic) {
            record(gate, "[A3,Pi+] = iPi+", comm(a3, pip, psi) - i * pip(psi));
            record(gate, "[A3,Pi-] = -iPi-", comm(a3, pim, psi) + i * pim(psi));
            record(gate, "[Pi+,Pi-] = -8i lambda^2 C2 A3",
                   comm(pip, pim, psi) + Complex128(0, 8 * lam2c2) * a3psi);
            record(gate, "[A3,Pt+] = iPt+", comm(a3, ptp, psi) - i * ptp(psi));
            record(gate, "[A3,Pt-] = -iPt-", comm(a3, ptm, psi) + i * ptm(psi));
            record(gate, "[Pt+,Pt-] = -2i eps A3", comm(ptp, ptm, psi) + Complex128(0, 2 * eps) * a3psi);
        } else {
            record(gate, "[A3,Pi+] = iPi-", comm(a3, pip, psi) - i * pim(psi));
            record(gate, "[A3,Pi-] = -iPi+", comm(a3, pim, psi) + i * pip(psi));
            record(gate, "[Pi+,Pi-] = 8i lambda^2 C2 A3",
                   comm(pip, pim, psi) - Complex128(0, 8 * lam2c2) * a3psi);
            record(gate, "[A3,Pt+] = iPt-", comm(a3, ptp, psi) - i * ptm(psi));
            record(gate, "[A3,Pt-] = -iPt+", comm(a3, ptm, psi) + i * ptp(psi));
            record(gate, "[Pt+,Pt-] = 2i eps A3", comm(ptp, ptm, psi) - Complex128(0, 2 * eps) * a3psi);
        }
        record(gate, "[Pt+,Pt-] + [Pt-,Pt+] = 0", comm(ptp, ptm, psi) + comm(ptm, ptp, psi));

        const Vector128 c12 = comm(at1, at2, psi);
        const Vector128 c23 = comm(at2, a3, psi);
        const Vector128 c31 = comm(a3, at1, psi);
        const Vector128 a1psi = at1(psi), a2psi = at2(psi);
        const Real128 sgn = hyperbolic ? -1 : 1;
        record(gate, hyperbolic ? "[At1,At2] = -i eps At3" : "[At1,At2] = i eps At3",
               c12 - Complex128(0, sgn * eps) * a3psi);
        record(gate, hyperbolic ? "[At2,At3] = -iAt1" : "[At2,At3] = iAt1",
               c23 - Complex128(0, sgn) * a1psi);
        record(gate, "[At3,At1] = iAt2", c31 - i * a2psi);
        if (hyperbolic) record(out.literal, "[At2,At3] = iAt1", c23 - i * a1psi);

        // Casimir: scalar on each state and the same scalar on all states.
        auto casimir = [&](Real128 s2, Real128 s3) {
            return at1(a1psi) + Complex128(s2) * at2(a2psi) + Complex128(s3 * eps) * a3(a3psi);
        };
        auto scalar_check = [&](std::vector<RelationResidual>& into, const std::string& name,
                                const Vector128& cpsi, bool track) {
            const Complex128 mu = inner(psi, cpsi) / inner(psi, psi);
            const double mag = std::max(1.0, abs128(mu));
            record(into, name + " scalar", cpsi - mu * psi, mag);
            if (!track) return;
            out.casimir_values.emplace_back(s.name, static_cast<double>(mu.real()));
            if (!first_value) first_value = mu;
            const Complex128 d = mu - *first_value;
            RelationResidual r{name + " state-independent", s.name,
                               abs128(d) / mag,
                               tolerance, false};
            r.pass = r.residual <= tolerance;
            into.push_back(std::move(r));
        };
        if (hyperbolic) {
            scalar_check(gate, "At1^2 - At2^2 + eps At3^2", casimir(-1, 1), true);
            scalar_check(out.literal, "At1^2 + At2^2 - eps At3^2", casimir(1, -1), false);
        } else {
            scalar_check(gate, "At1^2 + At2^2 + eps At3^2", casimir(1, 1), true);
        }
    }
    return out;
}

std::vector<RelationResidual> theta_casimir_residuals(const GridRep& g, const std::vector<TestState>& states,
                                                      double tolerance) {
    if (g.variable != Variable::Theta)
        fail(ErrorCode::Unsupported, "the scalar Casimir check runs on theta grids");
    const double lam2 = g.lambda * g.lambda;
    const double value = g.c / lam2;
    Eigen::VectorXd k(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double p = g.momentum(j), f = g.jacobian(j);
        k[j] = p * p + f * f / lam2 - value;
    }
    std::vector<RelationResidual> out;
    for (const TestState& s : states) {
        const double r = (k.cwiseProduct(s.samples)).norm() / s.samples.norm();
        out.push_back({"P^2 + F^2/lambda^2 = c/lambda^2", s.name, r, tolerance, r <= tolerance});
    }
    return out;
}

} // namespace defalg
