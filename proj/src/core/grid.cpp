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

#include "core/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

extern "C" {
#include <quadmath.h>
}

#include "core/error.hpp"

namespace defalg {

using std::numbers::pi;

const char* to_string(Variable v) noexcept {
    switch (v) {
    case Variable::P: return "p";
    case Variable::Xi: return "xi";
    case Variable::Theta: return "theta";
    }
    return "unknown";
}

const char* to_string(Boundary b) noexcept {
    switch (b) {
    case Boundary::Periodic: return "periodic";
    case Boundary::Antiperiodic: return "antiperiodic";
    case Boundary::Dirichlet: return "dirichlet";
    }
    return "unknown";
}

Boundary boundary_from_string(const std::string& name) {
    if (name == "periodic") return Boundary::Periodic;
    if (name == "antiperiodic") return Boundary::Antiperiodic;
    if (name == "dirichlet") return Boundary::Dirichlet;
    fail(ErrorCode::InvalidParameter, "unknown boundary condition '" + name + "'");
}

double GridRep::momentum(int k) const {
    const double x = nodes[static_cast<std::size_t>(k)];
    switch (variable) {
    case Variable::Theta: return std::sqrt(c) * std::sin(lambda * x) / lambda;
    case Variable::Xi: return std::sqrt(c) * std::sinh(lambda * x) / lambda;
    case Variable::P: return x;
    }
    return x;
}

double GridRep::jacobian(int k) const {
    const double x = nodes[static_cast<std::size_t>(k)];
    switch (variable) {
    case Variable::Theta: return std::sqrt(c) * std::cos(lambda * x);
    case Variable::Xi: return std::sqrt(c) * std::cosh(lambda * x);
    case Variable::P: return 1.0;
    }
    return 1.0;
}

std::vector<double> GridRep::wavenumbers() const {
    const double omega = 2.0 * pi / length();
    const double shift = bc == Boundary::Antiperiodic ? 0.5 : 0.0;
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = omega * (i - n / 2 + shift);
    return k;
}

GridRep build_grid(const DeformationSpec& spec, int n, std::optional<double> half_width,
                   Boundary bc, ThetaSpan span) {
    if (n < 8 || n % 2 != 0)
        fail(ErrorCode::InvalidParameter,
             "grid size N must be even and at least 8, got " + std::to_string(n));
    GridRep g;
    g.family = spec.family();
    g.bc = bc;
    g.span = span;
    g.n = n;
    g.c = spec.c();
    g.lambda = spec.lambda();

    auto need_width = [&](const char* what) {
        if (!half_width || !(*half_width > 0.0) || !std::isfinite(*half_width))
            fail(ErrorCode::InvalidParameter,
                 std::string(what) + " grid needs a positive truncation half-width L");
        return *half_width;
    };

    switch (spec.family()) {
    case Family::Trig: {
        g.variable = Variable::Theta;
        const double half = span == ThetaSpan::Full ? pi / g.lambda : pi / (2.0 * g.lambda);
        if (span == ThetaSpan::Full && bc != Boundary::Periodic)
            fail(ErrorCode::InvalidParameter,
                 "the full theta span already contains both sectors; use periodic bc");
        g.lo = -half;
        g.hi = half;
        g.map = "lambda p = sqrt(c) sin(lambda theta)";
        break;
    }
    case Family::Hyper: {
        g.variable = Variable::Xi;
        const double L = need_width("xi");
        g.lo = -L;
        g.hi = L;
        g.map = "lambda p = sqrt(c) sinh(lambda xi)";
        break;
    }
    case Family::Flat: {
        g.variable = Variable::P;
        const double L = need_width("flat momentum");
        g.lo = -L;
        g.hi = L;
        g.map = "identity";
        break;
    }
    case Family::Tabulated:
        fail(ErrorCode::Unsupported, "tabulated deformations have no closed-form grid map");
    }

    const double h = g.length() / n;
    g.nodes.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) g.nodes[static_cast<std::size_t>(k)] = g.lo + k * h;
    g.weights.assign(static_cast<std::size_t>(n), h);
    return g;
}

HermitianOperator derivative_matrix(const GridRep& g) {
    if (g.bc == Boundary::Dirichlet)
        fail(ErrorCode::Unsupported,
             "Fourier differentiation needs periodic or antiperiodic boundary conditions");
    const int n = g.n;
    const double h = g.length() / n;
    const std::vector<double> kappa = g.wavenumbers();

    // Entries depend on the node offset only.
    std::vector<Complex> by_offset(static_cast<std::size_t>(2 * n - 1));
    for (int d = -(n - 1); d <= n - 1; ++d) {
        Complex s = 0.0;
        for (double k : kappa) s += I * k * std::exp(I * (k * d * h));
        by_offset[static_cast<std::size_t>(d + n - 1)] = s / static_cast<double>(n);
    }
    Matrix dm(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) dm(r, c) = by_offset[static_cast<std::size_t>(r - c + n - 1)];
    // Exact skew-symmetrization removes roundoff asymmetry.
    dm = 0.5 * (dm - dm.adjoint()).eval();
    return HermitianOperator(std::move(dm), Symmetry::SkewHermitian);
}

namespace {

double position_scale(const GridRep& g) {
    return g.variable == Variable::P ? std::sqrt(g.c) : 1.0;
}

} // namespace

HermitianOperator position_operator(const GridRep& g) {
    const HermitianOperator d = derivative_matrix(g);
    return HermitianOperator(Complex(0.0, position_scale(g)) * d.matrix(), Symmetry::Hermitian);
}

PositionSpectrum position_spectrum(const GridRep& g) {
    if (g.variable == Variable::Theta && g.span == ThetaSpan::Full)
        fail(ErrorCode::Unsupported,
             "position spectrum is defined on the half theta span with a single boundary condition");
    const HermitianOperator x = position_operator(g);
    const HermitianEigen eig = hermitian_eigensystem(x.matrix());

    const double spacing = 2.0 * pi / g.length() * position_scale(g);
    const double shift = g.bc == Boundary::Antiperiodic ? 0.5 : 0.0;
    const double cutoff = spacing * g.n / 4.0;
    std::vector<double> reference;
    std::vector<std::int64_t> labels;
    for (int level = -g.n; level <= g.n; ++level) {
        const double l = spacing * (level + shift);
        if (std::abs(l) < cutoff * (1.0 - 1e-12)) {
            reference.push_back(l);
            labels.push_back(level);
        }
    }
    const std::vector<double> computed(eig.values.data(), eig.values.data() + eig.values.size());

    PositionSpectrum out;
    out.report = pair_nearest(computed, reference, labels);

    // Analytic eigenfunction through the momentum pullback.
    const Eigen::Index n = g.n;
    out.min_overlap = 1.0;
    std::vector<bool> taken(computed.size(), false);
    for (std::size_t r = 0; r < out.report.reference.size(); ++r) {
        const double l = out.report.reference[r];
        const double value = out.report.matched[r];
        std::size_t col = 0;
        for (std::size_t i = 0; i < computed.size(); ++i)
            if (!taken[i] && computed[i] == value) {
                col = i;
                break;
            }
        taken[col] = true;

        Vector phi(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double p = g.momentum(static_cast<int>(k));
            const double s = std::sqrt(g.c);
            double phase = 0.0;
            switch (g.variable) {
            case Variable::Theta: phase = -(l / g.lambda) * std::asin(std::clamp(g.lambda * p / s, -1.0, 1.0)); break;
            case Variable::Xi: phase = -(l / g.lambda) * std::asinh(g.lambda * p / s); break;
            case Variable::P: phase = -l * p / s; break;
            }
            phi[k] = std::sqrt(g.lambda / pi) * std::exp(I * phase);
        }
        const Vector v = eig.vectors.col(static_cast<Eigen::Index>(col));
        const double overlap = std::abs(phi.dot(v)) / (phi.norm() * v.norm());
        out.overlaps.push_back(overlap);
        out.min_overlap = std::min(out.min_overlap, overlap);
    }
    out.report.context = {{"family", to_string(g.family)},
                          {"variable", to_string(g.variable)},
                          {"bc", to_string(g.bc)},
                          {"N", g.n},
                          {"lambda", g.lambda},
                          {"min_overlap", out.min_overlap}};
    return out;
}

IsoGenerators iso_generators(const GridRep& g) {
    if (g.variable == Variable::P)
        fail(ErrorCode::Unsupported, "the flat family has no inhomogeneous rotation generators");
    if (g.bc != Boundary::Periodic)
        fail(ErrorCode::Precondition, "generators P+- are built on periodic grids");
    IsoGenerators out;
    out.beta_sign = g.variable == Variable::Xi ? 1 : -1;
    const HermitianOperator d = derivative_matrix(g);
    out.a3 = HermitianOperator(Complex(0.0, 1.0 / g.lambda) * d.matrix(), Symmetry::Hermitian);

    // Closed forms in the transformed variable: sqrt(c) e^{+-lambda xi} or
    // sqrt(c) (cos +- sin)(lambda theta). Forming F - lambda P directly would
    // cancel catastrophically at large xi.
    Matrix pp = Matrix::Zero(g.n, g.n), pm = Matrix::Zero(g.n, g.n);
    const double sc = std::sqrt(g.c);
    for (int k = 0; k < g.n; ++k) {
        const double u = g.lambda * g.nodes[static_cast<std::size_t>(k)];
        if (out.beta_sign > 0) {
            pp(k, k) = sc * std::exp(u);
            pm(k, k) = sc * std::exp(-u);
        } else {
            pp(k, k) = sc * (std::cos(u) + std::sin(u));
            pm(k, k) = sc * (std::cos(u) - std::sin(u));
        }
    }
    out.pplus = HermitianOperator(std::move(pp), Symmetry::Hermitian);
    out.pminus = HermitianOperator(std::move(pm), Symmetry::Hermitian);
    return out;
}

std::vector<TestState> default_states(const GridRep& g) {
    std::vector<TestState> out;
    auto make = [&](std::string name, Profile fn) {
        Vector v(g.n);
        for (int k = 0; k < g.n; ++k) {
            const Complex128 z = fn(Real128(g.nodes[static_cast<std::size_t>(k)]));
            v[k] = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        }
        out.push_back({std::move(name), std::move(v), std::move(fn)});
    };
    const Real128 lam = g.lambda;
    if (g.variable == Variable::Theta) {
        make("constant", [](Real128) { return Complex128(1); });
        make("cos_sq", [lam](Real128 t) { return Complex128(cosq(lam * t) * cosq(lam * t)); });
        make("cos_2u", [lam](Real128 t) { return Complex128(cosq(2 * lam * t)); });
        make("exp_cos", [lam](Real128 t) { return Complex128(expq(cosq(lam * t))); });
        make("chiral", [lam](Real128 t) {
            return exp128(Complex128(0, lam * t)) * Complex128(1 + sinq(2 * lam * t) / 2);
        });
    } else {
        make("gaussian", [](Real128 x) { return Complex128(expq(-x * x / 2)); });
        make("shifted_gaussian", [](Real128 x) { return Complex128(expq(-(x - 1) * (x - 1) / 2)); });
        make("chirped_gaussian", [](Real128 x) { return exp128(Complex128(-x * x / 2, x)); });
    }
    return out;
}

void require_band_limited(const GridRep& g, const TestState& s, double cutoff_fraction) {
    if (s.samples.size() != g.n)
        fail(ErrorCode::Precondition, "state '" + s.name + "' has the wrong length");
    const std::vector<double> kappa = g.wavenumbers();
    const double omega = 2.0 * pi / g.length();
    double peak = 0.0, tail = 0.0;
    for (std::size_t m = 0; m < kappa.size(); ++m) {
        Complex coef = 0.0;
        for (int k = 0; k < g.n; ++k)
            coef += s.samples[k] * std::exp(-I * (kappa[m] * (g.nodes[static_cast<std::size_t>(k)] - g.lo)));
        const double a = std::abs(coef) / g.n;
        peak = std::max(peak, a);
        if (std::abs(kappa[m] / omega) > cutoff_fraction * g.n) tail = std::max(tail, a);
    }
    if (peak == 0.0) fail(ErrorCode::Precondition, "state '" + s.name + "' is zero");
    if (tail > 1e-12 * peak) {
        std::ostringstream msg;
        msg << "state '" << s.name << "' is not band-limited: relative Fourier tail " << tail / peak;
        fail(ErrorCode::Precondition, msg.str());
    }
    if (g.variable == Variable::Xi) {
        const double top = s.samples.cwiseAbs().maxCoeff();
        const double edge = std::max(std::abs(s.samples[0]), std::abs(s.samples[g.n - 1]));
        if (edge > 1e-12 * top) {
            std::ostringstream msg;
            msg << "state '" << s.name << "' has not decayed at the domain edge (relative "
                << edge / top << "); enlarge L";
            fail(ErrorCode::Precondition, msg.str());
        }
    }
}

std::vector<RelationResidual> verify_iso_relations(const GridRep& g,
                                                   const std::vector<TestState>& states,
                                                   double tolerance) {
    const SpectralOps ops(g);
    const bool hyperbolic = ops.beta_sign() > 0;
    const Complex128 i(0, 1);
    auto comm = [](auto a, auto b, const Vector128& v) { return a(b(v)) - b(a(v)); };
    auto a3 = [&](const Vector128& v) { return ops.a3(v); };
    auto pp = [&](const Vector128& v) { return ops.pplus(v); };
    auto pm = [&](const Vector128& v) { return ops.pminus(v); };

    std::vector<RelationResidual> out;
    for (const TestState& s : states) {
        require_band_limited(g, s, 0.25);
        if (!s.profile) fail(ErrorCode::Precondition, "state '" + s.name + "' has no profile");
        const Vector128 psi = ops.sample(s.profile);
        const double norm = norm128(psi);
        auto record = [&](std::string rel, const Vector128& defect) {
            RelationResidual r{std::move(rel), s.name, norm128(defect) / norm, tolerance, false};
            r.pass = r.residual <= tolerance;
            out.push_back(std::move(r));
        };
        if (hyperbolic) {
            record("[A3,P+] = iP+", comm(a3, pp, psi) - i * pp(psi));
            record("[A3,P-] = -iP-", comm(a3, pm, psi) + i * pm(psi));
        } else {
            record("[A3,P+] = iP-", comm(a3, pp, psi) - i * pm(psi));
            record("[A3,P-] = -iP+", comm(a3, pm, psi) + i * pp(psi));
        }
        record("[P+,P-] = 0", comm(pp, pm, psi));
    }
    return out;
}

double transformed_norm2(const GridRep& g, const Vector& psi) {
    double s = 0.0;
    for (int k = 0; k < g.n; ++k) s += g.weights[static_cast<std::size_t>(k)] * std::norm(psi[k]);
    return s;
}

double momentum_norm2(const GridRep& g, const DeformationSpec& spec, const Vector& psi) {
    double s = 0.0;
    for (int k = 0; k < g.n; ++k) {
        const double jac = g.jacobian(k);
        const double wp = g.weights[static_cast<std::size_t>(k)] * jac;
        const double f = spec.f(g.momentum(k));
        // At the edge of a bounded momentum interval both the measure and f
        // vanish, and c + beta p^2 is cancellation noise; the ratio tends to
        // the transformed weight.
        const bool edge = std::abs(jac) < 1e-4 * std::sqrt(g.c);
        const double ratio = edge ? g.weights[static_cast<std::size_t>(k)] : wp / f;
        s += ratio * std::norm(psi[k]);
    }
    return s;
}

} // namespace defalg
