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

#include "core/minimal_length.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <Eigen/Eigenvalues>

#include "core/error.hpp"

namespace defalg {

using std::numbers::pi;

namespace {

double integrate(auto fn, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 15, 1e-14);
}

} // namespace

double minimal_length_quadrature(const DeformationSpec& spec) {
    const double a = spec.bound();
    const double lam = spec.lambda();
    const double sc = std::sqrt(spec.c());
    double integral = 0.0;

    switch (spec.family()) {
    case Family::Trig: {
        const double edge = sc / lam; // f vanishes at p = edge
        if (a < edge) {
            integral = integrate([&](double p) { return 1.0 / spec.f(p); }, 0.0, a);
            break;
        }
        // 1/sqrt(lambda^2 (edge - p)(edge + p)) with the distance to the
        // singular endpoint supplied by the quadrature, free of the
        // cancellation in c - lambda^2 p^2.
        boost::math::quadrature::tanh_sinh<double> ts;
        integral = ts.integrate(
            [&](double p, double pc) {
                const double gap = pc > 0.0 ? pc : edge - p;
                return 1.0 / (lam * std::sqrt(gap * (edge + p)));
            },
            0.0, edge, 1e-15);
        break;
    }
    case Family::Hyper: {
        if (!std::isfinite(a)) return 0.0;
        const double top = std::asinh(lam * a / sc) / lam;
        integral = integrate(
            [&](double x) {
                const double p = sc * std::sinh(lam * x) / lam;
                return sc * std::cosh(lam * x) / spec.f(p);
            },
            0.0, top);
        break;
    }
    case Family::Flat: {
        if (!std::isfinite(a)) return 0.0;
        integral = integrate([&](double p) { return 1.0 / spec.f(p); }, 0.0, a);
        break;
    }
    case Family::Tabulated: {
        const auto& p = spec.table_p();
        const auto& f = spec.table_f();
        double prev_p = 0.0, prev_g = 0.0;
        bool started = false;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] < 0.0 || p[k] > a) continue;
            if (!(f[k] > 0.0) || !std::isfinite(f[k])) {
                std::ostringstream msg;
                msg << "1/f is not integrable from the samples: f(" << p[k] << ") = " << f[k]
                    << " on [0, " << a << "]";
                fail(ErrorCode::NumericalConsistency, msg.str());
            }
            const double g = 1.0 / f[k];
            if (!started && p[k] > 0.0) {
                // Table without a p = 0 node: start from the interpolated value.
                const double g0 = 1.0 / spec.f(0.0);
                integral += 0.5 * (g0 + g) * p[k];
            } else if (started) {
                integral += 0.5 * (prev_g + g) * (p[k] - prev_p);
            }
            started = true;
            prev_p = p[k];
            prev_g = g;
        }
        break;
    }
    }
    if (!(integral > 0.0) || !std::isfinite(integral))
        fail(ErrorCode::NumericalConsistency, "minimal-length integral is not finite and positive");
    return 0.5 * pi / integral;
}

double minimal_length_analytic(const DeformationSpec& spec) {
    const double a = spec.bound();
    switch (spec.family()) {
    case Family::Trig: return spec.lambda();
    case Family::Hyper:
        if (!std::isfinite(a)) return 0.0;
        return 0.5 * pi * std::sqrt(spec.beta()) / std::asinh(std::sqrt(spec.beta() / spec.c()) * a);
    case Family::Flat:
        if (!std::isfinite(a)) return 0.0;
        return 0.5 * pi * std::sqrt(spec.c()) / a;
    case Family::Tabulated: break;
    }
    fail(ErrorCode::Unsupported, "no closed-form minimal length for tabulated deformations");
}

double dirichlet_shifted_variance(const DeformationSpec& spec, int n, double shift) {
    if (spec.family() != Family::Trig)
        fail(ErrorCode::Unsupported, "the Dirichlet minimal-uncertainty problem is posed for the trig family");
    if (n < 32) fail(ErrorCode::InvalidParameter, "Dirichlet grid needs N >= 32");
    const double h = (pi / spec.lambda()) / (n + 1);

    // Hermitian tridiagonal: diag 2/h^2 + x0^2, superdiag -1/h^2 - i x0/h.
    // A diagonal unitary gauge maps it to the real tridiagonal matrix with
    // the moduli of the off-diagonal entries.
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 2.0 / (h * h) + shift * shift);
    const double off = std::hypot(1.0 / (h * h), shift / h);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -off);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::NumericalConsistency, "tridiagonal eigensolver did not converge");
    return solver.eigenvalues()[0];
}

UncertaintyReport dirichlet_min_uncertainty(const DeformationSpec& spec, int n) {
    const double lam = spec.lambda();
    auto objective = [&](double x0) { return dirichlet_shifted_variance(spec, n, x0); };

    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = -0.5 / lam, b = 0.5 / lam;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = objective(c), fd = objective(d);
    double best = std::min(fc, fd);

    UncertaintyReport r;
    r.n = n;
    r.analytic_l0 = lam;
    while (b - a > 1e-8) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = objective(d);
        }
        const double next = std::min(fc, fd);
        r.last_relative_change = std::abs(next - best) / std::max(std::abs(best), 1e-300);
        best = next;
        ++r.iterations;
    }
    r.shift = 0.5 * (a + b);
    const double at_shift = objective(r.shift);
    best = std::min(best, at_shift);
    r.converged = r.last_relative_change < 1e-6;
    if (!r.converged)
        fail(ErrorCode::NumericalConsistency, "shift search did not converge");
    r.min_uncertainty = std::sqrt(std::max(best, 0.0));
    return r;
}

} // namespace defalg
