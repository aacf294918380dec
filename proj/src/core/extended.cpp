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


#include "core/extended.hpp"

#include <cstring>
#include <mutex>

extern "C" {
#include <quadmath.h>
}
#include <fftw3.h>

#include "core/error.hpp"
#include "core/grid.hpp"

namespace defalg {
namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

Real128 pi128() {
    static const Real128 v = acosq(Real128(-1));
    return v;
}

} // namespace

Complex128 exp128(Complex128 z) {
    const Real128 r = expq(z.real());
    return {r * cosq(z.imag()), r * sinq(z.imag())};
}

double norm128(const Vector128& v) {
    Real128 s = 0;
    for (const Complex128& x : v) s += x.real() * x.real() + x.imag() * x.imag();
    return static_cast<double>(sqrtq(s));
}

double abs128(Complex128 z) {
    return static_cast<double>(sqrtq(z.real() * z.real() + z.imag() * z.imag()));
}

Vector128 operator+(const Vector128& a, const Vector128& b) {
    Vector128 r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector128 operator-(const Vector128& a, const Vector128& b) {
    Vector128 r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector128 operator*(Complex128 s, const Vector128& v) {
    Vector128 r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

struct SpectralOps::Impl {
    int n = 0;
    int beta_sign = 0;
    Real128 lambda = 1;
    std::vector<Real128> nodes, kappa, pp, pm;
    fftwq_complex* buf = nullptr;
    fftwq_plan fwd = nullptr, bwd = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftwq_destroy_plan(fwd);
        if (bwd) fftwq_destroy_plan(bwd);
        if (buf) fftwq_free(buf);
    }
};

SpectralOps::SpectralOps(const GridRep& g) : impl_(std::make_unique<Impl>()) {
    if (g.variable == Variable::P)
        fail(ErrorCode::Unsupported, "the flat family has no inhomogeneous rotation generators");
    if (g.bc != Boundary::Periodic)
        fail(ErrorCode::Precondition, "generators P+- are built on periodic grids");
    if (g.variable == Variable::Theta && g.span != ThetaSpan::Full)
        fail(ErrorCode::Unsupported,
             "P+- mix the periodic and antiperiodic sectors of the half theta span; "
             "build the grid with ThetaSpan::Full");
    Impl& d = *impl_;
    d.n = g.n;
    d.beta_sign = g.variable == Variable::Xi ? 1 : -1;
    d.lambda = g.lambda;
    Real128 lo, length;
    if (d.beta_sign < 0) {
        length = 2 * pi128() / d.lambda;
        lo = -pi128() / d.lambda;
    } else {
        lo = g.lo;
        length = Real128(g.hi) - Real128(g.lo);
    }
    const Real128 h = length / g.n;
    const Real128 sc = sqrtq(Real128(g.c));
    d.nodes.resize(g.n);
    d.kappa.resize(g.n);
    d.pp.resize(g.n);
    d.pm.resize(g.n);
    for (int k = 0; k < g.n; ++k) {
        d.nodes[k] = lo + k * h;
        const int m = k < g.n / 2 ? k : k - g.n;
        d.kappa[k] = 2 * pi128() * m / length;
        const Real128 u = d.lambda * d.nodes[k];
        if (d.beta_sign > 0) {
            d.pp[k] = sc * expq(u);
            d.pm[k] = sc * expq(-u);
        } else {
            d.pp[k] = sc * (cosq(u) + sinq(u));
            d.pm[k] = sc * (cosq(u) - sinq(u));
        }
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    d.buf = static_cast<fftwq_complex*>(fftwq_malloc(sizeof(fftwq_complex) * g.n));
    d.fwd = fftwq_plan_dft_1d(g.n, d.buf, d.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    d.bwd = fftwq_plan_dft_1d(g.n, d.buf, d.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!d.buf || !d.fwd || !d.bwd) fail(ErrorCode::ResourceLimit, "FFT plan allocation failed");
}

SpectralOps::~SpectralOps() = default;
SpectralOps::SpectralOps(SpectralOps&&) noexcept = default;
SpectralOps& SpectralOps::operator=(SpectralOps&&) noexcept = default;

int SpectralOps::n() const noexcept { return impl_->n; }
int SpectralOps::beta_sign() const noexcept { return impl_->beta_sign; }

Vector128 SpectralOps::sample(const Profile& f) const {
    Vector128 v(impl_->n);
    for (int k = 0; k < impl_->n; ++k) v[k] = f(impl_->nodes[k]);
    return v;
}

Vector128 SpectralOps::a3(const Vector128& v) const {
    Impl& d = *impl_;
    if (static_cast<int>(v.size()) != d.n) fail(ErrorCode::Precondition, "vector length mismatch");
    for (int k = 0; k < d.n; ++k) {
        d.buf[k][0] = v[k].real();
        d.buf[k][1] = v[k].imag();
    }
    fftwq_execute(d.fwd);
    // (i/lambda) * (i kappa) = -kappa/lambda, with the 1/N of the inverse.
    for (int k = 0; k < d.n; ++k) {
        const Real128 s = -d.kappa[k] / (d.lambda * d.n);
        d.buf[k][0] *= s;
        d.buf[k][1] *= s;
    }
    fftwq_execute(d.bwd);
    Vector128 r(d.n);
    for (int k = 0; k < d.n; ++k) r[k] = Complex128(d.buf[k][0], d.buf[k][1]);
    return r;
}

Vector128 SpectralOps::pplus(const Vector128& v) const {
    Vector128 r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = impl_->pp[k] * v[k];
    return r;
}

Vector128 SpectralOps::pminus(const Vector128& v) const {
    Vector128 r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = impl_->pm[k] * v[k];
    return r;
}

} // namespace defalg
