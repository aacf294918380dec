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


#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace defalg {

struct GridRep;

using Real128 = __float128;
using Complex128 = std::complex<Real128>;
using Vector128 = std::vector<Complex128>;
/// A test state as a function of the transformed variable.
using Profile = std::function<Complex128(Real128)>;

Complex128 exp128(Complex128 z);
double norm128(const Vector128& v);
double abs128(Complex128 z);

Vector128 operator+(const Vector128& a, const Vector128& b);
Vector128 operator-(const Vector128& a, const Vector128& b);
Vector128 operator*(Complex128 s, const Vector128& v);

/// Quadruple-precision application of the inhomogeneous rotation generators
/// on a periodic theta or xi grid. The multipliers e^{+-lambda xi} reach
/// e^{lambda L} at the domain edge, so double-precision roundoff in a chain
/// of spectral derivatives is amplified far beyond 1e-8; the state-wise
/// relation checks therefore run here. Not thread-safe per instance.
class SpectralOps {
public:
    explicit SpectralOps(const GridRep& g);
    ~SpectralOps();
    SpectralOps(SpectralOps&&) noexcept;
    SpectralOps& operator=(SpectralOps&&) noexcept;

    int n() const noexcept;
    int beta_sign() const noexcept;
    Vector128 sample(const Profile& f) const;
    /// (i/lambda) d/d(variable), Nyquist mode taken as -N/2.
    Vector128 a3(const Vector128& v) const;
    Vector128 pplus(const Vector128& v) const;
    Vector128 pminus(const Vector128& v) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace defalg
