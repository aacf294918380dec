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

#include <vector>

#include "core/operator.hpp"
#include "core/spectrum.hpp"

namespace defalg {

/// Spin label j in {1/2, 1, 3/2, ...}, stored exactly as the integer 2j.
class Spin {
public:
    /// Rejects anything that is not a positive half-integer.
    static Spin from_double(double j);
    static Spin from_twice(int twice_j);

    int twice() const noexcept { return twice_; }
    double value() const noexcept { return 0.5 * twice_; }
    bool is_integer() const noexcept { return twice_ % 2 == 0; }
    int dim() const noexcept { return twice_ + 1; }
    double casimir() const noexcept { return value() * (value() + 1.0); }

    /// m value of basis row `k` (descending order: row 0 is m = j).
    double m_of_row(int k) const noexcept { return value() - k; }

private:
    explicit Spin(int twice) : twice_(twice) {}
    int twice_ = 1;
};

inline constexpr double kDefaultSpinCap = 5000.0;

struct SpinRep {
    Spin j = Spin::from_twice(1);
    HermitianOperator jx, jy, jz;
    Eigen::Index dim() const { return jz.n(); }
};

/// Standard ladder-operator construction in the descending-m basis.
SpinRep build_spin_rep(double j, double cap = kDefaultSpinCap);

/// Jx^2 + Jy^2 + Jz^2.
HermitianOperator casimir_spin(const SpinRep& rep);

struct Su2Residuals {
    double xy = 0.0;        // max|[Jx,Jy] - iJz|
    double zx = 0.0;        // max|[Jz,Jx] - iJy|
    double yz = 0.0;        // max|[Jy,Jz] - iJx|
    double casimir = 0.0;   // max|J^2 - j(j+1) I|
    double commute = 0.0;   // max over k of max|[J^2, J_k]|
    double hermitian = 0.0; // max hermitian defect of Jx, Jy, Jz

    double worst() const;
};
Su2Residuals su2_residuals(const SpinRep& rep);

// -- deformed position/momentum pair built on a spin rep ------------------

struct DeformedTriple {
    HermitianOperator x, p, f;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Spin j = Spin::from_twice(1);
    Eigen::Index dim() const { return x.n(); }
};

/// X = lambda2 Jx, P = lambda1 Jy, F = lambda1 lambda2 Jz. Requires
/// lambda1^2 lambda2^2 j(j+1) = 1 to relative 1e-10.
DeformedTriple build_deformed_triple(const SpinRep& rep, double lambda1, double lambda2);

struct LambdaPair {
    double lambda1;
    double lambda2;
};

/// The pair with lambda1 = ratio * lambda2 that satisfies the constraint.
LambdaPair constrained_lambdas(Spin j, double ratio = 1.0);

struct TripleResiduals {
    double xp = 0.0; // max|[X,P] - iF|
    double xf = 0.0; // max|[X,F] + i lambda2^2 P|
    double pf = 0.0; // max|[P,F] - i lambda1^2 X|
    double worst() const;
};
TripleResiduals triple_residuals(const DeformedTriple& t);

enum class Sector { Positive, NonNegative, Full };

/// max-abs entry of Pi ([X,P] - i sqrt(1 - lambda1^2 X^2 - lambda2^2 P^2)) Pi,
/// Pi projecting onto the Jz eigenspace selected by `sector`.
double nonlinear_relation_residual(const DeformedTriple& t, Sector sector);

inline double verify_nonlinear_relation(const DeformedTriple& t, bool include_m_zero = true) {
    return nonlinear_relation_residual(t, include_m_zero ? Sector::NonNegative : Sector::Positive);
}

// -- deformed oscillator --------------------------------------------------

/// E_n = (j(j+1) - (j-n)^2) / (2 sqrt(j(j+1))).
double oscillator_level(Spin j, double n);

/// Levels n = 0..floor(j). `reference` holds the same levels evaluated in
/// the m = j - n form.
SpectrumReport oscillator_spectrum_analytic(Spin j);

/// Diagonalizes (P^2 + X^2)/2 on the full 2j+1 space and pairs it with the
/// multiset {E(|m|) : m = -j..j}. Only lambda1 = lambda2 is supported.
SpectrumReport oscillator_spectrum_matrix(const DeformedTriple& t);

struct ContractionPoint {
    double j;
    int n;
    double energy;
    double deviation; // |E_n - (n + 1/2)|
    double bound;     // (2n^2 + 2n + 1) / (2j)
};

std::vector<ContractionPoint> contraction_study(const std::vector<Spin>& js, int n_max);

/// lambda1^2 at lambda1 = lambda2 under the constraint; the structure
/// constant of [P,F] = i lambda1^2 X that vanishes as j grows.
double contraction_structure_constant(Spin j);

} // namespace defalg
