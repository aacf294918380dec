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
#include <string>

#include <Eigen/Dense>

namespace defalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex I{0.0, 1.0};

enum class Symmetry { Hermitian, SkewHermitian, General };

const char* to_string(Symmetry s) noexcept;

double max_abs(const Matrix& m);
double hermitian_defect(const Matrix& m);  ///< max|A - A^dagger|
double skew_defect(const Matrix& m);       ///< max|A + A^dagger|

/// Classifies by the smaller of the two defects, scaled by max(1, max|A|).
Symmetry classify(const Matrix& m, double rel_tol);

/// Dense square complex matrix with a declared symmetry flag. The flag is
/// checked on construction: a hermitian (skew) declaration requires
/// max|A -+ A^dagger| <= 1e-12 * n * max(1, max|A|).
class HermitianOperator {
public:
    HermitianOperator() = default;
    HermitianOperator(Matrix entries, Symmetry symmetry);

    /// Takes whatever symmetry the entries exhibit at tolerance `rel_tol`.
    static HermitianOperator classified(Matrix entries, double rel_tol = 1e-10);

    Eigen::Index n() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    Symmetry symmetry() const noexcept { return symmetry_; }

    Vector apply(const Vector& v) const { return entries_ * v; }

private:
    Matrix entries_;
    Symmetry symmetry_ = Symmetry::General;
};

/// AB - BA, or AB + BA when `anti` is set. The symmetry flag of the result
/// follows from the operands': two hermitian (or two skew) operands give a
/// skew commutator and a hermitian anticommutator; mixed operands swap that.
HermitianOperator commutator(const HermitianOperator& a, const HermitianOperator& b,
                             bool anti = false);

/// Ascending eigenvalues of a hermitian matrix.
RealVector hermitian_eigenvalues(const Matrix& m);

struct HermitianEigen {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};
HermitianEigen hermitian_eigensystem(const Matrix& m);

/// Principal square root of a positive semidefinite hermitian matrix.
/// Eigenvalues in [-clamp, clamp] are treated as roundoff and set to zero
/// (a zero eigenvalue perturbed by 1e-17 would otherwise contribute 3e-9);
/// a more negative eigenvalue raises ErrorCode::NumericalConsistency.
Matrix psd_sqrt(const Matrix& m, double clamp = 1e-10);

/// Row-major array of rows, each entry an [re, im] pair.
std::string matrix_to_json(const Matrix& m);

} // namespace defalg
