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

#include "core/operator.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace defalg {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::Constraint: return "constraint";
    case ErrorCode::NumericalConsistency: return "numerical-consistency";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::RepresentationInconsistency: return "representation-inconsistency";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

const char* to_string(Symmetry s) noexcept {
    switch (s) {
    case Symmetry::Hermitian: return "hermitian";
    case Symmetry::SkewHermitian: return "skew-hermitian";
    case Symmetry::General: return "general";
    }
    return "unknown";
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermitian_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

double skew_defect(const Matrix& m) { return max_abs(m + m.adjoint()); }

Symmetry classify(const Matrix& m, double rel_tol) {
    const double scale = std::max(1.0, max_abs(m));
    const double h = hermitian_defect(m) / scale;
    const double s = skew_defect(m) / scale;
    if (h <= rel_tol && h <= s) return Symmetry::Hermitian;
    if (s <= rel_tol) return Symmetry::SkewHermitian;
    return Symmetry::General;
}

HermitianOperator::HermitianOperator(Matrix entries, Symmetry symmetry)
    : entries_(std::move(entries)), symmetry_(symmetry) {
    if (entries_.rows() != entries_.cols())
        fail(ErrorCode::InvalidParameter, "operator matrix must be square");
    const double n = static_cast<double>(entries_.rows());
    const double tol = 1e-12 * std::max(1.0, n) * std::max(1.0, max_abs(entries_));
    if (symmetry_ == Symmetry::Hermitian && hermitian_defect(entries_) > tol)
        fail(ErrorCode::NumericalConsistency, "operator declared hermitian is not");
    if (symmetry_ == Symmetry::SkewHermitian && skew_defect(entries_) > tol)
        fail(ErrorCode::NumericalConsistency, "operator declared skew-hermitian is not");
}

HermitianOperator HermitianOperator::classified(Matrix entries, double rel_tol) {
    HermitianOperator op;
    op.symmetry_ = classify(entries, rel_tol);
    op.entries_ = std::move(entries);
    return op;
}

HermitianOperator commutator(const HermitianOperator& a, const HermitianOperator& b, bool anti) {
    if (a.n() != b.n())
        fail(ErrorCode::InvalidParameter, "commutator: dimension mismatch (" +
                                              std::to_string(a.n()) + " vs " +
                                              std::to_string(b.n()) + ")");
    const Matrix ab = a.matrix() * b.matrix();
    const Matrix ba = b.matrix() * a.matrix();
    Matrix c = anti ? Matrix(ab + ba) : Matrix(ab - ba);

    auto parity = [](Symmetry s) {
        return s == Symmetry::Hermitian ? 1 : s == Symmetry::SkewHermitian ? -1 : 0;
    };
    const int p = parity(a.symmetry()) * parity(b.symmetry());
    Symmetry out = Symmetry::General;
    if (p != 0) {
        const bool hermitian = anti ? (p > 0) : (p < 0);
        out = hermitian ? Symmetry::Hermitian : Symmetry::SkewHermitian;
    }
    return HermitianOperator(std::move(c), out);
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::NumericalConsistency, "hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

HermitianEigen hermitian_eigensystem(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::NumericalConsistency, "hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& m, double clamp) {
    const HermitianEigen eig = hermitian_eigensystem(m);
    RealVector root(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        const double v = eig.values[k];
        if (v < -clamp) {
            std::ostringstream msg;
            msg << "matrix square root: argument is indefinite (eigenvalue " << v
                << " below -" << clamp << ")";
            fail(ErrorCode::NumericalConsistency, msg.str());
        }
        root[k] = v > clamp ? std::sqrt(v) : 0.0;
    }
    return eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

std::string matrix_to_json(const Matrix& m) {
    std::string out = "[";
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out += r ? ",[" : "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g]", c ? "," : "", m(r, c).real(),
                          m(r, c).imag());
            out += buf;
        }
        out += "]";
    }
    out += "]";
    return out;
}

} // namespace defalg
