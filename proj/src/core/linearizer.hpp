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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/deformation.hpp"
#include "core/grid.hpp"
#include "core/operator.hpp"

namespace defalg {

// -- closure of ff' = alpha + beta p + gamma f ----------------------------

struct ClosureFit {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double residual = 0.0; ///< RMS of ff' - alpha - beta p - gamma f over the samples
    std::vector<double> grid;
    bool reduced_basis = false;
    int rank = 3;
    std::string diagnostic;
};

/// Least-squares fit of ff' on span{1, p, f} at `m` symmetric midpoint
/// samples of (-a, a), or of `window` when the momentum is unbounded.
/// Tabulated functions are fitted on their interior table nodes. Collinear
/// columns (rank below 3 at relative threshold 1e-12) are dropped and the
/// remaining basis is fitted; the dropped coefficients are reported as 0.
ClosureFit fit_closure_coefficients(const DeformationSpec& spec, int m = 200,
                                    double window = 2.0);

/// The even positive solution f = sqrt(c + beta p^2) of ff' = beta p.
/// Throws InvalidParameter for c <= 0 and NumericalConsistency if the ODE
/// residual at sampled interior points exceeds 1e-12.
DeformationSpec solve_closure_ode(double beta, double c = 1.0);

/// max |f f' - beta p| over interior samples of the spec's domain.
double closure_ode_residual(const DeformationSpec& spec, double beta, int samples = 101);

// -- expansion to so(2,1) / so(3) -------------------------------------------

struct HermiticityFlags {
    bool a1 = false, a2 = false, a3 = false;
    bool operator==(const HermiticityFlags&) const = default;
};

/// The ε-sign table: which of Ã1, Ã2, Ã3 are stated to be hermitian.
HermiticityFlags expected_hermiticity(int beta_sign, int epsilon);

struct ExpansionSet {
    GridRep grid;
    int epsilon = 1;
    int beta_sign = 0;
    double lambda = 1.0;
    IsoGenerators iso;
    HermitianOperator pi_plus, pi_minus;
    HermitianOperator pt_plus, pt_minus;
    HermitianOperator at1, at2, at3;
    double casimir_value = 0.0; ///< scalar value of C2 on the grid
    Complex scale{1.0, 0.0};    ///< principal sqrt(epsilon lambda^2 C2)
    HermiticityFlags flags;     ///< observed at relative tolerance 1e-10
};

/// Pi+- = [A3^2, P+-], Pt+- = Pi+- / (2 sqrt(epsilon lambda^2 C2)),
/// At1 = (Pt+ - Pt-)/2, At2 = (Pt+ + Pt-)/2, At3 = A3. Throws
/// RepresentationInconsistency unless C2 is scalar to 1e-12 relative.
ExpansionSet build_expansion(const GridRep& g, int epsilon);

struct ExpansionReport {
    std::vector<RelationResidual> relations; ///< gating checks
    std::vector<RelationResidual> literal;   ///< printed sign forms, informational
    std::vector<std::pair<std::string, double>> casimir_values; ///< per state
};

/// State-wise relations of the expansion, applied in quadruple precision.
/// Every state must be band-limited to N/8 modes.
ExpansionReport verify_expansion_relations(const ExpansionSet& e,
                                           const std::vector<TestState>& states,
                                           double tolerance = 1e-8);

/// Relative residual of (P^2 + F^2/lambda^2 - c/lambda^2) psi on a theta grid.
std::vector<RelationResidual> theta_casimir_residuals(const GridRep& g,
                                                      const std::vector<TestState>& states,
                                                      double tolerance = 1e-10);

} // namespace defalg
