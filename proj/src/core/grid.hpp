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
#include <vector>

#include "core/deformation.hpp"
#include "core/extended.hpp"
#include "core/operator.hpp"
#include "core/spectrum.hpp"

namespace defalg {

enum class Variable { P, Xi, Theta };
enum class Boundary { Periodic, Antiperiodic, Dirichlet };

/// Half: theta in [-pi/(2 lambda), pi/(2 lambda)), the image of the bounded
/// momentum interval. Full: theta in [-pi/lambda, pi/lambda), which carries
/// the periodic and the antiperiodic sector of the half interval at once and
/// is closed under multiplication by cos(lambda theta), sin(lambda theta).
enum class ThetaSpan { Half, Full };

const char* to_string(Variable v) noexcept;
const char* to_string(Boundary b) noexcept;
Boundary boundary_from_string(const std::string& name);

/// Uniform periodic-trapezoid discretization of a 1-D momentum
/// representation in the variable where the position operator is a pure
/// derivative: lambda p = sqrt(c) sin(lambda theta) (trig),
/// lambda p = sqrt(c) sinh(lambda xi) (hyper), or p itself (flat).
struct GridRep {
    Variable variable = Variable::P;
    Family family = Family::Flat;
    Boundary bc = Boundary::Periodic;
    ThetaSpan span = ThetaSpan::Half;
    int n = 0;
    double lambda = 1.0;
    double c = 1.0;
    double lo = 0.0; // nodes cover [lo, hi)
    double hi = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string map;

    double length() const noexcept { return hi - lo; }
    /// Momentum p at node k.
    double momentum(int k) const;
    /// dp/d(variable) at node k; equals f(p_k) away from the flat family.
    double jacobian(int k) const;
    /// Fourier wavenumbers of the resolved modes (2 pi / length times the
    /// integer or half-integer mode set).
    std::vector<double> wavenumbers() const;
};

/// N >= 8 and even. Hyper and flat families need the half-width L of the
/// truncated domain; the trig family takes its domain from lambda.
GridRep build_grid(const DeformationSpec& spec, int n, std::optional<double> half_width,
                   Boundary bc = Boundary::Periodic, ThetaSpan span = ThetaSpan::Half);

/// Fourier differentiation matrix, exact on the resolved modes of the grid's
/// boundary condition. Skew-hermitian.
HermitianOperator derivative_matrix(const GridRep& g);

/// X = i f(p) d/dp, i.e. i d/d(variable) after the change of variable.
HermitianOperator position_operator(const GridRep& g);

struct PositionSpectrum {
    SpectrumReport report;
    std::vector<double> overlaps; // per retained level, same order as report.reference
    double min_overlap = 0.0;
};

/// Eigenvalues of X against l_n = 2 pi n / length (periodic) or
/// 2 pi (n + 1/2) / length (antiperiodic), for |l| < (N/4) * 2 pi / length.
/// For each retained level the eigenvector is compared with the analytic
/// eigenfunction sampled through the momentum pullback.
PositionSpectrum position_spectrum(const GridRep& g);

// -- inhomogeneous rotation generators -----------------------------------

struct IsoGenerators {
    HermitianOperator a3, pplus, pminus;
    int beta_sign = 0; // +1 for the xi grid, -1 for the theta grid
};

/// A3 = (i/lambda) d/d(variable), P+ = F + lambda P, P- = F - lambda P
/// (diagonal on the grid).
IsoGenerators iso_generators(const GridRep& g);

struct TestState {
    std::string name;
    Vector samples;  // double-precision samples, for band-limit screening
    Profile profile; // exact profile, resampled for the quad-precision checks
};

/// The shipped band-limited states for a theta or xi grid.
std::vector<TestState> default_states(const GridRep& g);

/// Throws ErrorCode::Precondition (naming the state) unless the state's
/// Fourier content beyond `cutoff_fraction * N` modes is below 1e-12 relative
/// and, on xi grids, the state has decayed below 1e-12 at both ends.
void require_band_limited(const GridRep& g, const TestState& s, double cutoff_fraction);

struct RelationResidual {
    std::string relation;
    std::string state;
    double residual = 0.0;  // ||(lhs - rhs) psi|| / ||psi||
    double tolerance = 0.0;
    bool pass = false;
};

/// [A3,P+-] and [P+,P-] on each state, applied in quadruple precision.
/// Theta grids must use ThetaSpan::Full.
std::vector<RelationResidual> verify_iso_relations(const GridRep& g,
                                                   const std::vector<TestState>& states,
                                                   double tolerance = 1e-8);

/// sum_k w_k |psi_k|^2 on the uniform transformed grid.
double transformed_norm2(const GridRep& g, const Vector& psi);
/// sum_k w^p_k |psi_k|^2 / f(p_k) with momentum-space weights
/// w^p_k = w_k dp/d(variable) and f evaluated from the deformation spec.
double momentum_norm2(const GridRep& g, const DeformationSpec& spec, const Vector& psi);

} // namespace defalg
