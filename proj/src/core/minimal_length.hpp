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

#include "core/deformation.hpp"

namespace defalg {

/// l0 = (pi/2) / integral_0^a dp / f(p).
///
/// Parametric families are integrated in the variable where dp/f is the
/// constant measure (theta or xi), which removes the 1/f endpoint
/// singularity of the trig family. A divergent integral (hyper or flat with
/// a = infinity) gives exactly 0. Tabulated samples use the trapezoid rule
/// and must stay positive on [0, a].
double minimal_length_quadrature(const DeformationSpec& spec);

/// Closed form of the same quantity for the parametric families.
double minimal_length_analytic(const DeformationSpec& spec);

struct UncertaintyReport {
    double min_uncertainty = 0.0; // sqrt of the minimal <(X - x0)^2>
    double analytic_l0 = 0.0;
    double shift = 0.0;           // optimal x0
    int n = 0;                    // interior grid nodes
    int iterations = 0;
    double last_relative_change = 0.0;
    bool converged = false;
};

/// Lowest eigenvalue of the Dirichlet-discretized (X - x0)^2 on the theta
/// interval: -d^2/dtheta^2 from the 3-point stencil, the cross term from
/// central differences, N interior nodes.
double dirichlet_shifted_variance(const DeformationSpec& spec, int n, double shift);

/// Minimizes dirichlet_shifted_variance over the shift by golden-section
/// search on [-0.5/lambda, 0.5/lambda]. Trig family only; N >= 32.
UncertaintyReport dirichlet_min_uncertainty(const DeformationSpec& spec, int n);

} // namespace defalg
