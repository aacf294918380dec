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

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace defalg {

enum class Family { Trig, Hyper, Flat, Tabulated };

const char* to_string(Family f) noexcept;
Family family_from_string(const std::string& name);

/// An even, positive deformation function f(p) of [X,P] = i f(P).
///
/// The parametric families are f = sqrt(c + beta p^2): trig (beta = -lambda^2,
/// bounded momentum |p| < sqrt(c)/lambda), hyper (beta > 0) and flat
/// (beta = 0). Tabulated functions are sampled (p, f) pairs; a table that only
/// covers p >= 0 is mirrored to the negative axis.
class DeformationSpec {
public:
    static DeformationSpec trig(double lambda, double c = 1.0);
    static DeformationSpec hyper(double beta, double c = 1.0);
    static DeformationSpec flat(double c = 1.0);
    static DeformationSpec tabulated(std::vector<double> p, std::vector<double> f);

    Family family() const noexcept { return family_; }
    double beta() const noexcept { return beta_; }
    double c() const noexcept { return c_; }
    /// sqrt(|beta|); 1 for the flat family.
    double lambda() const noexcept;
    /// Momentum cutoff a (infinite unless bounded by the family or overridden).
    double bound() const noexcept { return bound_; }
    DeformationSpec with_bound(double a) const;

    double f(double p) const;
    /// Analytic for parametric families, 4th-order finite differences on
    /// tabulated samples (linearly interpolated between nodes).
    double df(double p) const;

    const std::vector<double>& table_p() const noexcept { return table_p_; }
    const std::vector<double>& table_f() const noexcept { return table_f_; }
    const std::vector<double>& table_df() const noexcept { return table_df_; }

    /// Samples the open domain and checks f > 0 and f(-p) = f(p).
    void validate() const;

private:
    DeformationSpec() = default;

    Family family_ = Family::Flat;
    double beta_ = 0.0;
    double c_ = 1.0;
    double bound_ = std::numeric_limits<double>::infinity();
    std::vector<double> table_p_, table_f_, table_df_;
};

/// Two-column text (p f) with strictly increasing p; '#' starts a comment.
DeformationSpec read_tabulated(std::istream& in, const std::string& source = "<stream>");
DeformationSpec load_tabulated(const std::string& path);

/// Derivative of samples on an arbitrary increasing grid: centered 5-point
/// stencils in the interior, one-sided 5-point stencils at the two nodes
/// closest to each edge.
std::vector<double> sampled_derivative(const std::vector<double>& x, const std::vector<double>& y);

} // namespace defalg
