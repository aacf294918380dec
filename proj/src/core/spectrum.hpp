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

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace defalg {

/// Computed eigenvalues against an analytic reference.
///
/// `computed` is always the full sorted spectrum. `reference` is sorted
/// ascending and may be a subset (e.g. modes clear of the Nyquist band);
/// `matched[k]` is the computed value paired with `reference[k]`, `labels[k]`
/// its quantum number, `deviations[k] = |matched[k] - reference[k]|`.
struct SpectrumReport {
    std::vector<double> computed;
    std::vector<double> reference;
    std::vector<std::int64_t> labels;
    std::vector<double> matched;
    std::vector<double> deviations;
    double max_dev = 0.0;
    nlohmann::json context = nlohmann::json::object();
};

/// Pairs two equal-length sorted multisets index by index. Labels default to
/// the pair position.
SpectrumReport pair_sorted(std::vector<double> computed, std::vector<double> reference);

/// Greedy nearest-value pairing: reference values are taken in ascending
/// order and each claims the closest computed value not yet claimed.
SpectrumReport pair_nearest(std::vector<double> computed, std::vector<double> reference,
                            std::vector<std::int64_t> labels);

struct Level {
    double value;
    int multiplicity;
};

/// Groups a sorted list into clusters whose neighbours differ by <= tol.
std::vector<Level> degeneracy_pattern(const std::vector<double>& sorted, double tol);

} // namespace defalg
