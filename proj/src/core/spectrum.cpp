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

#include "core/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace defalg {

namespace {

void finish(SpectrumReport& r) {
    r.deviations.resize(r.reference.size());
    r.max_dev = 0.0;
    for (std::size_t k = 0; k < r.reference.size(); ++k) {
        r.deviations[k] = std::abs(r.matched[k] - r.reference[k]);
        r.max_dev = std::max(r.max_dev, r.deviations[k]);
    }
}

} // namespace

SpectrumReport pair_sorted(std::vector<double> computed, std::vector<double> reference) {
    if (computed.size() != reference.size())
        fail(ErrorCode::InvalidParameter, "pair_sorted: length mismatch");
    std::sort(computed.begin(), computed.end());
    std::sort(reference.begin(), reference.end());
    SpectrumReport r;
    r.matched = computed;
    r.computed = std::move(computed);
    r.reference = std::move(reference);
    r.labels.resize(r.reference.size());
    std::iota(r.labels.begin(), r.labels.end(), 0);
    finish(r);
    return r;
}

SpectrumReport pair_nearest(std::vector<double> computed, std::vector<double> reference,
                            std::vector<std::int64_t> labels) {
    if (labels.size() != reference.size())
        fail(ErrorCode::InvalidParameter, "pair_nearest: one label per reference value");
    if (reference.size() > computed.size())
        fail(ErrorCode::InvalidParameter, "pair_nearest: more reference than computed values");

    std::vector<std::size_t> order(reference.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return reference[a] < reference[b]; });
    std::sort(computed.begin(), computed.end());

    SpectrumReport r;
    std::vector<bool> used(computed.size(), false);
    for (std::size_t k : order) {
        const double target = reference[k];
        auto it = std::lower_bound(computed.begin(), computed.end(), target);
        std::size_t hi = static_cast<std::size_t>(it - computed.begin());
        // Walk outwards to the nearest unclaimed value on either side.
        std::size_t best = computed.size();
        double best_d = INFINITY;
        for (std::size_t i = hi; i < computed.size(); ++i) {
            if (used[i]) continue;
            best = i;
            best_d = std::abs(computed[i] - target);
            break;
        }
        for (std::size_t i = hi; i-- > 0;) {
            if (used[i]) continue;
            if (std::abs(computed[i] - target) < best_d) best = i;
            break;
        }
        used[best] = true;
        r.reference.push_back(target);
        r.labels.push_back(labels[k]);
        r.matched.push_back(computed[best]);
    }
    r.computed = std::move(computed);
    finish(r);
    return r;
}

std::vector<Level> degeneracy_pattern(const std::vector<double>& sorted, double tol) {
    std::vector<Level> out;
    for (double v : sorted) {
        if (!out.empty() && std::abs(v - out.back().value) <= tol)
            ++out.back().multiplicity;
        else
            out.push_back({v, 1});
    }
    return out;
}

} // namespace defalg
