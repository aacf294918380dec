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

#include "core/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace defalg {

const char* to_string(Family f) noexcept {
    switch (f) {
    case Family::Trig: return "trig";
    case Family::Hyper: return "hyper";
    case Family::Flat: return "flat";
    case Family::Tabulated: return "tabulated";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    if (name == "trig") return Family::Trig;
    if (name == "hyper") return Family::Hyper;
    if (name == "flat") return Family::Flat;
    if (name == "tabulated") return Family::Tabulated;
    fail(ErrorCode::InvalidParameter, "unknown deformation family '" + name + "'");
}

namespace {

void require_positive_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        fail(ErrorCode::InvalidParameter, "integration constant c must be positive (f(0) > 0)");
}

// Fornberg's recursion for the first-derivative weights at x0 on nodes x.
std::vector<double> derivative_weights(double x0, const double* x, int n) {
    std::vector<double> c0(n, 0.0), c1(n, 0.0);
    double c_prev = 1.0;
    double dx0 = x[0] - x0;
    c0[0] = 1.0;
    for (int i = 1; i < n; ++i) {
        double c2 = 1.0;
        const double dxi = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                c1[i] = c_prev * (c0[i - 1] - dx0 * c1[i - 1]) / c2;
                c0[i] = -c_prev * dx0 * c0[i - 1] / c2;
            }
            c1[j] = (dxi * c1[j] - c0[j]) / c3;
            c0[j] = dxi * c0[j] / c3;
        }
        c_prev = c2;
        dx0 = dxi;
    }
    return c1;
}

} // namespace

std::vector<double> sampled_derivative(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    if (n < 5 || y.size() != x.size())
        fail(ErrorCode::InvalidParameter, "sampled derivative needs at least 5 samples");
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        const int start = std::clamp(i - 2, 0, n - 5);
        const std::vector<double> w = derivative_weights(x[i], x.data() + start, 5);
        double s = 0.0;
        for (int k = 0; k < 5; ++k) s += w[k] * y[start + k];
        d[i] = s;
    }
    return d;
}

DeformationSpec DeformationSpec::trig(double lambda, double c) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        fail(ErrorCode::InvalidParameter, "trig family needs lambda > 0");
    require_positive_c(c);
    DeformationSpec s;
    s.family_ = Family::Trig;
    s.beta_ = -lambda * lambda;
    s.c_ = c;
    s.bound_ = std::sqrt(c) / lambda;
    return s;
}

DeformationSpec DeformationSpec::hyper(double beta, double c) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        fail(ErrorCode::InvalidParameter, "hyper family needs beta > 0");
    require_positive_c(c);
    DeformationSpec s;
    s.family_ = Family::Hyper;
    s.beta_ = beta;
    s.c_ = c;
    return s;
}

DeformationSpec DeformationSpec::flat(double c) {
    require_positive_c(c);
    DeformationSpec s;
    s.family_ = Family::Flat;
    s.c_ = c;
    return s;
}

DeformationSpec DeformationSpec::tabulated(std::vector<double> p, std::vector<double> f) {
    if (p.size() != f.size() || p.size() < 5)
        fail(ErrorCode::InvalidParameter, "tabulated deformation needs at least 5 (p, f) samples");
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!std::isfinite(p[k]) || !std::isfinite(f[k]))
            fail(ErrorCode::InvalidParameter, "tabulated deformation has non-finite samples");
        if (k > 0 && !(p[k] > p[k - 1]))
            fail(ErrorCode::InvalidParameter, "tabulated p values must be strictly increasing");
    }
    if (p.front() >= 0.0) {
        // Half-line table: extend by evenness.
        std::vector<double> mp, mf;
        for (std::size_t k = p.size(); k-- > 0;) {
            if (p[k] == 0.0) continue;
            mp.push_back(-p[k]);
            mf.push_back(f[k]);
        }
        mp.insert(mp.end(), p.begin(), p.end());
        mf.insert(mf.end(), f.begin(), f.end());
        p = std::move(mp);
        f = std::move(mf);
    }
    DeformationSpec s;
    s.family_ = Family::Tabulated;
    s.bound_ = std::min(-p.front(), p.back());
    s.table_df_ = sampled_derivative(p, f);
    s.table_p_ = std::move(p);
    s.table_f_ = std::move(f);
    return s;
}

double DeformationSpec::lambda() const noexcept {
    return family_ == Family::Flat || family_ == Family::Tabulated ? 1.0 : std::sqrt(std::abs(beta_));
}

DeformationSpec DeformationSpec::with_bound(double a) const {
    if (!(a > 0.0)) fail(ErrorCode::InvalidParameter, "momentum bound a must be positive");
    if (a > bound_) fail(ErrorCode::InvalidParameter, "momentum bound exceeds the family's domain");
    DeformationSpec s = *this;
    s.bound_ = a;
    return s;
}

namespace {

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
    if (at < x.front() || at > x.back())
        fail(ErrorCode::InvalidParameter, "tabulated deformation evaluated outside its samples");
    auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.end()) return y.back();
    const std::size_t hi = static_cast<std::size_t>(it - x.begin());
    const std::size_t lo = hi - 1;
    const double t = (at - x[lo]) / (x[hi] - x[lo]);
    return (1.0 - t) * y[lo] + t * y[hi];
}

} // namespace

double DeformationSpec::f(double p) const {
    if (family_ == Family::Tabulated) return interpolate(table_p_, table_f_, p);
    const double arg = c_ + beta_ * p * p;
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

double DeformationSpec::df(double p) const {
    if (family_ == Family::Tabulated) return interpolate(table_p_, table_df_, p);
    if (family_ == Family::Flat) return 0.0;
    return beta_ * p / f(p);
}

void DeformationSpec::validate() const {
    if (family_ == Family::Tabulated) {
        for (std::size_t k = 0; k < table_p_.size(); ++k) {
            const double p = table_p_[k];
            if (std::abs(p) >= bound_ && std::abs(p) > 0.0) continue; // endpoints may vanish
            if (!(table_f_[k] > 0.0)) {
                std::ostringstream msg;
                msg << "tabulated f must be positive inside the domain; f(" << p
                    << ") = " << table_f_[k];
                fail(ErrorCode::InvalidParameter, msg.str());
            }
        }
        // Evenness wherever the mirror node exists.
        for (std::size_t k = 0; k < table_p_.size(); ++k) {
            const double p = table_p_[k];
            auto it = std::lower_bound(table_p_.begin(), table_p_.end(), -p - 1e-12);
            if (it == table_p_.end() || std::abs(*it + p) > 1e-12) continue;
            const double g = table_f_[static_cast<std::size_t>(it - table_p_.begin())];
            if (std::abs(g - table_f_[k]) > 1e-9 * std::max(1.0, std::abs(g))) {
                std::ostringstream msg;
                msg << "tabulated f is not even: f(" << p << ") != f(" << -p << ")";
                fail(ErrorCode::InvalidParameter, msg.str());
            }
        }
        return;
    }
    const double a = std::isfinite(bound_) ? bound_ : 10.0;
    for (int k = 1; k < 200; ++k) {
        const double p = a * (-1.0 + 2.0 * k / 200.0);
        const double fp = f(p), fm = f(-p);
        if (!(fp > 0.0)) fail(ErrorCode::InvalidParameter, "deformation function is not positive");
        if (std::abs(fp - fm) > 1e-14 * fp)
            fail(ErrorCode::InvalidParameter, "deformation function is not even");
    }
}

DeformationSpec read_tabulated(std::istream& in, const std::string& source) {
    std::vector<double> p, f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double a, b;
        if (!(row >> a)) {
            std::string rest;
            row.clear();
            if (row >> rest)
                fail(ErrorCode::InvalidParameter,
                     source + ":" + std::to_string(lineno) + ": expected two numbers");
            continue; // blank or comment-only line
        }
        std::string extra;
        if (!(row >> b) || (row >> extra))
            fail(ErrorCode::InvalidParameter,
                 source + ":" + std::to_string(lineno) + ": expected exactly two columns");
        p.push_back(a);
        f.push_back(b);
    }
    return DeformationSpec::tabulated(std::move(p), std::move(f));
}

DeformationSpec load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open tabulated deformation file '" + path + "'");
    return read_tabulated(in, path);
}

} // namespace defalg
