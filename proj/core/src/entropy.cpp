// Copyright 2026 The cvpv-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvpv/entropy.hpp"

#include <cmath>
#include <limits>

namespace cvpv {

std::vector<Fraction> freq(const std::vector<int>& outcomes, int alphabet_size) {
    if (outcomes.empty())
        throw EmptyString("freq: outcome string is empty");
    if (alphabet_size < 1)
        throw DomainError("freq: alphabet must be non-empty");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(alphabet_size), 0);
    for (int x : outcomes) {
        if (x < 0 || x >= alphabet_size)
            throw DomainError("freq: symbol outside the alphabet");
        ++counts[static_cast<std::size_t>(x)];
    }
    std::vector<Fraction> q(static_cast<std::size_t>(alphabet_size));
    std::int64_t n = static_cast<std::int64_t>(outcomes.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = Fraction{counts[i], n};
        total += counts[i];
    }
    if (total != n)
        throw DomainError("freq: counts do not sum to n"); // unreachable
    return q;
}

double MinTradeoff::eval(const std::vector<double>& q) const {
    if (q.size() != coeffs.size())
        throw DimensionMismatch("min-tradeoff: distribution has wrong alphabet size");
    double v = c0;
    for (std::size_t i = 0; i < q.size(); ++i)
        v += coeffs[i] * q[i];
    return v;
}

double MinTradeoff::eval(const std::vector<Fraction>& q) const {
    std::vector<double> d(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        d[i] = q[i].value();
    return eval(d);
}

double h_rate_enumerate(const MinTradeoff& f,
                        const std::function<bool(const std::vector<int>&)>& accepted,
                        int n, int alphabet_size) {
    if (n < 1)
        throw DomainError("h_rate: need at least one round");
    double strings = std::pow(static_cast<double>(alphabet_size), n);
    if (strings > (1 << 22))
        throw DomainError("h_rate: acceptance set too large to enumerate");

    std::vector<int> x(static_cast<std::size_t>(n), 0);
    bool found = false;
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        if (accepted(x)) {
            found = true;
            best = std::min(best, f.eval(freq(x, alphabet_size)));
        }
        int pos = n - 1;
        while (pos >= 0 && x[static_cast<std::size_t>(pos)] == alphabet_size - 1) {
            x[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++x[static_cast<std::size_t>(pos)];
    }
    if (!found)
        throw EmptyAcceptanceSet("h_rate: no accepted string");
    return best;
}

double h_rate_vertices(const MinTradeoff& f,
                       const std::vector<std::vector<double>>& vertices) {
    if (vertices.empty())
        throw EmptyAcceptanceSet("h_rate: frequency region has no vertices");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices)
        best = std::min(best, f.eval(v));
    return best;
}

double eat_bound(const EatParams& p) {
    if (p.n < 1)
        throw DomainError("eat_bound: need n >= 1");
    if (p.c1 < 0 || p.c0 < 0)
        throw DomainError("eat_bound: correction coefficients must be non-negative");
    return p.n * p.h - p.c1 * std::sqrt(p.n) - p.c0;
}

double g_correction(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw DomainError("g_correction: epsilon must lie in (0, 1)");
    // 1 - sqrt(1 - eps^2) cancels catastrophically for small eps; the
    // equivalent eps^2 / (1 + sqrt(1 - eps^2)) keeps full precision.
    double root = std::sqrt((1.0 - eps) * (1.0 + eps));
    return -(2.0 * std::log2(eps) - std::log2(1.0 + root));
}

double minentropy_from_smooth(double smooth_hmin, double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw DomainError("minentropy_from_smooth: epsilon must lie in [0, 1)");
    if (smooth_hmin < 0.0)
        throw DomainError("minentropy_from_smooth: smooth min-entropy must be >= 0");
    return -std::log2(eps + std::exp2(-smooth_hmin));
}

SuccessBounds success_bounds(double p_test, double hmin, double p_block, double alpha,
                             std::int64_t m) {
    if (!(p_test >= 0.0 && p_test <= 1.0) || !(p_block >= 0.0 && p_block <= 1.0))
        throw DomainError("success_bounds: probabilities must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("success_bounds: alpha must lie in (0, 1]");
    if (m < 1)
        throw DomainError("success_bounds: need m >= 1");
    SuccessBounds out;
    out.single = std::min(p_test, std::exp2(-hmin));
    double exponent = std::floor(alpha * static_cast<double>(m));
    constexpr double e = 2.718281828459045235360287471353;
    out.repeated_raw = std::pow(e * p_block / alpha, exponent);
    out.repeated = std::min(1.0, std::max(0.0, out.repeated_raw));
    return out;
}

double xhog_entropy(double n, double delta, double eta, double c_log) {
    if (!(delta > 0.0))
        throw DomainError("xhog_entropy: delta must be positive");
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("xhog_entropy: eta must lie in (0, 1]");
    if (c_log < 0.0)
        throw DomainError("xhog_entropy: c_log must be non-negative");
    if (!(n >= 1.0))
        throw DomainError("xhog_entropy: need n >= 1");
    return (1.0 - eta) * delta * n - c_log * std::log2(n);
}

} // namespace cvpv
