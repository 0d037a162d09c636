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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cvpv/errors.hpp"

namespace cvpv {

/// Exact rational with a small denominator, enough for frequency vectors.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Fraction&) const = default;
};

/// freq(x_1^n)(x) = |{i : x_i = x}| / n, in exact arithmetic.
std::vector<Fraction> freq(const std::vector<int>& outcomes, int alphabet_size);

/// Affine min-tradeoff function f(q) = c0 + sum_x coeff[x] * q(x).
struct MinTradeoff {
    double c0 = 0.0;
    std::vector<double> coeffs; // one per alphabet symbol

    double eval(const std::vector<double>& q) const;
    double eval(const std::vector<Fraction>& q) const;
};

/// h = min over accepted outcome strings of f(freq(x_1^n)), by enumerating
/// alphabet^n strings. Guarded to enumerable sizes.
double h_rate_enumerate(const MinTradeoff& f,
                        const std::function<bool(const std::vector<int>&)>& accepted,
                        int n, int alphabet_size = 2);

/// Same minimum when the acceptance set is a frequency region given by its
/// vertices; valid because f is affine.
double h_rate_vertices(const MinTradeoff& f,
                       const std::vector<std::vector<double>>& vertices);

struct EatParams {
    double n = 0;  // rounds
    double h = 0;  // per-round rate
    double c1 = 0; // sqrt(n) coefficient
    double c0 = 0; // constant
    double smoothing_epsilon = 0; // carried for reporting
};

/// n*h - c1*sqrt(n) - c0; may be negative, callers clamp.
double eat_bound(const EatParams& p);

/// g(eps) = -log2(1 - sqrt(1 - eps^2)), defined on (0, 1).
double g_correction(double eps);

/// H_min >= -log2(eps + 2^-H_min^eps).
double minentropy_from_smooth(double smooth_hmin, double eps);

struct SuccessBounds {
    double single = 0.0;       // min(p_test, 2^-Hmin)
    double repeated_raw = 0.0; // (e * p_block / alpha)^floor(alpha * m)
    double repeated = 0.0;     // raw clamped to [0, 1]
};

SuccessBounds success_bounds(double p_test, double hmin, double p_block, double alpha,
                             std::int64_t m);

/// (1 - eta) * delta * n - c_log * log2(n). The O(log n) constant is not
/// derivable here and must be supplied.
double xhog_entropy(double n, double delta, double eta, double c_log);

} // namespace cvpv
