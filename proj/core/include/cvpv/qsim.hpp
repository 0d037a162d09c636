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

#include <complex>
#include <string>
#include <vector>

#include "cvpv/bits.hpp"
#include "cvpv/prf.hpp"

namespace cvpv {

using Amplitude = std::complex<double>;

struct AnsatzConfig {
    int n_qubits = 8;
    int depth = 12; // entangling layers; 0 gives the identity circuit
    int max_qubits = 14;
    std::size_t min_seed_bits = 64;

    void validate() const;
};

struct Gate {
    enum class Kind { RX, RY, RZ, X, H, CZ, CX };
    Kind kind;
    int q0 = 0;
    int q1 = -1;    // second qubit for CZ/CX
    double angle = 0.0;
};

/// Seeded brickwork circuit: alternating layers of PRF-seeded single-qubit
/// rotations and a fixed nearest-neighbor CZ pattern.
struct Circuit {
    int n_qubits = 0;
    int depth = 0;
    std::vector<Gate> gates;
    Bits seed_challenge;

    /// Plain-text gate list, one gate per line: kind q0 [q1] [angle].
    std::string to_text() const;
};

struct StateVector {
    int n_qubits = 0;
    std::vector<Amplitude> amps;

    std::size_t dim() const { return amps.size(); }
    double norm() const;
};

Circuit build_circuit(const Bits& challenge, const AnsatzConfig& ansatz);

StateVector zero_state(int n_qubits);
void apply_gate(StateVector& sv, const Gate& g);
void apply_circuit(StateVector& sv, const Circuit& c);

/// C|0^n> computed exactly (dense, double precision).
StateVector simulate(const Circuit& c);

/// p_C(z) = |<z|C|0^n>|^2 for an already-simulated state.
double prob_of(const StateVector& sv, const Bits& z);

/// k i.i.d. draws from |<z|psi>|^2; deterministic given the rng state.
std::vector<Bits> sample(const StateVector& sv, std::size_t k, PrfRng& rng);

/// Mean ideal probability of the samples: (1/k) sum_j p_C(z_j), recomputed
/// from scratch by exact simulation.
double xhog_score(const Circuit& c, const std::vector<Bits>& samples);

/// Enumeration helpers used by the statistical oracles.
double sum_p_squared(const StateVector& sv); // sum_z p(z)^2
double sum_p_cubed(const StateVector& sv);   // sum_z p(z)^3

} // namespace cvpv
