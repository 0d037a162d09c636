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

#include "cvpv/qsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace cvpv {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

const char* gate_name(Gate::Kind k) {
    switch (k) {
        case Gate::Kind::RX: return "rx";
        case Gate::Kind::RY: return "ry";
        case Gate::Kind::RZ: return "rz";
        case Gate::Kind::X: return "x";
        case Gate::Kind::H: return "h";
        case Gate::Kind::CZ: return "cz";
        case Gate::Kind::CX: return "cx";
    }
    return "?";
}

// Qubit 0 is the leftmost bit of a basis label, i.e. the most significant
// bit of the amplitude index.
inline std::size_t qubit_stride(int n_qubits, int q) {
    return std::size_t(1) << (n_qubits - 1 - q);
}

void apply_single(StateVector& sv, int q, Amplitude u00, Amplitude u01,
                  Amplitude u10, Amplitude u11) {
    std::size_t stride = qubit_stride(sv.n_qubits, q);
    std::size_t dim = sv.dim();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            Amplitude a0 = sv.amps[i];
            Amplitude a1 = sv.amps[i + stride];
            sv.amps[i] = u00 * a0 + u01 * a1;
            sv.amps[i + stride] = u10 * a0 + u11 * a1;
        }
    }
}

} // namespace

void AnsatzConfig::validate() const {
    if (n_qubits < 1)
        throw ConfigInvalid("ansatz: need at least one qubit");
    if (n_qubits > max_qubits)
        throw TooManyQubits("ansatz: qubit count above configured maximum");
    if (depth < 0)
        throw ConfigInvalid("ansatz: negative depth");
}

double StateVector::norm() const {
    double s = 0;
    for (const Amplitude& a : amps)
        s += std::norm(a);
    return std::sqrt(s);
}

Circuit build_circuit(const Bits& challenge, const AnsatzConfig& ansatz) {
    ansatz.validate();
    if (challenge.size() < ansatz.min_seed_bits)
        throw SeedTooShort("build_circuit: challenge shorter than the seed requirement");

    Circuit c;
    c.n_qubits = ansatz.n_qubits;
    c.depth = ansatz.depth;
    c.seed_challenge = challenge;
    if (ansatz.depth == 0)
        return c; // identity

    PrfStream angles(challenge.bytes(), "ansatz-angles");
    auto uniform = [&angles] {
        return static_cast<double>(angles.next_u64() >> 11) * 0x1.0p-53;
    };
    // RZ(a) RY(b) RZ(g) with cos(b) uniform on [-1,1] is a Haar single-qubit
    // gate up to global phase; uniform b would underweight the equator and
    // slow the anticoncentration of the ensemble.
    auto rotation_layer = [&] {
        for (int q = 0; q < c.n_qubits; ++q) {
            double a = uniform() * kTwoPi;
            double b = std::acos(1.0 - 2.0 * uniform());
            double g = uniform() * kTwoPi;
            c.gates.push_back({Gate::Kind::RZ, q, -1, a});
            c.gates.push_back({Gate::Kind::RY, q, -1, b});
            c.gates.push_back({Gate::Kind::RZ, q, -1, g});
        }
    };
    // One depth unit is a full brickwork cell: rotations, CZs on the even
    // sublattice, rotations, CZs on the odd sublattice. The odd sublattice
    // wraps around for even qubit counts; the ring reaches Porter-Thomas
    // statistics by depth ~ n where an open chain needs several times that.
    for (int layer = 0; layer < ansatz.depth; ++layer) {
        rotation_layer();
        for (int q = 0; q + 1 < c.n_qubits; q += 2)
            c.gates.push_back({Gate::Kind::CZ, q, q + 1, 0.0});
        rotation_layer();
        for (int q = 1; q + 1 < c.n_qubits; q += 2)
            c.gates.push_back({Gate::Kind::CZ, q, q + 1, 0.0});
        if (c.n_qubits > 2 && c.n_qubits % 2 == 0)
            c.gates.push_back({Gate::Kind::CZ, 0, c.n_qubits - 1, 0.0});
    }
    rotation_layer();
    return c;
}

StateVector zero_state(int n_qubits) {
    StateVector sv;
    sv.n_qubits = n_qubits;
    sv.amps.assign(std::size_t(1) << n_qubits, Amplitude(0, 0));
    sv.amps[0] = Amplitude(1, 0);
    return sv;
}

void apply_gate(StateVector& sv, const Gate& g) {
    const Amplitude i(0, 1);
    switch (g.kind) {
        case Gate::Kind::RX: {
            double h = g.angle / 2;
            apply_single(sv, g.q0, std::cos(h), -i * std::sin(h), -i * std::sin(h),
                         std::cos(h));
            return;
        }
        case Gate::Kind::RY: {
            double h = g.angle / 2;
            apply_single(sv, g.q0, std::cos(h), -std::sin(h), std::sin(h),
                         std::cos(h));
            return;
        }
        case Gate::Kind::RZ: {
            double h = g.angle / 2;
            apply_single(sv, g.q0, std::exp(-i * h), 0, 0, std::exp(i * h));
            return;
        }
        case Gate::Kind::X:
            apply_single(sv, g.q0, 0, 1, 1, 0);
            return;
        case Gate::Kind::H: {
            double r = 1.0 / std::sqrt(2.0);
            apply_single(sv, g.q0, r, r, r, -r);
            return;
        }
        case Gate::Kind::CZ: {
            std::size_t s0 = qubit_stride(sv.n_qubits, g.q0);
            std::size_t s1 = qubit_stride(sv.n_qubits, g.q1);
            for (std::size_t idx = 0; idx < sv.dim(); ++idx)
                if ((idx & s0) && (idx & s1))
                    sv.amps[idx] = -sv.amps[idx];
            return;
        }
        case Gate::Kind::CX: {
            std::size_t sc = qubit_stride(sv.n_qubits, g.q0);
            std::size_t st = qubit_stride(sv.n_qubits, g.q1);
            for (std::size_t idx = 0; idx < sv.dim(); ++idx)
                if ((idx & sc) && !(idx & st))
                    std::swap(sv.amps[idx], sv.amps[idx | st]);
            return;
        }
    }
}

void apply_circuit(StateVector& sv, const Circuit& c) {
    if (sv.n_qubits != c.n_qubits)
        throw DimensionMismatch("apply_circuit: qubit count mismatch");
    for (const Gate& g : c.gates)
        apply_gate(sv, g);
}

StateVector simulate(const Circuit& c) {
    StateVector sv = zero_state(c.n_qubits);
    apply_circuit(sv, c);
    return sv;
}

double prob_of(const StateVector& sv, const Bits& z) {
    if (static_cast<int>(z.size()) != sv.n_qubits)
        throw DimensionMismatch("prob_of: bitstring length does not match qubit count");
    return std::norm(sv.amps[z.to_u64()]);
}

std::vector<Bits> sample(const StateVector& sv, std::size_t k, PrfRng& rng) {
    std::vector<double> cum(sv.dim());
    double acc = 0;
    for (std::size_t z = 0; z < sv.dim(); ++z) {
        acc += std::norm(sv.amps[z]);
        cum[z] = acc;
    }
    std::vector<Bits> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        double u = rng.uniform() * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        std::size_t z = it == cum.end() ? sv.dim() - 1
                                        : static_cast<std::size_t>(it - cum.begin());
        out.push_back(Bits::from_u64(z, static_cast<std::size_t>(sv.n_qubits)));
    }
    return out;
}

double xhog_score(const Circuit& c, const std::vector<Bits>& samples) {
    StateVector sv = simulate(c);
    double total = 0;
    for (const Bits& z : samples)
        total += prob_of(sv, z);
    return samples.empty() ? 0.0 : total / static_cast<double>(samples.size());
}

double sum_p_squared(const StateVector& sv) {
    double s = 0;
    for (const Amplitude& a : sv.amps) {
        double p = std::norm(a);
        s += p * p;
    }
    return s;
}

double sum_p_cubed(const StateVector& sv) {
    double s = 0;
    for (const Amplitude& a : sv.amps) {
        double p = std::norm(a);
        s += p * p * p;
    }
    return s;
}

std::string Circuit::to_text() const {
    std::string out;
    char buf[48];
    for (const Gate& g : gates) {
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (g.q1 >= 0) {
            out += ' ';
            out += std::to_string(g.q1);
        }
        if (g.kind == Gate::Kind::RX || g.kind == Gate::Kind::RY ||
            g.kind == Gate::Kind::RZ) {
            auto res = std::to_chars(buf, buf + sizeof(buf), g.angle);
            out += ' ';
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

} // namespace cvpv
