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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvpv/bits.hpp"
#include "cvpv/prf.hpp"
#include "cvpv/qsim.hpp"

namespace cvpv {

/// Parameters of the random-circuit-sampling backend.
struct RcsBackendConfig {
    int n_qubits = 8;
    int depth = 12;
    std::size_t samples_per_round = 100; // k
    double test_probability = 0.5;       // gamma
    double score_delta = 0.5;            // delta; accept at mean p >= (1+delta)/N
    std::size_t challenge_bits = 128;

    AnsatzConfig ansatz() const;
    double threshold() const; // (1 + delta) / N
    void validate() const;
};

/// One protocol round as the verifier saw it.
struct CrRound {
    Bits challenge;
    std::vector<Bits> answer;
    bool test_round = false;
    std::optional<double> score; // test rounds only
};

struct CrTranscript {
    std::vector<CrRound> rounds;
    double total_score = 0.0;
    int test_rounds = 0;
    bool accept = false;
    bool vacuous = false; // gamma drew zero test rounds

    /// {rounds: [{ch_hex, ans_hex[], T, score?}], total_score, accept}
    std::string to_json() const;
};

struct CrVerdict {
    bool accept = false;
    bool vacuous = false;
    double score = 0.0;
    int test_rounds = 0;
};

/// Gen/Ver syntax for a (possibly multi-round) PoQ certified-randomness
/// protocol. Challenges are deterministic in (r, i) and, only when
/// adaptive, the prior answers; the interface shape keeps non-adaptive
/// generators away from answers entirely.
struct CrProtocolSpec {
    std::string name;
    int rounds = 1;
    bool adaptive = false;
    std::size_t challenge_bits = 128;
    std::size_t answer_strings = 1; // bitstrings per answer
    std::size_t answer_bits = 8;    // bits per answer string

    std::function<Bits(const Seed& r, int round)> gen_nonadaptive;
    std::function<Bits(const Seed& r, int round, const std::vector<std::vector<Bits>>& prior)>
        gen_adaptive;
    std::function<bool(const Seed& r, int round)> test_flag;
    std::function<CrVerdict(const Seed& r, const std::vector<CrRound>& rounds)> verify;
    /// Reference prover; randomness comes only from the passed rng.
    std::function<std::vector<Bits>(const Bits& challenge, PrfRng& rng)> honest_answer;
};

/// Gen_i(1^lambda, ans_1..ans_{i-1}; r). Round index is 1-based.
Bits gen_challenge(const CrProtocolSpec& spec, int round,
                   const std::vector<std::vector<Bits>>& prior_answers, const Seed& r);

CrProtocolSpec make_rcs_spec(const RcsBackendConfig& cfg, int rounds);

/// Exact-amplitude honest prover for one RCS round.
std::vector<Bits> honest_prove_rcs(const Bits& challenge, const RcsBackendConfig& cfg,
                                   PrfRng& rng);

/// Recompute every p_C(z) by exact simulation and apply the threshold test.
/// Zero test rounds yield a vacuous accept, flagged in the verdict.
CrVerdict verify_rcs(const std::vector<CrRound>& rounds, const RcsBackendConfig& cfg);

/// Mean of p over the test rounds; throws NoTestRounds when there are none.
double score_rcs(const std::vector<CrRound>& rounds, const RcsBackendConfig& cfg,
                 int* test_rounds_out = nullptr);

/// Plumbing stand-ins for the out-of-scope code-based and NTCF backends:
/// kind is one of "always-accept", "deterministic-answer", "coin-flip".
CrProtocolSpec make_mock_spec(const std::string& kind, int rounds,
                              std::size_t answer_bits = 8);

/// Accept-all spec whose challenges depend on prior answers; exists so the
/// rapid-fire eligibility gate has something to reject.
CrProtocolSpec make_adaptive_probe_spec(int rounds, std::size_t answer_bits = 8);

CrTranscript assemble_transcript(const CrProtocolSpec& spec, const Seed& r,
                                 const std::vector<CrRound>& rounds);

} // namespace cvpv
