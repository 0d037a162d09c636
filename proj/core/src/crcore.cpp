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

#include "cvpv/crcore.hpp"

#include <charconv>
#include <cmath>

namespace cvpv {

namespace {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

AnsatzConfig RcsBackendConfig::ansatz() const {
    AnsatzConfig a;
    a.n_qubits = n_qubits;
    a.depth = depth;
    return a;
}

double RcsBackendConfig::threshold() const {
    return (1.0 + score_delta) / static_cast<double>(std::size_t(1) << n_qubits);
}

void RcsBackendConfig::validate() const {
    ansatz().validate();
    if (samples_per_round == 0)
        throw ConfigInvalid("rcs: need at least one sample per round");
    if (test_probability < 0.0 || test_probability > 1.0)
        throw ConfigInvalid("rcs: test probability outside [0, 1]");
    if (score_delta <= 0.0)
        throw ConfigInvalid("rcs: score margin must be positive");
    if (challenge_bits < 64)
        throw ConfigInvalid("rcs: challenge too short to seed the ansatz");
}

Bits gen_challenge(const CrProtocolSpec& spec, int round,
                   const std::vector<std::vector<Bits>>& prior_answers, const Seed& r) {
    if (round < 1 || round > spec.rounds)
        throw IndexOutOfRange("gen_challenge: round outside [1, rounds]");
    if (static_cast<int>(prior_answers.size()) != round - 1)
        throw IndexOutOfRange("gen_challenge: need exactly round-1 prior answers");
    if (spec.adaptive)
        return spec.gen_adaptive(r, round, prior_answers);
    return spec.gen_nonadaptive(r, round);
}

std::vector<Bits> honest_prove_rcs(const Bits& challenge, const RcsBackendConfig& cfg,
                                   PrfRng& rng) {
    Circuit c = build_circuit(challenge, cfg.ansatz());
    StateVector sv = simulate(c);
    return sample(sv, cfg.samples_per_round, rng);
}

double score_rcs(const std::vector<CrRound>& rounds, const RcsBackendConfig& cfg,
                 int* test_rounds_out) {
    int tested = 0;
    double total = 0.0;
    for (const CrRound& rd : rounds) {
        if (!rd.test_round)
            continue;
        ++tested;
        Circuit c = build_circuit(rd.challenge, cfg.ansatz());
        total += xhog_score(c, rd.answer);
    }
    if (test_rounds_out)
        *test_rounds_out = tested;
    if (tested == 0)
        throw NoTestRounds("score_rcs: gamma drew zero test rounds");
    return total / tested;
}

CrVerdict verify_rcs(const std::vector<CrRound>& rounds, const RcsBackendConfig& cfg) {
    CrVerdict v;
    try {
        v.score = score_rcs(rounds, cfg, &v.test_rounds);
    } catch (const NoTestRounds&) {
        v.accept = true; // vacuous, flagged for diagnostics
        v.vacuous = true;
        return v;
    }
    v.accept = v.score >= cfg.threshold(); // inclusive boundary
    return v;
}

CrProtocolSpec make_rcs_spec(const RcsBackendConfig& cfg, int rounds) {
    cfg.validate();
    if (rounds < 1)
        throw ConfigInvalid("rcs spec: need at least one round");
    CrProtocolSpec spec;
    spec.name = "rcs";
    spec.rounds = rounds;
    spec.adaptive = false;
    spec.challenge_bits = cfg.challenge_bits;
    spec.answer_strings = cfg.samples_per_round;
    spec.answer_bits = static_cast<std::size_t>(cfg.n_qubits);
    // Fresh challenge every round; T_i and ch_i come from disjoint PRF
    // domains of the verifier randomness r.
    spec.gen_nonadaptive = [cfg](const Seed& r, int round) {
        return PrfStream(derive_seed(r, "cr-challenge"), "round",
                         static_cast<std::uint64_t>(round))
            .next_bits(cfg.challenge_bits);
    };
    spec.test_flag = [cfg](const Seed& r, int round) {
        return PrfRng(derive_seed(r, "cr-test"), "round",
                      static_cast<std::uint64_t>(round))
            .bernoulli(cfg.test_probability);
    };
    spec.verify = [cfg](const Seed&, const std::vector<CrRound>& rounds_seen) {
        return verify_rcs(rounds_seen, cfg);
    };
    spec.honest_answer = [cfg](const Bits& challenge, PrfRng& rng) {
        return honest_prove_rcs(challenge, cfg, rng);
    };
    return spec;
}

CrProtocolSpec make_mock_spec(const std::string& kind, int rounds,
                              std::size_t answer_bits) {
    if (rounds < 1)
        throw ConfigInvalid("mock spec: need at least one round");
    CrProtocolSpec spec;
    spec.name = "mock-" + kind;
    spec.rounds = rounds;
    spec.adaptive = false;
    spec.challenge_bits = 64;
    spec.answer_strings = 1;
    spec.answer_bits = answer_bits;
    spec.gen_nonadaptive = [](const Seed& r, int round) {
        return PrfStream(derive_seed(r, "mock-challenge"), "round",
                         static_cast<std::uint64_t>(round))
            .next_bits(64);
    };
    spec.test_flag = [](const Seed&, int) { return true; };

    auto accept_all = [](const Seed&, const std::vector<CrRound>& rounds_seen) {
        CrVerdict v;
        v.accept = true;
        v.test_rounds = static_cast<int>(rounds_seen.size());
        return v;
    };

    if (kind == "always-accept") {
        spec.verify = accept_all;
        spec.honest_answer = [answer_bits](const Bits&, PrfRng&) {
            return std::vector<Bits>{Bits(answer_bits)};
        };
    } else if (kind == "deterministic-answer") {
        // The answer is a public deterministic function of the challenge, so
        // any guesser that copies the prover's algorithm wins the CR game.
        auto canonical = [answer_bits](const Bits& ch) {
            return PrfStream(ch.bytes(), "mock-deterministic").next_bits(answer_bits);
        };
        spec.verify = [canonical](const Seed&, const std::vector<CrRound>& rounds_seen) {
            CrVerdict v;
            v.accept = true;
            v.test_rounds = static_cast<int>(rounds_seen.size());
            for (const CrRound& rd : rounds_seen)
                if (rd.answer.size() != 1 || rd.answer[0] != canonical(rd.challenge))
                    v.accept = false;
            return v;
        };
        spec.honest_answer = [canonical](const Bits& ch, PrfRng&) {
            return std::vector<Bits>{canonical(ch)};
        };
    } else if (kind == "coin-flip") {
        spec.verify = accept_all;
        spec.honest_answer = [answer_bits](const Bits&, PrfRng& rng) {
            return std::vector<Bits>{rng.bits(answer_bits)};
        };
    } else {
        throw UnknownKind("mock spec kind: " + kind);
    }
    return spec;
}

CrProtocolSpec make_adaptive_probe_spec(int rounds, std::size_t answer_bits) {
    if (rounds < 1)
        throw ConfigInvalid("adaptive probe: need at least one round");
    CrProtocolSpec spec;
    spec.name = "adaptive-probe";
    spec.rounds = rounds;
    spec.adaptive = true;
    spec.challenge_bits = 64;
    spec.answer_strings = 1;
    spec.answer_bits = answer_bits;
    spec.gen_adaptive = [](const Seed& r, int round,
                           const std::vector<std::vector<Bits>>& prior) {
        Sha256 h;
        for (const auto& ans : prior)
            for (const Bits& b : ans) {
                h.update_u64(b.size());
                h.update(b.bytes());
            }
        Seed mix = derive_seed(Seed{h.finish()}, "adaptive-mix");
        Seed base = derive_seed(r, "probe-challenge", static_cast<std::uint64_t>(round));
        Bits lhs = PrfStream(base, "lhs").next_bits(64);
        Bits rhs = PrfStream(mix, "rhs").next_bits(64);
        return lhs ^ rhs;
    };
    spec.test_flag = [](const Seed&, int) { return true; };
    spec.verify = [](const Seed&, const std::vector<CrRound>& rounds_seen) {
        CrVerdict v;
        v.accept = true;
        v.test_rounds = static_cast<int>(rounds_seen.size());
        return v;
    };
    spec.honest_answer = [answer_bits](const Bits& ch, PrfRng&) {
        return std::vector<Bits>{ch.slice(0, answer_bits)};
    };
    return spec;
}

CrTranscript assemble_transcript(const CrProtocolSpec& spec, const Seed& r,
                                 const std::vector<CrRound>& rounds) {
    CrTranscript t;
    t.rounds = rounds;
    CrVerdict v = spec.verify(r, rounds);
    t.accept = v.accept;
    t.vacuous = v.vacuous;
    t.total_score = v.score;
    t.test_rounds = v.test_rounds;
    return t;
}

std::string CrTranscript::to_json() const {
    std::string out = "{\"rounds\":[";
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const CrRound& rd = rounds[i];
        if (i)
            out += ',';
        out += "{\"ch_hex\":\"" + rd.challenge.to_hex() + "\",\"ans_hex\":[";
        for (std::size_t j = 0; j < rd.answer.size(); ++j) {
            if (j)
                out += ',';
            out += '"' + rd.answer[j].to_hex() + '"';
        }
        out += "],\"T\":";
        out += rd.test_round ? "true" : "false";
        if (rd.score)
            out += ",\"score\":" + format_double(*rd.score);
        out += '}';
    }
    out += "],\"total_score\":" + format_double(total_score);
    out += ",\"accept\":";
    out += accept ? "true" : "false";
    out += '}';
    return out;
}

} // namespace cvpv
