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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvpv/crcore.hpp"
#include "cvpv/oracle.hpp"
#include "cvpv/spacetime.hpp"

namespace cvpv {

enum class Mode { Single, Sequential, RapidFire, SeqRapidFire };
enum class RejectReason { None, Timing, Consistency, CrTest };

std::string to_string(Mode m);
std::string to_string(RejectReason r);
Mode mode_from_string(const std::string& s);

/// Verifier positions and the claimed prover position on the line.
/// Single-round and rapid-fire default to (0, 2, claimed 1); the
/// sequential construction uses (0, 1, claimed 0.5).
struct Geometry {
    double v0 = 0.0;
    double v1 = 2.0;
    double claimed = 1.0;

    double dist_v0() const { return std::abs(claimed - v0); }
    double dist_v1() const { return std::abs(v1 - claimed); }
    double cross() const { return std::abs(v1 - v0); }
    /// Challenge barrage budget for rapid firing: half the verifier
    /// separation, the distance information can cross while answers are due.
    double rapid_fire_bound() const { return 0.5 * cross(); }
};

Geometry default_geometry(Mode m);

struct CompilerConfig {
    Mode mode = Mode::Single;
    Geometry geometry = default_geometry(Mode::Single);
    int rounds = 1;          // l
    double delta = 0.0;      // rapid-fire spacing
    int blocks = 1;          // m repetitions (seq-rapid-fire)
    double alpha = 1.0;      // fraction of blocks that must pass the CR test
    double block_gap = 1.0;  // idle time between rapid-fire blocks
    double tau = 0.0;        // timing tolerance, strict window both directions
    double compute_delay = 0.0;

    std::string backend_kind = "rcs"; // rcs | mock-* | adaptive-probe
    RcsBackendConfig backend;
    std::size_t share_bits = 128; // m of the hash family
    OracleParams oracle;

    void validate() const; // throws ConfigInvalid
    CrProtocolSpec make_spec() const;

    double send_time(int block, int round) const;       // challenge firing time
    double block_start(int block) const;
    double block_period() const;
    double prover_receive_time(int block, int round) const;
    double expected_arrival_v0(int block, int round) const;
    double expected_arrival_v1(int block, int round) const;
    double horizon() const; // run_until bound that still catches late answers
    int total_rounds() const { return rounds * blocks; }
};

/// Pre-shared per-round values; x, y are the hash shares, s the padded
/// challenge. Derived deterministically from the trial seed so the compiled
/// run and the CVPV->CR adapter see identical values.
struct RoundSecrets {
    Bits x, y, s, ch;
    bool test_round = false;
};

Seed verifier_randomness(const Seed& trial, int block);
Seed prover_seed(const Seed& trial);
std::shared_ptr<RandomOracle> make_trial_oracle(const CompilerConfig& cfg,
                                                const Seed& trial);
RoundSecrets derive_round_secrets(const CompilerConfig& cfg, const CrProtocolSpec& spec,
                                  const Seed& trial, RandomOracle& oracle, int block,
                                  int round);

// Wire formats exchanged over the fabric.
Bytes encode_share_v0(int block, int round, const Bits& x, const Bits& s);
Bytes encode_share_v1(int block, int round, const Bits& y);
Bytes encode_answer(int block, int round, const std::vector<Bits>& strings);
struct ShareV0 { int block; int round; Bits x, s; };
struct ShareV1 { int block; int round; Bits y; };
struct AnswerMsg { int block; int round; std::vector<Bits> strings; };
std::optional<ShareV0> decode_share_v0(const Bytes& payload);
std::optional<ShareV1> decode_share_v1(const Bytes& payload);
std::optional<AnswerMsg> decode_answer(const Bytes& payload);

/// Everything a prover-side strategy may legitimately see: the public
/// protocol parameters, the published oracle, and its own randomness.
struct ProtocolView {
    const CompilerConfig* cfg = nullptr;
    RandomOracle* oracle = nullptr;
    Seed prover_randomness;
    PartyId v0 = 0;
    PartyId v1 = 1;
};

struct ColluderDecl {
    std::string label;
    double position = 0.0;
    Handler handler;
};

/// A prover strategy instantiates one or more colluders per trial. Handlers
/// run inside the spacetime fabric, which enforces causality for them.
class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual std::vector<ColluderDecl> instantiate(const ProtocolView& view) const = 0;
};

/// The construction's own honest prover at the claimed position (or shifted
/// by `offset` for displacement experiments).
std::unique_ptr<Strategy> honest_strategy(double offset = 0.0);

struct AnswerSeen {
    bool present = false;
    Time t_arrive = 0.0;
    Bytes payload;
    std::vector<Bits> decoded;
};

struct CompiledRound {
    int block = 0;
    int round = 1; // 1-based within the block
    RoundSecrets secrets;
    AnswerSeen at_v0, at_v1;
};

struct CompiledTranscript {
    std::vector<CompiledRound> rounds;
};

struct RoundTimingDiag {
    int block = 0;
    int round = 1;
    double expected_v0 = 0, actual_v0 = 0;
    double expected_v1 = 0, actual_v1 = 0;
    bool ok = false;
};

struct Verdict {
    bool accept = false;
    RejectReason reason = RejectReason::None;
    std::vector<RoundTimingDiag> timings;
    std::vector<int> mismatch_rounds; // indices into CompiledTranscript::rounds
    double cr_score = 0.0;
    bool cr_vacuous = false;
    int cr_blocks_passed = 0;
};

/// The three checks in fixed order Timing -> Consistency -> CRTest.
Verdict verdict_checks(const CompiledTranscript& transcript, const CompilerConfig& cfg,
                       const Seed& trial);

struct RunResult {
    Verdict verdict;
    CompiledTranscript transcript;
    std::vector<CrTranscript> cr_blocks;
    EventLog log;
    std::vector<std::string> party_labels;
    double span = 0.0; // last event arrival minus protocol start
    /// The trial's oracle, kept alive for query-log diagnostics. Party ids:
    /// 0 and 1 are the verifiers, colluders start at 2.
    std::shared_ptr<RandomOracle> oracle;
};

RunResult run_cvpv(const CompilerConfig& cfg, const Strategy& strategy,
                   const Seed& trial);

// Mode-checked fronts over run_cvpv.
RunResult run_single_round(const CompilerConfig& cfg, const Strategy& s, const Seed& t);
RunResult run_sequential(const CompilerConfig& cfg, const Strategy& s, const Seed& t);
RunResult run_rapid_fire(const CompilerConfig& cfg, const Strategy& s, const Seed& t);
RunResult run_seq_rapid_fire(const CompilerConfig& cfg, const Strategy& s, const Seed& t);

/// PoQ spec that runs V0 and V1 together as one verifier; round-i challenge
/// bundles (x_i, s_i, y_i) and verification applies the CVPV transcript
/// predicate minus physical timing. Bound to one trial's pre-shared setup:
/// the r passed to the spec closures is ignored in favor of `trial`.
CrProtocolSpec cvpv_to_cr(const CompilerConfig& cfg, const Seed& trial);

} // namespace cvpv
