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

#include <map>
#include <memory>
#include <optional>

#include "cvpv/compilers.hpp"

namespace cvpv {

struct StrategyParams {
    double offset = 0.2; // displaced-honest
    /// Colluder positions; defaults to the quarter points between the
    /// verifiers.
    std::optional<std::pair<double, double>> positions;
};

/// Canned prover strategies, all classical and causality-respecting:
///   honest, displaced-honest, forwarding-pair, independent-sample-pair,
///   precommit-answer, uniform-answer, replay-previous.
std::unique_ptr<Strategy> make_strategy(const std::string& kind,
                                        StrategyParams params = {});

// ---------------------------------------------------------------------------
// Standalone certified-randomness guessing games.

enum class CommMode { Free, SimultaneousOneRound, None };

std::string to_string(CommMode m);

/// A player in the guessing game. Each round it answers the challenge with
/// randomness drawn only from the rng it is handed; the step-4 channel is
/// mediated entirely by the referee.
class GameAgent {
  public:
    virtual ~GameAgent() = default;
    virtual std::vector<Bits> respond(int round, const Bits& challenge,
                                      PrfRng& rng) = 0;
    virtual std::optional<Bytes> outgoing(int /*round*/) { return std::nullopt; }
    virtual void incoming(int /*round*/, const Bytes& /*message*/) {}
};

using AgentFactory = std::function<std::unique_ptr<GameAgent>(const CrProtocolSpec&)>;

/// Plays the spec's honest prover.
AgentFactory honest_agent();
/// Honest play plus a post-commit message carrying its own answers; shows
/// that communication after the guess is committed does not help.
AgentFactory echoing_agent();

struct GuessingGameConfig {
    CommMode comm_mode = CommMode::None;
    CrProtocolSpec spec;
    AgentFactory prover;
    AgentFactory guesser;
};

struct GameTrial {
    bool verifier_accept = false;
    bool all_matched = false;
    bool win = false;
    int messages_exchanged = 0;
};

GameTrial run_guessing_trial(const GuessingGameConfig& cfg, const Seed& trial);

/// Empirical win probability (verifier accepts and every guess matches) over
/// independent trials with fresh derived seeds.
double run_guessing_game(const GuessingGameConfig& cfg, int trials, const Seed& master);

// ---------------------------------------------------------------------------
// Strategy sweeps.

struct SweepCell {
    std::string strategy;
    Mode mode = Mode::Single;
    double score_delta = 0.5;
    int trials = 0;
    double accept_rate = 0.0;
    std::map<std::string, int> reason_histogram;
    Seed seed;
};

std::vector<SweepCell> sweep(const std::vector<std::string>& strategies,
                             const std::vector<Mode>& modes,
                             const std::vector<double>& score_deltas,
                             const CompilerConfig& base, int trials,
                             const Seed& master);

/// strategy, mode, delta, trials, accept_rate, reason histogram, seed
std::string sweep_to_csv(const std::vector<SweepCell>& cells);

} // namespace cvpv
