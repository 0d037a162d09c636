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

#include "cvpv/adversaries.hpp"

#include <utility>

namespace cvpv {

namespace {

using RoundKey = std::pair<int, int>; // (block, round)

std::pair<double, double> colluder_positions(const ProtocolView& view,
                                             const StrategyParams& params) {
    if (params.positions)
        return *params.positions;
    const Geometry& g = view.cfg->geometry;
    double quarter = g.cross() / 4.0;
    return {g.v0 + quarter, g.v1 - quarter};
}

std::uint64_t global_round(const ProtocolView& view, int block, int round) {
    return static_cast<std::uint64_t>(block) * view.cfg->rounds + (round - 1);
}

/// Shared bookkeeping for two-colluder strategies: stash broadcast shares,
/// expose the decoded challenge once both halves of a round are present.
struct ShareTracker {
    std::map<RoundKey, ShareV0> v0;
    std::map<RoundKey, ShareV1> v1;

    void absorb(const Event& e) {
        if (e.kind == "share0") {
            if (auto m = decode_share_v0(e.payload))
                v0.emplace(RoundKey{m->block, m->round}, *m);
        } else if (e.kind == "share1") {
            if (auto m = decode_share_v1(e.payload))
                v1.emplace(RoundKey{m->block, m->round}, *m);
        }
    }

    std::optional<Bits> challenge(const ProtocolView& view, PartyId self, Time now,
                                  RoundKey key) const {
        auto a = v0.find(key);
        auto b = v1.find(key);
        if (a == v0.end() || b == v1.end())
            return std::nullopt;
        return view.oracle->otp_decode(self, a->second.x ^ b->second.y, a->second.s,
                                       now);
    }
};

/// Answers are fixed strings agreed at setup (kind="precommit"), fresh
/// uniform strings per round (kind="uniform"), or replays of the previous
/// round's honest answer (kind="replay"). Both colluders derive the same
/// strings from the shared strategy seed, so consistency always holds; the
/// sends are scheduled from the first delivery each colluder sees, which is
/// what keeps cross-traffic out of their causal ancestry.
class ScheduledPairStrategy final : public Strategy {
  public:
    ScheduledPairStrategy(std::string kind, StrategyParams params)
        : kind_(std::move(kind)), params_(params) {}

    std::string name() const override { return kind_ + "-answer-pair"; }

    std::vector<ColluderDecl> instantiate(const ProtocolView& view) const override {
        auto [p0, p1] = colluder_positions(view, params_);
        return {make_colluder(view, "A0", p0, /*serves_v0=*/true),
                make_colluder(view, "A1", p1, /*serves_v0=*/false)};
    }

  private:
    ColluderDecl make_colluder(const ProtocolView& view, std::string label,
                               double position, bool serves_v0) const {
        struct State {
            bool scheduled = false;
            ShareTracker shares;
            std::map<RoundKey, bool> answered;
        };
        auto st = std::make_shared<State>();
        ProtocolView v = view;
        std::string kind = kind_;

        Handler handler = [st, v, position, serves_v0,
                           kind](Context& ctx, const std::vector<const Event*>& batch) {
            const CompilerConfig& cfg = *v.cfg;
            PartyId target = serves_v0 ? v.v0 : v.v1;
            double dist = serves_v0 ? std::abs(position - cfg.geometry.v0)
                                    : std::abs(cfg.geometry.v1 - position);
            if (kind == "replay") {
                // needs the previous round's challenge; answer as soon as the
                // shares allow, round 1 from the pre-agreed fallback
                for (const Event* e : batch)
                    st->shares.absorb(*e);
                for (int b = 0; b < cfg.blocks; ++b)
                    for (int i = 1; i <= cfg.rounds; ++i) {
                        RoundKey key{b, i};
                        if (st->answered[key])
                            continue;
                        double t_send =
                            (serves_v0 ? cfg.expected_arrival_v0(b, i)
                                       : cfg.expected_arrival_v1(b, i)) -
                            dist;
                        if (ctx.now() > t_send)
                            continue; // too late to be on time; skip
                        std::vector<Bits> ans;
                        if (i == 1) {
                            PrfRng rng(v.prover_randomness, "replay-round-one",
                                       global_round(v, b, i));
                            for (std::size_t j = 0; j < cfg.backend.samples_per_round;
                                 ++j)
                                ans.push_back(
                                    rng.bits(static_cast<std::size_t>(cfg.backend.n_qubits)));
                        } else {
                            auto prev =
                                st->shares.challenge(v, ctx.self(), ctx.now(), {b, i - 1});
                            if (!prev)
                                continue; // wait for the stale challenge
                            PrfRng rng(v.prover_randomness, "replay-sample",
                                       global_round(v, b, i));
                            ans = honest_prove_rcs(*prev, cfg.backend, rng);
                        }
                        st->answered[key] = true;
                        ctx.send(target, "answer", encode_answer(b, i, ans), t_send);
                    }
                return;
            }
            if (st->scheduled)
                return;
            st->scheduled = true;
            for (int b = 0; b < cfg.blocks; ++b)
                for (int i = 1; i <= cfg.rounds; ++i) {
                    PrfRng rng(v.prover_randomness, kind, global_round(v, b, i));
                    std::vector<Bits> ans;
                    for (std::size_t j = 0; j < cfg.backend.samples_per_round; ++j)
                        ans.push_back(
                            rng.bits(static_cast<std::size_t>(cfg.backend.n_qubits)));
                    double t_send = (serves_v0 ? cfg.expected_arrival_v0(b, i)
                                               : cfg.expected_arrival_v1(b, i)) -
                                    dist;
                    if (t_send < ctx.now())
                        continue;
                    ctx.send(target, "answer", encode_answer(b, i, ans), t_send);
                }
        };
        return {std::move(label), position, std::move(handler)};
    }

    std::string kind_;
    StrategyParams params_;
};

/// Two colluders between the verifiers. Each learns the challenge once both
/// shares have crossed its position, samples the correct circuit with its
/// own private randomness, and answers its near verifier: on time, but the
/// two sample sets disagree. The forwarding variant also relays each near
/// share to the partner, which is redundant on the open line but shows the
/// attack's communication pattern in the event log.
class SamplingPairStrategy final : public Strategy {
  public:
    SamplingPairStrategy(bool forwarding, StrategyParams params)
        : forwarding_(forwarding), params_(params) {}

    std::string name() const override {
        return forwarding_ ? "forwarding-pair" : "independent-sample-pair";
    }

    std::vector<ColluderDecl> instantiate(const ProtocolView& view) const override {
        auto [p0, p1] = colluder_positions(view, params_);
        std::vector<ColluderDecl> out;
        out.push_back(make_colluder(view, "A0", p0, true, kFirstPartner + 1));
        out.push_back(make_colluder(view, "A1", p1, false, kFirstPartner));
        return out;
    }

  private:
    static constexpr PartyId kFirstPartner = 2;

    ColluderDecl make_colluder(const ProtocolView& view, std::string label,
                               double position, bool serves_v0,
                               PartyId partner) const {
        struct State {
            ShareTracker shares;
            std::map<RoundKey, bool> answered;
        };
        auto st = std::make_shared<State>();
        ProtocolView v = view;
        bool forwarding = forwarding_;
        std::uint64_t colluder_salt = serves_v0 ? 0 : 1;

        Handler handler = [st, v, serves_v0, partner, forwarding, colluder_salt](
                              Context& ctx, const std::vector<const Event*>& batch) {
            const CompilerConfig& cfg = *v.cfg;
            for (const Event* e : batch) {
                st->shares.absorb(*e);
                if (e->kind == "fwd0") {
                    if (auto m = decode_share_v0(e->payload))
                        st->shares.v0.emplace(RoundKey{m->block, m->round}, *m);
                } else if (e->kind == "fwd1") {
                    if (auto m = decode_share_v1(e->payload))
                        st->shares.v1.emplace(RoundKey{m->block, m->round}, *m);
                }
                if (forwarding && e->kind == "share0" && serves_v0)
                    ctx.send_now(partner, "fwd0", e->payload);
                if (forwarding && e->kind == "share1" && !serves_v0)
                    ctx.send_now(partner, "fwd1", e->payload);
            }
            for (auto& [key, sh0] : st->shares.v0) {
                if (st->answered[key])
                    continue;
                auto ch = st->shares.challenge(v, ctx.self(), ctx.now(), key);
                if (!ch)
                    continue;
                st->answered[key] = true;
                Seed own = derive_seed(v.prover_randomness, "colluder", colluder_salt);
                PrfRng rng(own, "sample", global_round(v, key.first, key.second));
                std::vector<Bits> ans = honest_prove_rcs(*ch, cfg.backend, rng);
                ctx.send_now(serves_v0 ? v.v0 : v.v1, "answer",
                             encode_answer(key.first, key.second, ans));
            }
        };
        return {std::move(label), position, std::move(handler)};
    }

    bool forwarding_;
    StrategyParams params_;
};

} // namespace

std::unique_ptr<Strategy> make_strategy(const std::string& kind, StrategyParams params) {
    if (kind == "honest")
        return honest_strategy();
    if (kind == "displaced-honest")
        return honest_strategy(params.offset);
    if (kind == "forwarding-pair")
        return std::make_unique<SamplingPairStrategy>(true, params);
    if (kind == "independent-sample-pair")
        return std::make_unique<SamplingPairStrategy>(false, params);
    if (kind == "precommit-answer")
        return std::make_unique<ScheduledPairStrategy>("precommit", params);
    if (kind == "uniform-answer")
        return std::make_unique<ScheduledPairStrategy>("uniform", params);
    if (kind == "replay-previous")
        return std::make_unique<ScheduledPairStrategy>("replay", params);
    throw UnknownKind("strategy kind: " + kind);
}

std::string to_string(CommMode m) {
    switch (m) {
        case CommMode::Free: return "free";
        case CommMode::SimultaneousOneRound: return "simultaneous-one-round";
        case CommMode::None: return "none";
    }
    return "?";
}

namespace {

class HonestAgent final : public GameAgent {
  public:
    explicit HonestAgent(CrProtocolSpec spec) : spec_(std::move(spec)) {}
    std::vector<Bits> respond(int, const Bits& ch, PrfRng& rng) override {
        return spec_.honest_answer(ch, rng);
    }

  private:
    CrProtocolSpec spec_;
};

class EchoingAgent final : public GameAgent {
  public:
    explicit EchoingAgent(CrProtocolSpec spec) : spec_(std::move(spec)) {}
    std::vector<Bits> respond(int, const Bits& ch, PrfRng& rng) override {
        last_own_ = spec_.honest_answer(ch, rng);
        return last_own_;
    }
    std::optional<Bytes> outgoing(int round) override {
        return encode_answer(0, round, last_own_);
    }
    void incoming(int /*round*/, const Bytes& msg) override {
        if (auto m = decode_answer(msg))
            heard_.push_back(m->strings);
    }

  private:
    CrProtocolSpec spec_;
    std::vector<Bits> last_own_;
    std::vector<std::vector<Bits>> heard_;
};

} // namespace

AgentFactory honest_agent() {
    return [](const CrProtocolSpec& spec) { return std::make_unique<HonestAgent>(spec); };
}

AgentFactory echoing_agent() {
    return [](const CrProtocolSpec& spec) { return std::make_unique<EchoingAgent>(spec); };
}

GameTrial run_guessing_trial(const GuessingGameConfig& cfg, const Seed& trial) {
    std::unique_ptr<GameAgent> prover =
        cfg.prover ? cfg.prover(cfg.spec) : std::make_unique<HonestAgent>(cfg.spec);
    std::unique_ptr<GameAgent> guesser =
        cfg.guesser ? cfg.guesser(cfg.spec) : std::make_unique<HonestAgent>(cfg.spec);

    Seed r = derive_seed(trial, "game-r");
    Seed prover_rand = prover_seed(trial);
    Seed guesser_rand = derive_seed(trial, "guesser");

    GameTrial result;
    std::vector<CrRound> rounds;
    std::vector<std::vector<Bits>> answers, guesses;
    bool matched = true;
    for (int i = 1; i <= cfg.spec.rounds; ++i) {
        std::vector<std::vector<Bits>> prior(answers.begin(), answers.end());
        Bits ch = gen_challenge(cfg.spec, i, prior, r);
        PrfRng prover_rng(prover_rand, "sample", static_cast<std::uint64_t>(i - 1));
        PrfRng guesser_rng(guesser_rand, "sample", static_cast<std::uint64_t>(i - 1));
        std::vector<Bits> ans = prover->respond(i, ch, prover_rng);
        std::vector<Bits> guess = guesser->respond(i, ch, guesser_rng);
        matched = matched && ans == guess;
        answers.push_back(ans);
        guesses.push_back(guess);

        CrRound rd;
        rd.challenge = ch;
        rd.answer = ans;
        rd.test_round = cfg.spec.test_flag ? cfg.spec.test_flag(r, i) : true;
        rounds.push_back(std::move(rd));

        // step 4: the inter-round channel, gated by comm_mode
        std::optional<Bytes> from_p = prover->outgoing(i);
        std::optional<Bytes> from_g = guesser->outgoing(i);
        switch (cfg.comm_mode) {
            case CommMode::None:
                if (from_p || from_g)
                    throw CommModeViolation("communication attempted with comm_mode=none");
                break;
            case CommMode::SimultaneousOneRound:
            case CommMode::Free:
                // both messages are collected before either is delivered, so
                // the exchange is simultaneous
                if (from_p) {
                    guesser->incoming(i, *from_p);
                    ++result.messages_exchanged;
                }
                if (from_g) {
                    prover->incoming(i, *from_g);
                    ++result.messages_exchanged;
                }
                break;
        }
    }
    result.verifier_accept = cfg.spec.verify(r, rounds).accept;
    result.all_matched = matched;
    result.win = result.verifier_accept && matched;
    return result;
}

double run_guessing_game(const GuessingGameConfig& cfg, int trials, const Seed& master) {
    if (trials <= 0)
        return 0.0;
    int wins = 0;
    for (int t = 0; t < trials; ++t)
        wins += run_guessing_trial(cfg, derive_seed(master, "game-trial",
                                                    static_cast<std::uint64_t>(t)))
                    .win;
    return static_cast<double>(wins) / trials;
}

std::vector<SweepCell> sweep(const std::vector<std::string>& strategies,
                             const std::vector<Mode>& modes,
                             const std::vector<double>& score_deltas,
                             const CompilerConfig& base, int trials,
                             const Seed& master) {
    std::vector<SweepCell> cells;
    std::uint64_t cell_index = 0;
    for (const std::string& strat : strategies)
        for (Mode mode : modes)
            for (double d : score_deltas) {
                CompilerConfig cfg = base;
                cfg.mode = mode;
                cfg.geometry = default_geometry(mode);
                cfg.backend.score_delta = d;
                if (mode == Mode::Single)
                    cfg.rounds = 1;
                cfg.validate();
                SweepCell cell;
                cell.strategy = strat;
                cell.mode = mode;
                cell.score_delta = d;
                cell.trials = trials;
                cell.seed = derive_seed(master, "sweep-cell", cell_index++);
                auto strategy = make_strategy(strat);
                int accepts = 0;
                for (int t = 0; t < trials; ++t) {
                    Seed trial = derive_seed(cell.seed, "trial",
                                             static_cast<std::uint64_t>(t));
                    RunResult rr = run_cvpv(cfg, *strategy, trial);
                    accepts += rr.verdict.accept;
                    ++cell.reason_histogram[to_string(rr.verdict.reason)];
                }
                cell.accept_rate = trials ? static_cast<double>(accepts) / trials : 0.0;
                cells.push_back(std::move(cell));
            }
    return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
    std::string out =
        "strategy,mode,score_delta,trials,accept_rate,none,timing,consistency,crtest,seed\n";
    for (const SweepCell& c : cells) {
        auto count = [&](const char* k) {
            auto it = c.reason_histogram.find(k);
            return it == c.reason_histogram.end() ? 0 : it->second;
        };
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", c.accept_rate);
        out += c.strategy + "," + to_string(c.mode) + "," +
               std::to_string(c.score_delta) + "," + std::to_string(c.trials) + "," +
               buf + "," + std::to_string(count("None")) + "," +
               std::to_string(count("Timing")) + "," +
               std::to_string(count("Consistency")) + "," +
               std::to_string(count("CRTest")) + "," + c.seed.to_hex() + "\n";
    }
    return out;
}

} // namespace cvpv
