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

#include "cvpv/compilers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cvpv {

namespace {

constexpr PartyId kV0 = 0;
constexpr PartyId kV1 = 1;
constexpr PartyId kFirstColluder = 2;

void put_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

bool take_u32(const Bytes& in, std::size_t& pos, std::uint32_t& v) {
    if (pos + 4 > in.size())
        return false;
    v = (std::uint32_t(in[pos]) << 24) | (std::uint32_t(in[pos + 1]) << 16) |
        (std::uint32_t(in[pos + 2]) << 8) | std::uint32_t(in[pos + 3]);
    pos += 4;
    return true;
}

void put_bits(Bytes& out, const Bits& b) {
    put_u32(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.bytes().begin(), b.bytes().end());
}

bool take_bits(const Bytes& in, std::size_t& pos, Bits& b) {
    std::uint32_t nbits;
    if (!take_u32(in, pos, nbits))
        return false;
    std::size_t nbytes = (nbits + 7) / 8;
    if (pos + nbytes > in.size())
        return false;
    b = Bits(Bytes(in.begin() + pos, in.begin() + pos + nbytes), nbits);
    pos += nbytes;
    return true;
}

Bytes encode_timer(int block, int round) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(block));
    put_u32(out, static_cast<std::uint32_t>(round));
    return out;
}

bool decode_timer(const Bytes& in, int& block, int& round) {
    std::size_t pos = 0;
    std::uint32_t b, r;
    if (!take_u32(in, pos, b) || !take_u32(in, pos, r))
        return false;
    block = static_cast<int>(b);
    round = static_cast<int>(r);
    return true;
}

} // namespace

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Single: return "single";
        case Mode::Sequential: return "sequential";
        case Mode::RapidFire: return "rapid-fire";
        case Mode::SeqRapidFire: return "seq-rapid-fire";
    }
    return "?";
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "None";
        case RejectReason::Timing: return "Timing";
        case RejectReason::Consistency: return "Consistency";
        case RejectReason::CrTest: return "CRTest";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    if (s == "single") return Mode::Single;
    if (s == "sequential") return Mode::Sequential;
    if (s == "rapid-fire") return Mode::RapidFire;
    if (s == "seq-rapid-fire") return Mode::SeqRapidFire;
    throw ConfigInvalid("unknown mode: " + s);
}

Geometry default_geometry(Mode m) {
    // Each construction's own normalization: answers due at t=2 for the
    // single-round figure, t=i with verifiers one unit apart for the
    // sequential one. Rapid firing keeps the single-round spacing so the
    // campaign span is (l-1)*delta + 2.
    if (m == Mode::Sequential)
        return Geometry{0.0, 1.0, 0.5};
    return Geometry{0.0, 2.0, 1.0};
}

void CompilerConfig::validate() const {
    if (!(std::isfinite(geometry.v0) && std::isfinite(geometry.v1) &&
          std::isfinite(geometry.claimed)))
        throw ConfigInvalid("geometry positions must be finite");
    if (!(geometry.v0 < geometry.claimed && geometry.claimed < geometry.v1))
        throw ConfigInvalid("claimed position must lie strictly between the verifiers");
    if (rounds < 1)
        throw ConfigInvalid("need at least one round");
    if (tau < 0.0)
        throw ConfigInvalid("timing tolerance must be non-negative");
    if (compute_delay < 0.0)
        throw ConfigInvalid("compute delay must be non-negative");
    if (alpha <= 0.0 || alpha > 1.0)
        throw ConfigInvalid("alpha must be in (0, 1]");
    if (blocks < 1)
        throw ConfigInvalid("need at least one block");
    if (mode == Mode::Single && rounds != 1)
        throw ConfigInvalid("single mode is one round by definition");
    if (mode != Mode::SeqRapidFire && blocks != 1)
        throw ConfigInvalid("blocks > 1 only make sense for seq-rapid-fire");
    if (mode == Mode::RapidFire || mode == Mode::SeqRapidFire) {
        // Delta in (0, bound/(l-1)) scaled to the geometry: the whole
        // barrage must fit inside half the verifier separation.
        if (delta <= 0.0)
            throw ConfigInvalid("rapid firing needs a positive spacing");
        if (rounds > 1 && !(delta * (rounds - 1) < geometry.rapid_fire_bound()))
            throw ConfigInvalid("delta * (rounds - 1) must stay below half the verifier separation");
        if (block_gap < 0.0)
            throw ConfigInvalid("block gap must be non-negative");
    }
    CrProtocolSpec spec = make_spec();
    if (spec.adaptive && (mode == Mode::RapidFire || mode == Mode::SeqRapidFire))
        throw ConfigInvalid("rapid firing requires non-adaptive challenge generation");
    if (oracle.input_bits != share_bits)
        throw ConfigInvalid("oracle input width must equal the share width");
    if (oracle.output_bits != spec.challenge_bits)
        throw ConfigInvalid("oracle output width must equal the challenge width");
    oracle.validate();
}

CrProtocolSpec CompilerConfig::make_spec() const {
    if (backend_kind == "rcs")
        return make_rcs_spec(backend, rounds);
    if (backend_kind.rfind("mock-", 0) == 0)
        return make_mock_spec(backend_kind.substr(5), rounds);
    if (backend_kind == "adaptive-probe")
        return make_adaptive_probe_spec(rounds);
    throw UnknownKind("backend kind: " + backend_kind);
}

double CompilerConfig::block_period() const {
    // covers the longest share-to-answer flight so consecutive blocks never
    // overlap; equals (l-1)*delta + round-trip + gap for a midpoint prover
    double reach = std::max(geometry.dist_v0(), geometry.dist_v1());
    return (rounds - 1) * delta + 2.0 * reach + block_gap;
}

double CompilerConfig::block_start(int block) const {
    return static_cast<double>(block) * block_period();
}

double CompilerConfig::send_time(int block, int round) const {
    switch (mode) {
        case Mode::Single: return 0.0;
        case Mode::Sequential: return static_cast<double>(round - 1);
        case Mode::RapidFire: return (round - 1) * delta;
        case Mode::SeqRapidFire: return block_start(block) + (round - 1) * delta;
    }
    return 0.0;
}

double CompilerConfig::prover_receive_time(int block, int round) const {
    double s = send_time(block, round);
    return std::max(s + geometry.dist_v0(), s + geometry.dist_v1());
}

double CompilerConfig::expected_arrival_v0(int block, int round) const {
    return prover_receive_time(block, round) + geometry.dist_v0();
}

double CompilerConfig::expected_arrival_v1(int block, int round) const {
    return prover_receive_time(block, round) + geometry.dist_v1();
}

double CompilerConfig::horizon() const {
    return expected_arrival_v1(blocks - 1, rounds) + geometry.cross() + 1.0;
}

Seed verifier_randomness(const Seed& trial, int block) {
    return derive_seed(derive_seed(trial, "block", static_cast<std::uint64_t>(block)),
                       "verifier-r");
}

Seed prover_seed(const Seed& trial) { return derive_seed(trial, "prover"); }

std::shared_ptr<RandomOracle> make_trial_oracle(const CompilerConfig& cfg,
                                                const Seed& trial) {
    Seed oracle_seed = derive_seed(trial, "oracle-seed");
    Bytes key = RandomOracle::sample_key(derive_seed(trial, "oracle-key"),
                                         cfg.oracle.key_bits);
    return std::make_shared<RandomOracle>(cfg.oracle, oracle_seed, std::move(key));
}

RoundSecrets derive_round_secrets(const CompilerConfig& cfg, const CrProtocolSpec& spec,
                                  const Seed& trial, RandomOracle& oracle, int block,
                                  int round) {
    if (spec.adaptive)
        throw ConfigInvalid("adaptive specs fix challenges at fire time, not setup");
    Seed r = verifier_randomness(trial, block);
    RoundSecrets out;
    out.x = PrfStream(derive_seed(r, "share-x"), "round",
                      static_cast<std::uint64_t>(round))
                .next_bits(cfg.share_bits);
    out.y = PrfStream(derive_seed(r, "share-y"), "round",
                      static_cast<std::uint64_t>(round))
                .next_bits(cfg.share_bits);
    out.ch = spec.gen_nonadaptive(r, round);
    out.test_round = spec.test_flag(r, round);
    out.s = oracle.otp_encode(kV0, out.x ^ out.y, out.ch);
    return out;
}

Bytes encode_share_v0(int block, int round, const Bits& x, const Bits& s) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(block));
    put_u32(out, static_cast<std::uint32_t>(round));
    put_bits(out, x);
    put_bits(out, s);
    return out;
}

Bytes encode_share_v1(int block, int round, const Bits& y) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(block));
    put_u32(out, static_cast<std::uint32_t>(round));
    put_bits(out, y);
    return out;
}

Bytes encode_answer(int block, int round, const std::vector<Bits>& strings) {
    Bytes out;
    put_u32(out, static_cast<std::uint32_t>(block));
    put_u32(out, static_cast<std::uint32_t>(round));
    put_u32(out, static_cast<std::uint32_t>(strings.size()));
    for (const Bits& b : strings)
        put_bits(out, b);
    return out;
}

std::optional<ShareV0> decode_share_v0(const Bytes& payload) {
    ShareV0 m;
    std::size_t pos = 0;
    std::uint32_t b, r;
    if (!take_u32(payload, pos, b) || !take_u32(payload, pos, r))
        return std::nullopt;
    m.block = static_cast<int>(b);
    m.round = static_cast<int>(r);
    if (!take_bits(payload, pos, m.x) || !take_bits(payload, pos, m.s))
        return std::nullopt;
    return m;
}

std::optional<ShareV1> decode_share_v1(const Bytes& payload) {
    ShareV1 m;
    std::size_t pos = 0;
    std::uint32_t b, r;
    if (!take_u32(payload, pos, b) || !take_u32(payload, pos, r))
        return std::nullopt;
    m.block = static_cast<int>(b);
    m.round = static_cast<int>(r);
    if (!take_bits(payload, pos, m.y))
        return std::nullopt;
    return m;
}

std::optional<AnswerMsg> decode_answer(const Bytes& payload) {
    AnswerMsg m;
    std::size_t pos = 0;
    std::uint32_t b, r, count;
    if (!take_u32(payload, pos, b) || !take_u32(payload, pos, r) ||
        !take_u32(payload, pos, count))
        return std::nullopt;
    m.block = static_cast<int>(b);
    m.round = static_cast<int>(r);
    m.strings.resize(count);
    for (std::uint32_t i = 0; i < count; ++i)
        if (!take_bits(payload, pos, m.strings[i]))
            return std::nullopt;
    return m;
}

namespace {

/// Reference prover: sits at the claimed position, decodes each round's
/// challenge when both shares have arrived, samples, answers both verifiers
/// immediately.
class HonestStrategy final : public Strategy {
  public:
    std::string name() const override { return "honest"; }

    std::vector<ColluderDecl> instantiate(const ProtocolView& view) const override {
        struct State {
            std::map<std::pair<int, int>, ShareV0> v0_shares;
            std::map<std::pair<int, int>, ShareV1> v1_shares;
            std::map<std::pair<int, int>, bool> answered;
            CrProtocolSpec spec;
        };
        auto st = std::make_shared<State>();
        st->spec = view.cfg->make_spec();
        ProtocolView v = view;
        double position = view.cfg->geometry.claimed + offset_;

        Handler handler = [st, v](Context& ctx, const std::vector<const Event*>& batch) {
            bool saw_share = false;
            for (const Event* e : batch) {
                if (e->kind == "share0") {
                    if (auto m = decode_share_v0(e->payload)) {
                        st->v0_shares.emplace(std::make_pair(m->block, m->round), *m);
                        saw_share = true;
                    }
                } else if (e->kind == "share1") {
                    if (auto m = decode_share_v1(e->payload)) {
                        st->v1_shares.emplace(std::make_pair(m->block, m->round), *m);
                        saw_share = true;
                    }
                }
            }
            if (!saw_share)
                return;
            for (auto& [key, sh0] : st->v0_shares) {
                auto it = st->v1_shares.find(key);
                if (it == st->v1_shares.end() || st->answered[key])
                    continue;
                st->answered[key] = true;
                Bits ch = v.oracle->otp_decode(ctx.self(), sh0.x ^ it->second.y, sh0.s,
                                               ctx.now());
                std::uint64_t global =
                    static_cast<std::uint64_t>(key.first) * v.cfg->rounds +
                    (key.second - 1);
                PrfRng rng(v.prover_randomness, "sample", global);
                std::vector<Bits> ans = st->spec.honest_answer(ch, rng);
                Bytes payload = encode_answer(key.first, key.second, ans);
                ctx.send_now(v.v0, "answer", payload);
                ctx.send_now(v.v1, "answer", payload);
            }
        };
        return {ColluderDecl{"P", position, std::move(handler)}};
    }

    explicit HonestStrategy(double offset = 0.0) : offset_(offset) {}

  private:
    double offset_;
};

} // namespace

std::unique_ptr<Strategy> honest_strategy(double offset) {
    return std::make_unique<HonestStrategy>(offset);
}

namespace {

struct RoundCollector {
    RoundSecrets secrets;
    bool secrets_ready = false;
    AnswerSeen at_v0, at_v1;
};

struct EngineState {
    std::vector<std::vector<RoundCollector>> blocks; // [block][round-1]
    CrProtocolSpec spec;
};

} // namespace

Verdict verdict_checks(const CompiledTranscript& transcript, const CompilerConfig& cfg,
                       const Seed& trial) {
    Verdict v;

    // Timing first: every round, both verifiers, strict window.
    bool timing_ok = true;
    for (std::size_t idx = 0; idx < transcript.rounds.size(); ++idx) {
        const CompiledRound& rd = transcript.rounds[idx];
        RoundTimingDiag diag;
        diag.block = rd.block;
        diag.round = rd.round;
        diag.expected_v0 = cfg.expected_arrival_v0(rd.block, rd.round);
        diag.expected_v1 = cfg.expected_arrival_v1(rd.block, rd.round);
        diag.actual_v0 = rd.at_v0.present ? rd.at_v0.t_arrive
                                          : std::numeric_limits<double>::quiet_NaN();
        diag.actual_v1 = rd.at_v1.present ? rd.at_v1.t_arrive
                                          : std::numeric_limits<double>::quiet_NaN();
        diag.ok = rd.at_v0.present && rd.at_v1.present &&
                  std::abs(diag.actual_v0 - diag.expected_v0) <= cfg.tau &&
                  std::abs(diag.actual_v1 - diag.expected_v1) <= cfg.tau;
        timing_ok = timing_ok && diag.ok;
        v.timings.push_back(diag);
    }
    if (!timing_ok) {
        v.accept = false;
        v.reason = RejectReason::Timing;
        return v;
    }

    // Consistency: byte equality of the two received answers, every round.
    for (std::size_t idx = 0; idx < transcript.rounds.size(); ++idx) {
        const CompiledRound& rd = transcript.rounds[idx];
        if (rd.at_v0.payload != rd.at_v1.payload)
            v.mismatch_rounds.push_back(static_cast<int>(idx));
    }
    if (!v.mismatch_rounds.empty()) {
        v.accept = false;
        v.reason = RejectReason::Consistency;
        return v;
    }

    // Certified-randomness test, per block; seq-rapid-fire accepts when at
    // least alpha * m blocks pass.
    CrProtocolSpec spec = cfg.make_spec();
    int passed = 0;
    for (int b = 0; b < cfg.blocks; ++b) {
        std::vector<CrRound> rounds;
        for (const CompiledRound& rd : transcript.rounds) {
            if (rd.block != b)
                continue;
            CrRound cr;
            cr.challenge = rd.secrets.ch;
            cr.answer = rd.at_v0.decoded;
            cr.test_round = rd.secrets.test_round;
            rounds.push_back(std::move(cr));
        }
        CrVerdict cv = spec.verify(verifier_randomness(trial, b), rounds);
        if (b == 0) {
            v.cr_score = cv.score;
            v.cr_vacuous = cv.vacuous;
        }
        if (cv.accept)
            ++passed;
    }
    v.cr_blocks_passed = passed;
    bool cr_ok = static_cast<double>(passed) >= cfg.alpha * cfg.blocks - 1e-12;
    if (!cr_ok) {
        v.accept = false;
        v.reason = RejectReason::CrTest;
        return v;
    }
    v.accept = true;
    v.reason = RejectReason::None;
    return v;
}

RunResult run_cvpv(const CompilerConfig& cfg, const Strategy& strategy,
                   const Seed& trial) {
    cfg.validate();

    auto state = std::make_shared<EngineState>();
    state->spec = cfg.make_spec();
    state->blocks.assign(static_cast<std::size_t>(cfg.blocks),
                         std::vector<RoundCollector>(static_cast<std::size_t>(cfg.rounds)));

    auto oracle = make_trial_oracle(cfg, trial);

    Simulation sim;
    ProtocolView view;
    view.cfg = &cfg;
    view.oracle = oracle.get();
    view.prover_randomness = prover_seed(trial);
    view.v0 = kV0;
    view.v1 = kV1;

    std::vector<ColluderDecl> colluders = strategy.instantiate(view);
    if (colluders.empty())
        throw ConfigInvalid("strategy produced no colluders");
    std::vector<PartyId> prover_ids;
    for (std::size_t i = 0; i < colluders.size(); ++i)
        prover_ids.push_back(kFirstColluder + static_cast<PartyId>(i));

    // Pre-shared values. Non-adaptive challenges are fixed at t = -inf, the
    // adaptive ones are recomputed by V0's timer from answers seen so far.
    for (int b = 0; b < cfg.blocks; ++b)
        for (int i = 1; i <= cfg.rounds; ++i) {
            RoundCollector& rc = state->blocks[b][i - 1];
            if (!state->spec.adaptive) {
                rc.secrets =
                    derive_round_secrets(cfg, state->spec, trial, *oracle, b, i);
                rc.secrets_ready = true;
            } else {
                Seed r = verifier_randomness(trial, b);
                rc.secrets.x = PrfStream(derive_seed(r, "share-x"), "round",
                                         static_cast<std::uint64_t>(i))
                                   .next_bits(cfg.share_bits);
                rc.secrets.y = PrfStream(derive_seed(r, "share-y"), "round",
                                         static_cast<std::uint64_t>(i))
                                   .next_bits(cfg.share_bits);
                rc.secrets.test_round = state->spec.test_flag(r, i);
            }
        }

    auto record_answer = [state](PartyId side, const Event& e) {
        auto msg = decode_answer(e.payload);
        if (!msg)
            return;
        if (msg->block < 0 || msg->block >= static_cast<int>(state->blocks.size()))
            return;
        if (msg->round < 1 ||
            msg->round > static_cast<int>(state->blocks[msg->block].size()))
            return;
        RoundCollector& rc = state->blocks[msg->block][msg->round - 1];
        AnswerSeen& slot = side == kV0 ? rc.at_v0 : rc.at_v1;
        if (slot.present)
            return; // first answer wins; extras only show in the log
        slot.present = true;
        slot.t_arrive = e.t_arrive;
        slot.payload = e.payload;
        slot.decoded = msg->strings;
    };

    // Answers are processed before timers inside a batch so an adaptive
    // generator firing at the same instant sees the round that just closed.
    Handler v0_final = [state, oracle, trial, record_answer, prover_ids](
                           Context& ctx, const std::vector<const Event*>& batch) {
        for (const Event* e : batch)
            if (e->kind == "answer")
                record_answer(kV0, *e);
        for (const Event* e : batch) {
            if (e->kind != "timer")
                continue;
            int b, i;
            if (!decode_timer(e->payload, b, i))
                continue;
            RoundCollector& rc = state->blocks[b][i - 1];
            if (!rc.secrets_ready) {
                std::vector<std::vector<Bits>> prior;
                for (int j = 1; j < i; ++j)
                    prior.push_back(state->blocks[b][j - 1].at_v0.decoded);
                Seed r = verifier_randomness(trial, b);
                rc.secrets.ch = state->spec.gen_adaptive(r, i, prior);
                rc.secrets.s = oracle->otp_encode(kV0, rc.secrets.x ^ rc.secrets.y,
                                                  rc.secrets.ch, ctx.now());
                rc.secrets_ready = true;
            }
            Bytes payload = encode_share_v0(b, i, rc.secrets.x, rc.secrets.s);
            for (PartyId p : prover_ids)
                ctx.send_now(p, "share0", payload);
        }
    };
    Handler v1_final = [state, record_answer, prover_ids](
                           Context& ctx, const std::vector<const Event*>& batch) {
        for (const Event* e : batch)
            if (e->kind == "answer")
                record_answer(kV1, *e);
        for (const Event* e : batch) {
            if (e->kind != "timer")
                continue;
            int b, i;
            if (!decode_timer(e->payload, b, i))
                continue;
            const RoundCollector& rc = state->blocks[b][i - 1];
            Bytes payload = encode_share_v1(b, i, rc.secrets.y);
            for (PartyId p : prover_ids)
                ctx.send_now(p, "share1", payload);
        }
    };

    sim.add_party({kV0, "V0", {cfg.geometry.v0}, v0_final});
    sim.add_party({kV1, "V1", {cfg.geometry.v1}, v1_final});
    for (std::size_t i = 0; i < colluders.size(); ++i)
        sim.add_party({prover_ids[i], colluders[i].label, {colluders[i].position},
                       colluders[i].handler, cfg.compute_delay});

    oracle->register_party(kV0);
    oracle->register_party(kV1);
    for (PartyId p : prover_ids)
        oracle->register_party(p);

    for (int b = 0; b < cfg.blocks; ++b)
        for (int i = 1; i <= cfg.rounds; ++i) {
            double t = cfg.send_time(b, i);
            sim.post(kV0, kV0, "timer", encode_timer(b, i), t);
            sim.post(kV1, kV1, "timer", encode_timer(b, i), t);
        }

    RunResult result;
    result.oracle = oracle;
    result.log = sim.run_until(cfg.horizon());
    result.party_labels = sim.party_labels();

    for (int b = 0; b < cfg.blocks; ++b)
        for (int i = 1; i <= cfg.rounds; ++i) {
            CompiledRound rd;
            rd.block = b;
            rd.round = i;
            rd.secrets = state->blocks[b][i - 1].secrets;
            rd.at_v0 = state->blocks[b][i - 1].at_v0;
            rd.at_v1 = state->blocks[b][i - 1].at_v1;
            result.transcript.rounds.push_back(std::move(rd));
        }

    result.verdict = verdict_checks(result.transcript, cfg, trial);

    for (int b = 0; b < cfg.blocks; ++b) {
        std::vector<CrRound> rounds;
        for (const CompiledRound& rd : result.transcript.rounds) {
            if (rd.block != b)
                continue;
            CrRound cr;
            cr.challenge = rd.secrets.ch;
            cr.answer = rd.at_v0.decoded;
            cr.test_round = rd.secrets.test_round;
            rounds.push_back(std::move(cr));
        }
        result.cr_blocks.push_back(
            assemble_transcript(state->spec, verifier_randomness(trial, b), rounds));
    }

    Time lo = 0.0, hi = 0.0;
    bool first = true;
    for (const Event& e : result.log.events()) {
        if (first || e.t_send < lo)
            lo = e.t_send;
        if (first || e.t_arrive > hi)
            hi = e.t_arrive;
        first = false;
    }
    result.span = first ? 0.0 : hi - lo;
    return result;
}

namespace {

RunResult run_mode_checked(Mode expected, const CompilerConfig& cfg, const Strategy& s,
                           const Seed& t) {
    if (cfg.mode != expected)
        throw ConfigInvalid("config mode does not match the requested construction");
    return run_cvpv(cfg, s, t);
}

} // namespace

RunResult run_single_round(const CompilerConfig& cfg, const Strategy& s, const Seed& t) {
    return run_mode_checked(Mode::Single, cfg, s, t);
}
RunResult run_sequential(const CompilerConfig& cfg, const Strategy& s, const Seed& t) {
    return run_mode_checked(Mode::Sequential, cfg, s, t);
}
RunResult run_rapid_fire(const CompilerConfig& cfg, const Strategy& s, const Seed& t) {
    return run_mode_checked(Mode::RapidFire, cfg, s, t);
}
RunResult run_seq_rapid_fire(const CompilerConfig& cfg, const Strategy& s, const Seed& t) {
    return run_mode_checked(Mode::SeqRapidFire, cfg, s, t);
}

CrProtocolSpec cvpv_to_cr(const CompilerConfig& cfg, const Seed& trial) {
    cfg.validate();
    CrProtocolSpec inner = cfg.make_spec();
    if (inner.adaptive)
        throw ConfigInvalid("the CVPV->CR adapter needs non-adaptive challenges");

    auto oracle = make_trial_oracle(cfg, trial);
    CompilerConfig bound_cfg = cfg;

    CrProtocolSpec spec;
    spec.name = "cvpv-adapter(" + inner.name + ")";
    spec.rounds = cfg.total_rounds();
    spec.adaptive = false;
    spec.challenge_bits = cfg.share_bits + cfg.oracle.output_bits + cfg.share_bits;
    spec.answer_strings = inner.answer_strings;
    spec.answer_bits = inner.answer_bits;

    auto secrets_for = [bound_cfg, inner, trial, oracle](int global_round) {
        int block = (global_round - 1) / bound_cfg.rounds;
        int round = (global_round - 1) % bound_cfg.rounds + 1;
        return derive_round_secrets(bound_cfg, inner, trial, *oracle, block, round);
    };

    spec.gen_nonadaptive = [secrets_for](const Seed&, int round) {
        RoundSecrets sec = secrets_for(round);
        return sec.x.concat(sec.s).concat(sec.y);
    };
    spec.test_flag = [secrets_for](const Seed&, int round) {
        return secrets_for(round).test_round;
    };
    spec.verify = [bound_cfg, inner, trial, secrets_for](
                      const Seed&, const std::vector<CrRound>& seen) {
        // CVPV predicate minus physical timing: a single co-located party
        // makes the consistency check collapse, the backend test remains,
        // block structure preserved.
        CrVerdict out;
        int passed = 0;
        for (int b = 0; b < bound_cfg.blocks; ++b) {
            std::vector<CrRound> rounds;
            for (int i = 1; i <= bound_cfg.rounds; ++i) {
                int g = b * bound_cfg.rounds + i;
                CrRound cr;
                RoundSecrets sec = secrets_for(g);
                cr.challenge = sec.ch;
                cr.test_round = sec.test_round;
                if (g - 1 < static_cast<int>(seen.size()))
                    cr.answer = seen[g - 1].answer;
                rounds.push_back(std::move(cr));
            }
            CrVerdict cv = inner.verify(verifier_randomness(trial, b), rounds);
            if (b == 0) {
                out.score = cv.score;
                out.vacuous = cv.vacuous;
                out.test_rounds = cv.test_rounds;
            }
            if (cv.accept)
                ++passed;
        }
        out.accept =
            static_cast<double>(passed) >= bound_cfg.alpha * bound_cfg.blocks - 1e-12;
        return out;
    };
    spec.honest_answer = [bound_cfg, inner, oracle](const Bits& bundle, PrfRng& rng) {
        std::size_t m = bound_cfg.share_bits;
        std::size_t n = bound_cfg.oracle.output_bits;
        if (bundle.size() != 2 * m + n)
            throw LengthMismatch("adapter challenge bundle has the wrong width");
        Bits x = bundle.slice(0, m);
        Bits s = bundle.slice(m, n);
        Bits y = bundle.slice(m + n, m);
        Bits ch = oracle->otp_decode(kFirstColluder, x ^ y, s);
        return inner.honest_answer(ch, rng);
    };
    return spec;
}

} // namespace cvpv
