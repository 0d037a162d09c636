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

#include "cvpv/campaign.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace cvpv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json geometry_to_json(const Geometry& g) {
    return ordered_json{{"v0", g.v0}, {"v1", g.v1}, {"claimed", g.claimed}};
}

ordered_json compiler_to_json(const CompilerConfig& c) {
    ordered_json j;
    j["mode"] = to_string(c.mode);
    j["geometry"] = geometry_to_json(c.geometry);
    j["rounds"] = c.rounds;
    j["delta"] = c.delta;
    j["blocks"] = c.blocks;
    j["alpha"] = c.alpha;
    j["block_gap"] = c.block_gap;
    j["tau"] = c.tau;
    j["compute_delay"] = c.compute_delay;
    j["backend"] = ordered_json{{"kind", c.backend_kind},
                                {"n_qubits", c.backend.n_qubits},
                                {"depth", c.backend.depth},
                                {"samples_per_round", c.backend.samples_per_round},
                                {"test_probability", c.backend.test_probability},
                                {"score_delta", c.backend.score_delta},
                                {"challenge_bits", c.backend.challenge_bits}};
    j["share_bits"] = c.share_bits;
    j["oracle"] = ordered_json{{"input_bits", c.oracle.input_bits},
                               {"output_bits", c.oracle.output_bits},
                               {"key_bits", c.oracle.key_bits},
                               {"lazy", c.oracle.lazy}};
    return j;
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigParseError(std::string("config field '") + key + "': " + e.what());
    }
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigParseError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        std::string mode = get_or<std::string>(j, "mode", "single");
        cfg.compiler.mode = mode_from_string(mode);
        cfg.compiler.geometry = default_geometry(cfg.compiler.mode);
        if (j.contains("geometry")) {
            const auto& g = j.at("geometry");
            cfg.compiler.geometry.v0 = get_or<double>(g, "v0", cfg.compiler.geometry.v0);
            cfg.compiler.geometry.v1 = get_or<double>(g, "v1", cfg.compiler.geometry.v1);
            cfg.compiler.geometry.claimed =
                get_or<double>(g, "claimed", cfg.compiler.geometry.claimed);
        }
        cfg.compiler.rounds = get_or<int>(j, "rounds", cfg.compiler.rounds);
        cfg.compiler.delta = get_or<double>(j, "delta", cfg.compiler.delta);
        cfg.compiler.blocks = get_or<int>(j, "blocks", cfg.compiler.blocks);
        cfg.compiler.alpha = get_or<double>(j, "alpha", cfg.compiler.alpha);
        cfg.compiler.block_gap = get_or<double>(j, "block_gap", cfg.compiler.block_gap);
        cfg.compiler.tau = get_or<double>(j, "tau", cfg.compiler.tau);
        cfg.compiler.compute_delay =
            get_or<double>(j, "compute_delay", cfg.compiler.compute_delay);
        if (j.contains("backend")) {
            const auto& b = j.at("backend");
            cfg.compiler.backend_kind =
                get_or<std::string>(b, "kind", cfg.compiler.backend_kind);
            cfg.compiler.backend.n_qubits =
                get_or<int>(b, "n_qubits", cfg.compiler.backend.n_qubits);
            cfg.compiler.backend.depth = get_or<int>(b, "depth", cfg.compiler.backend.depth);
            cfg.compiler.backend.samples_per_round = get_or<std::size_t>(
                b, "samples_per_round", cfg.compiler.backend.samples_per_round);
            cfg.compiler.backend.test_probability = get_or<double>(
                b, "test_probability", cfg.compiler.backend.test_probability);
            cfg.compiler.backend.score_delta =
                get_or<double>(b, "score_delta", cfg.compiler.backend.score_delta);
            cfg.compiler.backend.challenge_bits = get_or<std::size_t>(
                b, "challenge_bits", cfg.compiler.backend.challenge_bits);
        }
        cfg.compiler.share_bits =
            get_or<std::size_t>(j, "share_bits", cfg.compiler.share_bits);
        // Oracle widths follow the protocol wire widths unless pinned.
        cfg.compiler.oracle.input_bits = cfg.compiler.share_bits;
        cfg.compiler.oracle.output_bits = cfg.compiler.make_spec().challenge_bits;
        if (j.contains("oracle")) {
            const auto& o = j.at("oracle");
            cfg.compiler.oracle.input_bits =
                get_or<std::size_t>(o, "input_bits", cfg.compiler.oracle.input_bits);
            cfg.compiler.oracle.output_bits =
                get_or<std::size_t>(o, "output_bits", cfg.compiler.oracle.output_bits);
            cfg.compiler.oracle.key_bits =
                get_or<std::size_t>(o, "key_bits", cfg.compiler.oracle.key_bits);
            cfg.compiler.oracle.lazy = get_or<bool>(o, "lazy", cfg.compiler.oracle.lazy);
        }
        if (j.contains("strategy")) {
            const auto& s = j.at("strategy");
            cfg.strategy_kind = get_or<std::string>(s, "kind", cfg.strategy_kind);
            cfg.strategy_params.offset =
                get_or<double>(s, "offset", cfg.strategy_params.offset);
            if (s.contains("positions")) {
                auto pos = s.at("positions").get<std::vector<double>>();
                if (pos.size() != 2)
                    throw ConfigParseError("strategy.positions needs exactly two values");
                cfg.strategy_params.positions = std::make_pair(pos[0], pos[1]);
            }
        }
        cfg.trials = get_or<int>(j, "trials", cfg.trials);
        cfg.master_seed = Seed::from_hex(get_or<std::string>(j, "seed", "00"));
        cfg.workers = get_or<int>(j, "workers", cfg.workers);
        cfg.out_dir = get_or<std::string>(j, "out_dir", cfg.out_dir);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigParseError(std::string("config structure: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigParseError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::string RunConfig::to_json_text() const {
    ordered_json j = compiler_to_json(compiler);
    ordered_json s;
    s["kind"] = strategy_kind;
    s["offset"] = strategy_params.offset;
    if (strategy_params.positions)
        s["positions"] = {strategy_params.positions->first,
                          strategy_params.positions->second};
    j["strategy"] = s;
    j["trials"] = trials;
    j["seed"] = master_seed.to_hex();
    j["workers"] = workers;
    j["out_dir"] = out_dir;
    return j.dump(2);
}

void RunConfig::validate() const {
    compiler.validate();
    make_strategy(strategy_kind, strategy_params); // throws UnknownKind
    if (trials < 0)
        throw ConfigInvalid("trial count must be non-negative");
    if (workers < 1)
        throw ConfigInvalid("need at least one worker");
}

Seed RunConfig::trial_seed(int index) const {
    return derive_seed(master_seed, "trial", static_cast<std::uint64_t>(index));
}

std::string TrialRecord::to_json_line() const {
    ordered_json j;
    j["trial"] = index;
    j["seed"] = seed.to_hex();
    j["accept"] = accept;
    j["reason"] = to_string(reason);
    j["score"] = score;
    j["vacuous"] = cr_vacuous;
    j["span"] = span;
    return j.dump();
}

std::string CampaignReport::to_json() const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["trials"] = trials;
    j["accept_rate"] = accept_rate;
    j["reason_histogram"] = reason_histogram;
    j["mean_score"] = mean_score;
    j["config"] = nlohmann::ordered_json::parse(config_echo);
    return j.dump(2);
}

std::string trials_to_summary_csv(const std::vector<TrialRecord>& records) {
    std::string out = "trial,accept,reason,score,span\n";
    for (const TrialRecord& r : records) {
        out += std::to_string(r.index) + "," + (r.accept ? "1" : "0") + "," +
               to_string(r.reason) + "," + ordered_json(r.score).dump() + "," +
               ordered_json(r.span).dump() + "\n";
    }
    return out;
}

std::string run_result_to_json(const RunResult& result) {
    ordered_json j;
    j["verdict"] = result.verdict.accept ? "Accept" : "Reject";
    j["reason"] = to_string(result.verdict.reason);
    j["cr_score"] = result.verdict.cr_score;
    j["cr_vacuous"] = result.verdict.cr_vacuous;
    j["cr_blocks_passed"] = result.verdict.cr_blocks_passed;
    ordered_json rounds = ordered_json::array();
    for (const CompiledRound& rd : result.transcript.rounds) {
        ordered_json r;
        r["block"] = rd.block;
        r["round"] = rd.round;
        r["ch_hex"] = rd.secrets.ch.to_hex();
        r["test"] = rd.secrets.test_round;
        r["answer_seen_v0"] = rd.at_v0.present;
        r["answer_seen_v1"] = rd.at_v1.present;
        rounds.push_back(std::move(r));
    }
    j["rounds"] = std::move(rounds);
    ordered_json timings = ordered_json::array();
    for (const RoundTimingDiag& tm : result.verdict.timings) {
        ordered_json t;
        t["block"] = tm.block;
        t["round"] = tm.round;
        t["expected_v0"] = tm.expected_v0;
        t["actual_v0"] = tm.actual_v0;
        t["expected_v1"] = tm.expected_v1;
        t["actual_v1"] = tm.actual_v1;
        t["ok"] = tm.ok;
        timings.push_back(std::move(t));
    }
    j["timings"] = std::move(timings);
    ordered_json mismatches = ordered_json::array();
    for (int idx : result.verdict.mismatch_rounds)
        mismatches.push_back(idx);
    j["mismatch_rounds"] = std::move(mismatches);
    j["span"] = result.span;
    return j.dump(2);
}

CampaignReport run_campaign(const RunConfig& cfg, std::vector<TrialRecord>* trials_out) {
    cfg.validate();
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));

    auto run_one = [&cfg](int index) {
        auto strategy = make_strategy(cfg.strategy_kind, cfg.strategy_params);
        Seed seed = cfg.trial_seed(index);
        RunResult rr = run_cvpv(cfg.compiler, *strategy, seed);
        TrialRecord rec;
        rec.index = index;
        rec.seed = seed;
        rec.accept = rr.verdict.accept;
        rec.reason = rr.verdict.reason;
        rec.score = rr.verdict.cr_score;
        rec.cr_vacuous = rr.verdict.cr_vacuous;
        rec.span = rr.span;
        return rec;
    };

    int workers = std::min(cfg.workers, std::max(1, cfg.trials));
    if (workers <= 1) {
        for (int i = 0; i < cfg.trials; ++i)
            records[static_cast<std::size_t>(i)] = run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < cfg.trials; i += workers)
                        records[static_cast<std::size_t>(i)] = run_one(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    CampaignReport report;
    report.trials = cfg.trials;
    report.config_echo = cfg.to_json_text();
    int accepts = 0;
    double score_total = 0.0;
    for (const TrialRecord& r : records) {
        accepts += r.accept;
        score_total += r.score;
        ++report.reason_histogram[to_string(r.reason)];
    }
    report.accept_rate = cfg.trials ? static_cast<double>(accepts) / cfg.trials : 0.0;
    report.mean_score = cfg.trials ? score_total / cfg.trials : 0.0;
    if (trials_out)
        *trials_out = std::move(records);
    return report;
}

CampaignReport run_campaign_to_dir(const RunConfig& cfg) {
    std::vector<TrialRecord> records;
    CampaignReport report = run_campaign(cfg, &records);

    std::filesystem::create_directories(cfg.out_dir);
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "report.json");
        out << report.to_json() << "\n";
    }
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "trials.jsonl");
        for (const TrialRecord& r : records)
            out << r.to_json_line() << "\n";
    }
    {
        std::ofstream out(std::filesystem::path(cfg.out_dir) / "summary.csv");
        out << trials_to_summary_csv(records);
    }
    return report;
}

RunResult replay_trial(const RunConfig& cfg, const Seed& trial_seed) {
    auto strategy = make_strategy(cfg.strategy_kind, cfg.strategy_params);
    return run_cvpv(cfg.compiler, *strategy, trial_seed);
}

} // namespace cvpv
