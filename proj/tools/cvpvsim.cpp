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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include <cvpv/campaign.hpp>
#include <cvpv/entropy.hpp>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSimulation = 3;

using ordered_json = nlohmann::ordered_json;

cvpv::RunConfig load_config(const std::string& path,
                            const std::optional<int>& trials,
                            const std::optional<std::string>& seed,
                            const std::optional<int>& workers,
                            const std::optional<std::string>& out_dir) {
    cvpv::RunConfig cfg = cvpv::RunConfig::from_json_file(path);
    if (trials)
        cfg.trials = *trials;
    if (seed)
        cfg.master_seed = cvpv::Seed::from_hex(*seed);
    if (workers)
        cfg.workers = *workers;
    if (out_dir)
        cfg.out_dir = *out_dir;
    cfg.validate();
    return cfg;
}

int cmd_run(const cvpv::RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    cvpv::CampaignReport report = cvpv::run_campaign_to_dir(cfg);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << report.to_json() << "\n";
    // wall clock goes to the console only so the report files stay
    // byte-identical across reruns
    std::cerr << "campaign finished in " << ms << " ms, outputs in " << cfg.out_dir
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spacetime simulator for compiled position-verification protocols"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a trial campaign from a config file");
    std::string run_config;
    std::optional<int> run_trials, run_workers;
    std::optional<std::string> run_seed, run_out;
    run->add_option("--config", run_config, "config JSON path")->required();
    run->add_option("--trials", run_trials, "override trial count");
    run->add_option("--seed", run_seed, "override master seed (hex)");
    run->add_option("--workers", run_workers, "worker threads");
    run->add_option("--out", run_out, "output directory");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate the entropy calculators");
    bounds->set_help_flag("--help", "print help"); // frees --h for the EAT rate
    std::optional<double> b_n, b_h;
    double b_c1 = 0, b_c0 = 0;
    bounds->add_option("--n", b_n, "EAT rounds");
    bounds->add_option("--h", b_h, "EAT per-round rate");
    bounds->add_option("--c1", b_c1, "EAT sqrt coefficient");
    bounds->add_option("--c0", b_c0, "EAT constant");
    std::optional<double> b_geps;
    bounds->add_option("--g-eps", b_geps, "epsilon for g(eps)");
    std::optional<double> b_shmin;
    double b_seps = 0;
    bounds->add_option("--smooth-hmin", b_shmin, "smooth min-entropy");
    bounds->add_option("--smooth-eps", b_seps, "smoothing epsilon");
    std::optional<double> b_ptest, b_pblock;
    double b_hmin = 0, b_alpha = 1.0;
    std::int64_t b_m = 1;
    bounds->add_option("--p-test", b_ptest, "single-shot test pass probability");
    bounds->add_option("--hmin", b_hmin, "min-entropy of the answer");
    bounds->add_option("--p-block", b_pblock, "per-block cheat probability");
    bounds->add_option("--alpha", b_alpha, "required block fraction");
    bounds->add_option("--m", b_m, "block count");
    std::optional<double> b_xn;
    double b_xdelta = 1.0, b_eta = 0.5, b_clog = 0.0;
    bounds->add_option("--xhog-n", b_xn, "qubit count");
    bounds->add_option("--xhog-delta", b_xdelta, "XHOG margin delta");
    bounds->add_option("--eta", b_eta, "slack eta");
    bounds->add_option("--c-log", b_clog, "O(log n) constant");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "strategy/mode/delta grid");
    std::string sweep_config;
    std::vector<std::string> sweep_strategies{"honest", "precommit-answer"};
    std::vector<std::string> sweep_modes{"single"};
    std::vector<double> sweep_deltas{0.5};
    int sweep_trials = 10;
    std::optional<std::string> sweep_out;
    sweep_cmd->add_option("--config", sweep_config, "base config JSON path")->required();
    sweep_cmd->add_option("--strategies", sweep_strategies, "strategy kinds")
        ->delimiter(',');
    sweep_cmd->add_option("--modes", sweep_modes, "compiler modes")->delimiter(',');
    sweep_cmd->add_option("--deltas", sweep_deltas, "score margins")->delimiter(',');
    sweep_cmd->add_option("--trials", sweep_trials, "trials per cell");
    sweep_cmd->add_option("--out", sweep_out, "CSV output path");

    // replay
    auto* replay = app.add_subcommand("replay", "reconstruct one trial's event log");
    std::string replay_config, replay_seed;
    std::optional<std::string> replay_out, replay_result;
    replay->add_option("--config", replay_config, "config JSON path")->required();
    replay->add_option("--seed", replay_seed, "recorded per-trial seed (hex)")->required();
    replay->add_option("--out", replay_out, "write JSONL here instead of stdout");
    replay->add_option("--result", replay_result,
                       "also write the verdict/timing report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints usage/help text
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(
                load_config(run_config, run_trials, run_seed, run_workers, run_out));

        if (bounds->parsed()) {
            ordered_json out;
            if (b_n || b_h) {
                if (!b_n || !b_h) {
                    std::cerr << "usage error: --n and --h go together\n";
                    return kExitUsage;
                }
                cvpv::EatParams p;
                p.n = *b_n;
                p.h = *b_h;
                p.c1 = b_c1;
                p.c0 = b_c0;
                out["eat_bound"] = cvpv::eat_bound(p);
            }
            if (b_geps)
                out["g_correction"] = cvpv::g_correction(*b_geps);
            if (b_shmin)
                out["minentropy_from_smooth"] =
                    cvpv::minentropy_from_smooth(*b_shmin, b_seps);
            if (b_ptest || b_pblock) {
                cvpv::SuccessBounds b = cvpv::success_bounds(
                    b_ptest.value_or(1.0), b_hmin, b_pblock.value_or(1.0), b_alpha, b_m);
                out["success_single"] = b.single;
                out["success_repeated_raw"] = b.repeated_raw;
                out["success_repeated"] = b.repeated;
            }
            if (b_xn)
                out["xhog_entropy"] = cvpv::xhog_entropy(*b_xn, b_xdelta, b_eta, b_clog);
            if (out.empty()) {
                std::cerr << "usage error: no parameter group given; see bounds --help\n";
                return kExitUsage;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (sweep_cmd->parsed()) {
            cvpv::RunConfig base = load_config(sweep_config, std::nullopt, std::nullopt,
                                               std::nullopt, std::nullopt);
            std::vector<cvpv::Mode> modes;
            for (const std::string& m : sweep_modes)
                modes.push_back(cvpv::mode_from_string(m));
            auto cells = cvpv::sweep(sweep_strategies, modes, sweep_deltas,
                                     base.compiler, sweep_trials, base.master_seed);
            std::string csv = cvpv::sweep_to_csv(cells);
            if (sweep_out) {
                std::ofstream out_file(*sweep_out);
                out_file << csv;
            } else {
                std::cout << csv;
            }
            return 0;
        }

        if (replay->parsed()) {
            cvpv::RunConfig cfg = load_config(replay_config, std::nullopt, std::nullopt,
                                              std::nullopt, std::nullopt);
            cvpv::RunResult rr =
                cvpv::replay_trial(cfg, cvpv::Seed::from_hex(replay_seed));
            std::string jsonl = rr.log.to_jsonl(rr.party_labels);
            if (replay_out) {
                std::ofstream out_file(*replay_out);
                out_file << jsonl;
            } else {
                std::cout << jsonl;
            }
            if (replay_result) {
                std::ofstream out_file(*replay_result);
                out_file << cvpv::run_result_to_json(rr) << "\n";
            }
            std::cerr << "verdict: " << (rr.verdict.accept ? "Accept" : "Reject") << " ("
                      << cvpv::to_string(rr.verdict.reason) << ")\n";
            return 0;
        }
    } catch (const cvpv::ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvpv::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cvpv::Error& e) {
        std::cerr << "simulation failure: " << e.what() << "\n";
        return kExitSimulation;
    } catch (const std::exception& e) {
        std::cerr << "simulation failure: " << e.what() << "\n";
        return kExitSimulation;
    }
    return 0;
}
