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
#include <string>
#include <vector>

#include "cvpv/adversaries.hpp"
#include "cvpv/compilers.hpp"

namespace cvpv {

/// Full experiment description. The master seed determines the whole
/// campaign; nothing on the simulation path reads the clock or the OS.
struct RunConfig {
    CompilerConfig compiler;
    std::string strategy_kind = "honest";
    StrategyParams strategy_params;
    int trials = 10;
    Seed master_seed;
    int workers = 1;
    std::string out_dir = "out";

    static RunConfig from_json_text(const std::string& text); // ConfigParseError
    static RunConfig from_json_file(const std::string& path);
    std::string to_json_text() const; // canonical echo
    void validate() const;

    Seed trial_seed(int index) const;
};

struct TrialRecord {
    int index = 0;
    Seed seed;
    bool accept = false;
    RejectReason reason = RejectReason::None;
    double score = 0.0;
    bool cr_vacuous = false;
    double span = 0.0;

    std::string to_json_line() const;
};

struct CampaignReport {
    int schema_version = 1;
    int trials = 0;
    double accept_rate = 0.0;
    std::map<std::string, int> reason_histogram;
    double mean_score = 0.0;
    std::string config_echo;

    std::string to_json() const;
};

/// Header plus one line per trial: index, accept, reason, score, span.
std::string trials_to_summary_csv(const std::vector<TrialRecord>& records);

/// {verdict, reason, rounds: [...], timings: [...]} for one run.
std::string run_result_to_json(const RunResult& result);

/// Runs the campaign; trial-level parallelism over `workers` threads with
/// per-trial seeds from a counter-mode PRF, so the worker count never
/// changes results. Trial records come back in index order.
CampaignReport run_campaign(const RunConfig& cfg, std::vector<TrialRecord>* trials_out);

/// report.json, trials.jsonl, summary.csv under cfg.out_dir.
CampaignReport run_campaign_to_dir(const RunConfig& cfg);

/// Re-execute one recorded trial and return its full event log.
RunResult replay_trial(const RunConfig& cfg, const Seed& trial_seed);

} // namespace cvpv
