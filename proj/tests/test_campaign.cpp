#include <doctest.h>

#include <fstream>
#include <sstream>

#include <cvpv/campaign.hpp>

using namespace cvpv;

namespace {

const char* kTinyConfig = R"json({
  "mode": "sequential",
  "rounds": 2,
  "backend": {"kind": "rcs", "n_qubits": 4, "depth": 6,
              "samples_per_round": 20, "test_probability": 1.0,
              "score_delta": 0.5},
  "strategy": {"kind": "honest"},
  "trials": 5,
  "seed": "901d",
  "workers": 1,
  "out_dir": "unused"
})json";

std::string trials_text(const RunConfig& cfg) {
    std::vector<TrialRecord> records;
    run_campaign(cfg, &records);
    std::string out;
    for (const TrialRecord& r : records)
        out += r.to_json_line() + "\n";
    return out;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("round trips and validates") {
        RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
        CHECK(cfg.compiler.mode == Mode::Sequential);
        CHECK(cfg.compiler.rounds == 2);
        CHECK(cfg.compiler.geometry.v1 == 1.0); // sequential default geometry
        CHECK(cfg.trials == 5);
        RunConfig echo = RunConfig::from_json_text(cfg.to_json_text());
        CHECK(echo.to_json_text() == cfg.to_json_text());
    }
    SUBCASE("silently bad JSON is a parse error") {
        CHECK_THROWS_AS(RunConfig::from_json_text("{nope"), ConfigParseError);
        CHECK_THROWS_AS(RunConfig::from_json_text("{\"rounds\": \"many\"}"),
                        ConfigParseError);
    }
    SUBCASE("semantic violations fail validation") {
        CHECK_THROWS_AS(RunConfig::from_json_text(
                            R"({"mode":"rapid-fire","rounds":9,"delta":0.2})"),
                        ConfigInvalid);
        CHECK_THROWS_AS(RunConfig::from_json_text(
                            R"({"strategy":{"kind":"not-a-thing"}})"),
                        UnknownKind);
    }
    SUBCASE("unknown mode") {
        CHECK_THROWS_AS(RunConfig::from_json_text(R"({"mode":"quintuple"})"),
                        ConfigInvalid);
    }
}

TEST_CASE("zero trials produce an empty, well-formed report") {
    RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
    cfg.trials = 0;
    std::vector<TrialRecord> records;
    CampaignReport report = run_campaign(cfg, &records);
    CHECK(records.empty());
    CHECK(report.trials == 0);
    CHECK(report.accept_rate == 0.0);
    CHECK(report.to_json().find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("campaigns are byte-identical across reruns and worker counts") {
    RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
    std::string once = trials_text(cfg);
    std::string twice = trials_text(cfg);
    CHECK(once == twice);

    RunConfig parallel = cfg;
    parallel.workers = 4;
    CHECK(trials_text(parallel) == once);

    RunConfig other_seed = cfg;
    other_seed.master_seed = Seed::from_hex("07e5");
    CHECK(trials_text(other_seed) != once);
}

TEST_CASE("golden regression on the pinned tiny campaign") {
    RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
    std::ifstream golden(std::string(CVPV_TEST_DATA_DIR) + "/golden_trials.jsonl");
    REQUIRE(golden.good());
    std::stringstream buf;
    buf << golden.rdbuf();
    CHECK(trials_text(cfg) == buf.str());
}

TEST_CASE("replay reproduces a recorded trial's event log") {
    RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
    std::vector<TrialRecord> records;
    run_campaign(cfg, &records);
    REQUIRE(records.size() == 5);

    RunResult direct = replay_trial(cfg, records[3].seed);
    RunResult again = replay_trial(cfg, records[3].seed);
    CHECK(direct.log.to_jsonl(direct.party_labels) ==
          again.log.to_jsonl(again.party_labels));
    CHECK(direct.verdict.accept == records[3].accept);
    CHECK(direct.span == records[3].span);
}

TEST_CASE("campaign outputs land in the output directory") {
    RunConfig cfg = RunConfig::from_json_text(kTinyConfig);
    cfg.out_dir = "campaign_test_out";
    run_campaign_to_dir(cfg);
    CHECK(std::ifstream(cfg.out_dir + "/report.json").good());
    CHECK(std::ifstream(cfg.out_dir + "/trials.jsonl").good());
    CHECK(std::ifstream(cfg.out_dir + "/summary.csv").good());

    std::ifstream summary(cfg.out_dir + "/summary.csv");
    std::string header;
    std::getline(summary, header);
    CHECK(header == "trial,accept,reason,score,span");
    int lines = 0;
    std::string line;
    while (std::getline(summary, line))
        lines += !line.empty();
    CHECK(lines == cfg.trials); // one summary line per trial
}

TEST_CASE("honest vs precommit campaign separates cleanly") {
    RunConfig honest = RunConfig::from_json_text(kTinyConfig);
    honest.compiler.backend.n_qubits = 8;
    honest.compiler.backend.depth = 12;
    honest.compiler.backend.samples_per_round = 100;
    honest.trials = 20;
    CampaignReport hr = run_campaign(honest, nullptr);

    RunConfig cheat = honest;
    cheat.strategy_kind = "precommit-answer";
    CampaignReport cr = run_campaign(cheat, nullptr);

    CHECK(hr.accept_rate >= 0.9);
    CHECK(cr.accept_rate <= 0.01);
    int total = 0;
    for (const auto& [k, v] : cr.reason_histogram)
        total += v;
    CHECK(total == cheat.trials);
}
