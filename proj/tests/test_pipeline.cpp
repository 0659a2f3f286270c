#include <doctest.h>

#include <cmath>

#include "mstn/errors.hpp"
#include "mstn/pipeline.hpp"
#include "mstn/render.hpp"
#include "mstn/scenario_io.hpp"

using namespace mstn;

namespace {

const std::string kData = MSTN_DATA_DIR;

BaselineMatrix fixture() {
  return load_baseline(kData + "/baseline_transitions.csv");
}

ScenarioFile inline_scenario(const std::string& episodes_json) {
  return parse_scenario(
      R"({"version": "mstn-scenario/1", "name": "inline", "episodes": )" +
          episodes_json + "}",
      "inline");
}

PipelineConfig fast_config() {
  PipelineConfig cfg;
  cfg.rnn_epochs = 30;
  cfg.rnn_hidden = 6;
  return cfg;
}

}  // namespace

TEST_CASE("a dominant pleasant stimulus moves the start state to happy") {
  const auto s =
      inline_scenario(R"([{"events": [{"emotions": {"joy": 0.9}}]}])");
  const auto report = simulate_run(s, fixture(), PipelineConfig{});
  REQUIRE(report.episodes.size() == 1);
  REQUIRE(report.episodes[0].steps.size() == 1);
  const auto& step = report.episodes[0].steps[0];
  CHECK(step.from == MentalState::Quiet);
  CHECK(step.to == MentalState::Happy);
  REQUIRE(step.group.has_value());
  CHECK(step.group->index() == 2);
  CHECK(report.episodes[0].reward == 0.9);
  CHECK_FALSE(report.trained);
}

TEST_CASE("an empty stimulus takes an idle baseline transition") {
  const auto s = inline_scenario(R"([{"events": [{"emotions": {}}]}])");
  const auto report = simulate_run(s, fixture(), PipelineConfig{});
  const auto& step = report.episodes[0].steps[0];
  CHECK(step.from == MentalState::Quiet);
  CHECK_FALSE(step.group.has_value());
  CHECK(report.episodes[0].raw.length() == 0);
  CHECK(report.episodes[0].reward == 0.0);
}

TEST_CASE("replays are reproducible from the seed") {
  const auto s = load_scenario(kData + "/scenario1.json");
  const auto base = fixture();
  PipelineConfig cfg;
  cfg.seed = 5;
  const auto a = simulate_run(s, base, cfg);
  const auto b = simulate_run(s, base, cfg);
  CHECK(render_report(a) == render_report(b));
}

TEST_CASE("the shipped scenario produces the hand-checked episode shapes") {
  const auto report =
      simulate_run(load_scenario(kData + "/scenario1.json"), fixture(),
                   PipelineConfig{});
  REQUIRE(report.episodes.size() == 14);
  CHECK(report.episodes[0].reward == 0.9);
  CHECK(report.episodes[0].detours.empty());
  CHECK(report.episodes[0].cleaned.length() == 2);
  // the second episode dwells in sad before the comfort arrives
  REQUIRE(report.episodes[1].detours.size() == 1);
  CHECK(report.episodes[1].detours[0] == (IndexSpan{1, 1}));
  CHECK(report.episodes[1].cleaned.length() == 2);
  for (const auto& log : report.episodes) {
    REQUIRE(log.cleaned.length() == 2);
    CHECK(log.cleaned.rules[0].input == MentalState::Quiet);
    CHECK(log.cleaned.rules[1] ==
          (Rule{MentalState::Sad, EmotionGroup(2)}));
    CHECK(log.reward > 0.0);
  }
  // every row of the observed matrix is a distribution
  for (auto st : all_states()) {
    double sum = 0.0;
    for (auto to : all_states()) sum += report.empirical.at(st, to);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("training rewards the surviving rules and learns the drift") {
  const auto outcome =
      train_run(load_scenario(kData + "/scenario1.json"), fixture(),
                fast_config());
  const auto& report = outcome.report;
  CHECK(report.trained);
  CHECK(report.loss_curve.size() == 30);
  CHECK(report.loss_curve.front() > report.loss_curve.back());

  // only rules on the cleaned paths carry weight
  CHECK(report.ps_weights.at(Rule{MentalState::Quiet, EmotionGroup(4)}) > 0.0);
  CHECK(report.ps_weights.at(Rule{MentalState::Sad, EmotionGroup(2)}) > 0.0);
  CHECK(report.ps_weights.at(Rule{MentalState::Happy, EmotionGroup(1)}) == 0.0);
  // the sad self-loops were detours and earn nothing
  CHECK(report.ps_weights.at(Rule{MentalState::Sad, EmotionGroup(3)}) == 0.0);
  CHECK(report.ps_weights.at(Rule{MentalState::Sad, EmotionGroup(5)}) == 0.0);

  REQUIRE(report.freq_before.has_value());
  REQUIRE(report.freq_after.has_value());
  REQUIRE(report.traits.has_value());
  for (auto st : all_states()) {
    double sum = 0.0;
    for (auto to : all_states()) sum += report.freq_after->at(st, to);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }

  // the learned tendency should already poke through at this budget
  CHECK(report.freq_after->at(MentalState::Quiet, MentalState::Sad) >
        report.freq_before->at(MentalState::Quiet, MentalState::Sad));

  CHECK(outcome.bundle.provenance.scenario == "scenario-1");
  CHECK(outcome.bundle.provenance.config_hash == report.config_hash);
  CHECK(outcome.bundle.rnn_weights.size() ==
        Topology::standard(6).connections().size());
}

TEST_CASE("zero-reward endings leave the rule table untouched") {
  const auto s = inline_scenario(
      R"([{"events": [{"emotions": {"sadness": 0.5}},
                      {"emotions": {"surprise": 0.4}}]}])");
  const auto outcome = train_run(s, fixture(), fast_config());
  CHECK(outcome.report.episodes[0].reward == 0.0);
  CHECK(outcome.report.ps_weights.total() == 0.0);
  CHECK(outcome.report.trained);  // the network still trains on the steps
  CHECK(!outcome.report.loss_curve.empty());
}

TEST_CASE("training twice with one seed gives identical artifacts") {
  const auto s = load_scenario(kData + "/scenario1.json");
  const auto base = fixture();
  const auto cfg = fast_config();
  const auto a = train_run(s, base, cfg);
  const auto b = train_run(s, base, cfg);
  CHECK(serialize_bundle(a.bundle) == serialize_bundle(b.bundle));
  CHECK(render_report(a.report) == render_report(b.report));
}

TEST_CASE("episodes that overrun the rule budget are rejected") {
  PipelineConfig cfg = fast_config();
  cfg.ps.max_episode_length = 2;
  const auto s = inline_scenario(
      R"([{"events": [{"emotions": {"sadness": 0.5}},
                      {"emotions": {"distress": 0.5}},
                      {"emotions": {"joy": 0.5}}]}])");
  CHECK_THROWS_WITH_AS(simulate_run(s, fixture(), cfg),
                       doctest::Contains("maximum"), ValidationError);
}

TEST_CASE("self-play follows the learned preferences") {
  WeightTable w;
  w.set(Rule{MentalState::Quiet, EmotionGroup(4)}, 5.0);
  w.set(Rule{MentalState::Sad, EmotionGroup(2)}, 5.0);
  w.set(Rule{MentalState::Happy, EmotionGroup(4)}, 5.0);
  Rng rng(61);
  const auto trace = self_play(w, MentalState::Quiet, 40, 0.0, rng);
  REQUIRE(trace.size() == 40);
  CHECK(trace[0].from == MentalState::Quiet);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    REQUIRE(trace[i].group.has_value());
    CHECK(trace[i].to == group_target(*trace[i].group));
    if (i > 0) CHECK(trace[i].from == trace[i - 1].to);
  }
  // greedy play cycles quiet -> sad -> happy -> sad -> ...
  CHECK(trace[0].to == MentalState::Sad);
  CHECK(trace[1].to == MentalState::Happy);
  CHECK(trace[2].to == MentalState::Sad);
  CHECK_THROWS_AS(self_play(w, MentalState::Quiet, -1, 0.0, rng),
                  ValidationError);
}
