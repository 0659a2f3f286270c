#include "mstn/pipeline.hpp"

#include <string>

#include "mstn/errors.hpp"
#include "mstn/pattern_frequency.hpp"

namespace mstn {

namespace {

constexpr MentalState kStartState = MentalState::Quiet;

struct Replay {
  std::vector<EpisodeLog> episodes;
  TransitionCount counts;
};

Replay replay_scenario(const ScenarioFile& scenario,
                       const BaselineMatrix& baseline,
                       const PipelineConfig& config, Rng& rng) {
  const auto costs = CostMatrix::complement_of(baseline.renormalized);
  Replay out;
  int ei = 0;
  for (const auto& episode : scenario.episodes) {
    ++ei;
    EpisodeLog log;
    MentalState current = kStartState;
    EmotionVector last_stimulus;
    for (const auto& event : episode.events) {
      const EmotionVector e = event.to_vector();
      last_stimulus = e;
      if (e.is_zero()) {
        const MentalState to =
            idle_transition(current, baseline.renormalized, rng);
        log.steps.push_back({current, to, std::nullopt, e});
        out.counts.record(current, to);
        current = to;
        continue;
      }
      const NextState ns = next_state(current, e, costs);
      log.raw.rules.push_back({current, ns.group});
      if (log.raw.length() > config.ps.max_episode_length)
        throw ValidationError("episode " + std::to_string(ei) +
                              " exceeds the configured maximum length of " +
                              std::to_string(config.ps.max_episode_length));
      log.steps.push_back({current, ns.state, ns.group, e});
      out.counts.record(current, ns.state);
      current = ns.state;
    }
    log.reward = episode_reward(last_stimulus);
    log.raw.reward = log.reward;
    log.detours = detect_detours(log.raw);
    log.cleaned = remove_detours(log.raw);
    out.episodes.push_back(std::move(log));
  }
  return out;
}

RunReport base_report(const ScenarioFile& scenario,
                      const PipelineConfig& config, Replay replay) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.config = config;
  report.config_hash = config.hash();
  report.episodes = std::move(replay.episodes);
  report.empirical = cost_from_counts(replay.counts).first;
  return report;
}

}  // namespace

RunReport simulate_run(const ScenarioFile& scenario,
                       const BaselineMatrix& baseline,
                       const PipelineConfig& config) {
  config.validate();
  Rng rng(config.seed);
  return base_report(scenario, config,
                     replay_scenario(scenario, baseline, config, rng));
}

TrainOutcome train_run(const ScenarioFile& scenario,
                       const BaselineMatrix& baseline,
                       const PipelineConfig& config) {
  config.validate();
  Rng rng(config.seed);
  auto replay = replay_scenario(scenario, baseline, config, rng);

  WeightTable ps;
  for (const auto& log : replay.episodes)
    reinforce(ps, log.cleaned, config.ps);

  // surviving stimulus steps become the training set, one sequence per episode
  std::vector<TrainingSequence> data;
  for (const auto& log : replay.episodes) {
    TrainingSequence seq;
    int rule_idx = 0;
    for (const auto& step : log.steps) {
      if (!step.group) continue;  // idle steps carry no signal
      const int idx = rule_idx++;
      bool removed = false;
      for (const auto& span : log.detours)
        if (idx >= span.first && idx <= span.last) {
          removed = true;
          break;
        }
      if (removed) continue;
      TrainingStep ts{};
      for (int k = 1; k <= kGroupCount; ++k)
        ts.input[group_input_slot(k)] = step.stimulus.of_index(k);
      ts.input[context_input_slot(step.from)] = 1.0;
      ts.target[state_index(step.to)] = 1.0;
      seq.push_back(ts);
    }
    if (!seq.empty()) data.push_back(std::move(seq));
  }

  const Topology topo = Topology::standard(config.rnn_hidden);
  NetWeights w0 = init_weights(topo, baseline.renormalized,
                               config.rnn_init_scale, config.seed);
  const auto before = transition_matrix_from_net(topo, w0, config.freq_mode);
  TrainResult trained = train(
      topo, std::move(w0), data,
      TrainConfig{config.rnn_alpha, config.rnn_epochs, 1e6});
  const auto after =
      transition_matrix_from_net(topo, trained.weights, config.freq_mode);

  RunReport report = base_report(scenario, config, std::move(replay));
  report.trained = true;
  report.ps_weights = ps;
  report.loss_curve = std::move(trained.loss_curve);
  report.freq_before = before;
  report.freq_after = after;
  report.traits = trait_scores(after, builtin_trait_mapping());

  ModelBundle bundle{
      Provenance{config.seed, report.config_hash, scenario.name},
      config.canonical_text(),
      topo,
      std::move(trained.weights),
      ps,
      after,
  };
  return {std::move(report), std::move(bundle)};
}

std::vector<TraceStep> self_play(const WeightTable& weights, MentalState start,
                                 int steps, double epsilon, Rng& rng) {
  if (steps < 0) throw ValidationError("self-play step count must be >= 0");
  std::vector<TraceStep> trace;
  trace.reserve(steps);
  MentalState current = start;
  for (int i = 0; i < steps; ++i) {
    const EmotionGroup action = select_action(weights, current, epsilon, rng);
    const MentalState to = group_target(action);
    trace.push_back({current, to, action, EmotionVector{}});
    current = to;
  }
  return trace;
}

}  // namespace mstn
