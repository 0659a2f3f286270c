#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstn/config.hpp"
#include "mstn/scenario_io.hpp"
#include "mstn/trait_analysis.hpp"

namespace mstn {

/// One event as replayed: where the mind was, what arrived, where it went.
/// group is empty for idle (all-zero stimulus) steps.
struct TraceStep {
  MentalState from;
  MentalState to;
  std::optional<EmotionGroup> group;
  EmotionVector stimulus;
};

struct EpisodeLog {
  std::vector<TraceStep> steps;       // every event, idle included
  Episode raw;                        // stimulus-driven rules, in order
  std::vector<IndexSpan> detours;     // spans over raw.rules
  Episode cleaned;
  double reward = 0.0;
};

struct RunReport {
  std::string scenario_name;
  PipelineConfig config;
  std::string config_hash;
  std::vector<EpisodeLog> episodes;
  /// Probabilities observed during the replay itself.
  TransitionMatrix empirical = TransitionMatrix::uniform();

  // filled by training runs only
  bool trained = false;
  WeightTable ps_weights;
  std::vector<double> loss_curve;
  std::optional<TransitionMatrix> freq_before;
  std::optional<TransitionMatrix> freq_after;
  std::optional<TraitScores> traits;
};

/// Replay a scenario against the baseline matrix: deterministic given the
/// seed. Episodes start in the quiet state; stimulus events follow the best
/// intensity-to-cost ratio, empty events take sampled idle transitions.
RunReport simulate_run(const ScenarioFile& scenario,
                       const BaselineMatrix& baseline,
                       const PipelineConfig& config);

struct TrainOutcome {
  RunReport report;
  ModelBundle bundle;
};

/// Full learning pass: replay, strip detours, reinforce rule weights,
/// train the network on the surviving steps, then probe it for the
/// before/after matrices and trait scores.
TrainOutcome train_run(const ScenarioFile& scenario,
                       const BaselineMatrix& baseline,
                       const PipelineConfig& config);

/// Generative mode: let the learned rule weights drive the walk.
std::vector<TraceStep> self_play(const WeightTable& weights, MentalState start,
                                 int steps, double epsilon, Rng& rng);

}  // namespace mstn
