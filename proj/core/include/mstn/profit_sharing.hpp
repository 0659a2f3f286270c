#pragma once

#include <array>
#include <compare>
#include <vector>

#include "mstn/emotion.hpp"
#include "mstn/mental_state.hpp"
#include "mstn/rng.hpp"

namespace mstn {

inline constexpr int kRuleCount = kStateCount * kGroupCount;  // 63

/// A rule pairs the sensory input (current mental state) with the action
/// taken (emotion group that won the transition).
struct Rule {
  MentalState input;
  EmotionGroup action;

  int index() const { return state_index(input) * kGroupCount + action.index() - 1; }
  static Rule from_index(int i);
  auto operator<=>(const Rule&) const = default;
};

/// One episode: the rules fired in order plus the terminal reward.
struct Episode {
  std::vector<Rule> rules;
  double reward = 0.0;

  int length() const { return static_cast<int>(rules.size()); }
};

/// Rule weights S_r for all 63 rules, default 0.
class WeightTable {
 public:
  WeightTable() : w_{} {}
  double at(Rule r) const { return w_[r.index()]; }
  void add(Rule r, double delta) { w_[r.index()] += delta; }
  void set(Rule r, double value) { w_[r.index()] = value; }
  const std::array<double, kRuleCount>& raw() const { return w_; }
  double total() const;

 private:
  std::array<double, kRuleCount> w_;
};

/// Credit-assignment parameters. The decay divisor must exceed the
/// conflict bound: m >= l + 1.
struct ReinforceConfig {
  double decay_m = 3.0;        // geometric divisor between successive rules
  int conflict_l = 2;          // max competing effective rules per input
  double epsilon = 0.1;        // exploration rate for action selection
  int max_episode_length = 100;

  void validate() const;  // throws ValidationError
};

/// Inclusive index range of rules that form one detour.
struct IndexSpan {
  int first;
  int last;
  auto operator<=>(const IndexSpan&) const = default;
};

/// Scan left to right; when a sensory input recurs, everything from its
/// previous occurrence up to (not including) the recurrence is a detour.
/// Detected spans are cut from the working copy before the scan continues,
/// so nested loops collapse correctly. Spans are reported in original
/// episode coordinates and may overlap earlier spans.
std::vector<IndexSpan> detect_detours(const Episode& episode);

/// Episode with all detour spans removed: order preserved, reward kept,
/// and no sensory input appears twice in the result.
Episode remove_detours(const Episode& episode);

/// Distribute the episode reward backward: the final rule receives R, each
/// predecessor 1/m of its successor. A zero reward leaves the table
/// untouched. The episode is expected to be detour-free already.
void reinforce(WeightTable& weights, const Episode& episode,
               const ReinforceConfig& config);

/// True when the geometric credit curve suppresses ineffective rules for an
/// episode of the given length: at every position the remaining tail of
/// credit, multiplied by the conflict bound, stays below the credit one
/// step earlier. Evaluated in an algebraically reduced form that stays
/// exact where direct summation would round away the margin.
bool check_suppression(const ReinforceConfig& config, int episode_length);

/// Epsilon-greedy action for a sensory input: explore uniformly with
/// probability epsilon, otherwise the highest-weighted action with ties
/// broken uniformly at random.
EmotionGroup select_action(const WeightTable& weights, MentalState input,
                           double epsilon, Rng& rng);

/// Signed reward carried by the final event of an episode: the valence of
/// the dominant group times its intensity (0 for an all-zero vector).
double episode_reward(const EmotionVector& final_event);

}  // namespace mstn
