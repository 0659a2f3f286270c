#include "mstn/profit_sharing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mstn/errors.hpp"

namespace mstn {

Rule Rule::from_index(int i) {
  if (i < 0 || i >= kRuleCount)
    throw ValidationError("rule index out of range: " + std::to_string(i));
  return {state_from_index(i / kGroupCount), EmotionGroup(i % kGroupCount + 1)};
}

double WeightTable::total() const {
  double sum = 0.0;
  for (double v : w_) sum += v;
  return sum;
}

void ReinforceConfig::validate() const {
  if (!(decay_m >= conflict_l + 1))
    throw ValidationError("decay divisor must satisfy m >= l + 1 (m=" +
                          std::to_string(decay_m) +
                          ", l=" + std::to_string(conflict_l) + ")");
  if (conflict_l < 1)
    throw ValidationError("conflict bound l must be >= 1");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ValidationError("epsilon must be in [0, 1]");
  if (max_episode_length < 1)
    throw ValidationError("max episode length must be >= 1");
}

std::vector<IndexSpan> detect_detours(const Episode& episode) {
  std::vector<IndexSpan> spans;
  // Working copy holds (original index, input) with no duplicate inputs.
  std::vector<std::pair<int, MentalState>> work;
  work.reserve(episode.rules.size());
  for (int j = 0; j < episode.length(); ++j) {
    const MentalState input = episode.rules[j].input;
    for (std::size_t p = 0; p < work.size(); ++p) {
      if (work[p].second != input) continue;
      spans.push_back({work[p].first, j - 1});
      work.resize(p);  // cut the detour before scanning on
      break;
    }
    work.emplace_back(j, input);
  }
  return spans;
}

Episode remove_detours(const Episode& episode) {
  const auto spans = detect_detours(episode);
  Episode out;
  out.reward = episode.reward;
  out.rules.reserve(episode.rules.size());
  for (int i = 0; i < episode.length(); ++i) {
    bool covered = false;
    for (const auto& s : spans)
      if (i >= s.first && i <= s.last) {
        covered = true;
        break;
      }
    if (!covered) out.rules.push_back(episode.rules[i]);
  }
  return out;
}

void reinforce(WeightTable& weights, const Episode& episode,
               const ReinforceConfig& config) {
  config.validate();
  if (episode.length() > config.max_episode_length)
    throw ValidationError(
        "episode of " + std::to_string(episode.length()) +
        " rules exceeds the configured maximum of " +
        std::to_string(config.max_episode_length));
  if (episode.reward == 0.0 || episode.rules.empty()) return;
  double credit = episode.reward;
  for (int i = episode.length() - 1; i >= 0; --i) {
    weights.add(episode.rules[i], credit);
    credit /= config.decay_m;
  }
}

bool check_suppression(const ReinforceConfig& config, int episode_length) {
  config.validate();
  if (episode_length < 1)
    throw ValidationError("episode length must be >= 1");
  // Credit is indexed backward from the episode end: f_0 = 1 at the final
  // rule, f_j = m^-j deeper into the past.  The condition to verify at each
  // cut point i is
  //
  //   l * (f_i + f_{i+1} + ... + f_{W-1}) < f_{i-1}
  //
  // Summing the geometric tail directly collapses at the m = l + 1 boundary:
  // for W-i beyond ~40 terms the partial sum rounds onto its infinite-sum
  // limit and the strict inequality evaluates as 1 < 1.  Scale both sides by
  // the positive factor m^(i-1) * (m - 1) / m instead; the condition reduces
  // exactly to
  //
  //   l + 1 - m < l * m^-(W-i)
  //
  // which has no cancellation: the left side is a small exact difference and
  // the right side is strictly positive for finite W.  Clamping the power to
  // the smallest positive double keeps that sign even if it underflows.
  for (int i = 1; i < episode_length; ++i) {
    const double remainder =
        std::max(std::pow(config.decay_m, -(episode_length - i)),
                 std::numeric_limits<double>::denorm_min());
    if (!(config.conflict_l + 1.0 - config.decay_m <
          config.conflict_l * remainder))
      return false;
  }
  return true;
}

EmotionGroup select_action(const WeightTable& weights, MentalState input,
                           double epsilon, Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ValidationError("epsilon must be in [0, 1]");
  if (uniform_unit(rng) < epsilon)
    return EmotionGroup(static_cast<int>(uniform_index(rng, kGroupCount)) + 1);
  double best = weights.at({input, EmotionGroup(1)});
  std::vector<int> tied{1};
  for (int k = 2; k <= kGroupCount; ++k) {
    const double w = weights.at({input, EmotionGroup(k)});
    if (w > best) {
      best = w;
      tied.assign(1, k);
    } else if (w == best) {
      tied.push_back(k);
    }
  }
  if (tied.size() == 1) return EmotionGroup(tied[0]);
  return EmotionGroup(tied[uniform_index(rng, tied.size())]);
}

double episode_reward(const EmotionVector& final_event) {
  if (final_event.is_zero()) return 0.0;
  const EmotionGroup g = final_event.dominant();
  return valence(g) * final_event.of(g);
}

}  // namespace mstn
