#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace mstn {

inline constexpr int kEmotionCount = 28;
inline constexpr int kGroupCount = 9;

/// The 28 recognizable emotions, listed group by group.
enum class Emotion : int {
  // group 1: strongly pleasant
  Gloating = 0,
  Hope,
  Satisfaction,
  Relief,
  Pride,
  Admiration,
  Liking,
  Gratitude,
  Gratification,
  Love,
  Shy,
  // group 2: joy family
  Joy,
  HappyFor,
  // group 3: self-directed distress
  SorryFor,
  Shame,
  Remorse,
  // group 4: loss and let-down
  FearConfirmed,
  Disappointment,
  Sadness,
  // group 5: unease
  Distress,
  Perplexity,
  // group 6: aversion
  Disliking,
  Hate,
  // group 7: hostility
  Resentment,
  Reproach,
  Anger,
  // group 8
  Fear,
  // group 9
  Surprise,
};

std::string_view emotion_name(Emotion e);
/// Case-insensitive; '-' and ' ' are accepted for '_' (e.g. "sorry-for").
std::optional<Emotion> parse_emotion(std::string_view name);

/// One of the nine emotion groups, indexed 1..9.
class EmotionGroup {
 public:
  explicit EmotionGroup(int index);  // throws ValidationError outside 1..9
  int index() const { return index_; }
  auto operator<=>(const EmotionGroup&) const = default;

 private:
  int index_;
};

EmotionGroup group_of(Emotion e);

/// +1 for the pleasant groups (1, 2), -1 for the unpleasant ones (3..8),
/// 0 for surprise (9).
int valence(EmotionGroup g);

/// Per-group intensities e_1..e_9, each >= 0.
class EmotionVector {
 public:
  EmotionVector() : v_{} {}
  static EmotionVector from_values(const std::array<double, kGroupCount>& v);

  double of(EmotionGroup g) const { return v_[g.index() - 1]; }
  double of_index(int k) const;  // k in 1..9
  bool is_zero() const;
  const std::array<double, kGroupCount>& values() const { return v_; }

  /// Group with the highest intensity; ties go to the lowest index.
  EmotionGroup dominant() const;

 private:
  std::array<double, kGroupCount> v_;
};

/// Collapse raw emotion intensities to group intensities by per-group max.
/// Absent emotions count as 0. Negative intensity is a validation error
/// naming the offending emotion.
EmotionVector aggregate(const std::vector<std::pair<Emotion, double>>& raw);

}  // namespace mstn
