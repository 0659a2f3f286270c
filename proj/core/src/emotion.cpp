#include "mstn/emotion.hpp"

#include <algorithm>

#include "mstn/errors.hpp"
#include "mstn/util.hpp"

namespace mstn {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "gloating",       "hope",         "satisfaction", "relief",
    "pride",          "admiration",   "liking",       "gratitude",
    "gratification",  "love",         "shy",          "joy",
    "happy_for",      "sorry_for",    "shame",        "remorse",
    "fear_confirmed", "disappointment", "sadness",    "distress",
    "perplexity",     "disliking",    "hate",         "resentment",
    "reproach",       "anger",        "fear",         "surprise"};

// group of each emotion, parallel to the enum
constexpr std::array<int, kEmotionCount> kEmotionGroup = {
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,  // gloating .. shy
    2, 2,                              // joy, happy_for
    3, 3, 3,                           // sorry_for, shame, remorse
    4, 4, 4,                           // fear_confirmed, disappointment, sadness
    5, 5,                              // distress, perplexity
    6, 6,                              // disliking, hate
    7, 7, 7,                           // resentment, reproach, anger
    8,                                 // fear
    9};                                // surprise

}  // namespace

std::string_view emotion_name(Emotion e) {
  return kEmotionNames[static_cast<int>(e)];
}

std::optional<Emotion> parse_emotion(std::string_view name) {
  const std::string n = lower_snake(name);
  for (int i = 0; i < kEmotionCount; ++i)
    if (n == kEmotionNames[i]) return static_cast<Emotion>(i);
  return std::nullopt;
}

EmotionGroup::EmotionGroup(int index) : index_(index) {
  if (index < 1 || index > kGroupCount)
    throw ValidationError("emotion group index out of range: " +
                          std::to_string(index));
}

EmotionGroup group_of(Emotion e) {
  return EmotionGroup(kEmotionGroup[static_cast<int>(e)]);
}

int valence(EmotionGroup g) {
  if (g.index() <= 2) return 1;
  if (g.index() <= 8) return -1;
  return 0;
}

EmotionVector EmotionVector::from_values(
    const std::array<double, kGroupCount>& v) {
  for (int k = 0; k < kGroupCount; ++k)
    if (v[k] < 0.0)
      throw ValidationError("negative intensity for group " +
                            std::to_string(k + 1));
  EmotionVector e;
  e.v_ = v;
  return e;
}

double EmotionVector::of_index(int k) const {
  if (k < 1 || k > kGroupCount)
    throw ValidationError("emotion group index out of range: " +
                          std::to_string(k));
  return v_[k - 1];
}

bool EmotionVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](double x) { return x == 0.0; });
}

EmotionGroup EmotionVector::dominant() const {
  int best = 0;
  for (int k = 1; k < kGroupCount; ++k)
    if (v_[k] > v_[best]) best = k;
  return EmotionGroup(best + 1);
}

EmotionVector aggregate(const std::vector<std::pair<Emotion, double>>& raw) {
  std::array<double, kGroupCount> v{};
  for (const auto& [emo, intensity] : raw) {
    if (intensity < 0.0)
      throw ValidationError("negative intensity for emotion '" +
                            std::string(emotion_name(emo)) + "'");
    double& slot = v[group_of(emo).index() - 1];
    slot = std::max(slot, intensity);
  }
  return EmotionVector::from_values(v);
}

}  // namespace mstn
