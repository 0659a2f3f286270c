#include <doctest.h>

#include <array>
#include <map>
#include <vector>

#include "mstn/emotion.hpp"
#include "mstn/errors.hpp"

using namespace mstn;

TEST_CASE("group membership of named emotions") {
  CHECK(group_of(Emotion::Joy).index() == 2);
  CHECK(group_of(Emotion::Surprise).index() == 9);
  CHECK(group_of(Emotion::Gloating).index() == 1);
  CHECK(group_of(Emotion::Resentment).index() == 7);
  CHECK(group_of(Emotion::Fear).index() == 8);
}

TEST_CASE("every emotion belongs to exactly one group, sizes total 28") {
  std::array<int, kGroupCount> sizes{};
  for (int i = 0; i < kEmotionCount; ++i)
    ++sizes[group_of(static_cast<Emotion>(i)).index() - 1];
  int total = 0;
  for (int s : sizes) total += s;
  CHECK(total == kEmotionCount);
  CHECK(sizes == std::array<int, kGroupCount>{11, 2, 3, 3, 2, 2, 3, 1, 1});
}

TEST_CASE("emotion names parse back to themselves") {
  for (int i = 0; i < kEmotionCount; ++i) {
    const auto e = static_cast<Emotion>(i);
    const auto parsed = parse_emotion(emotion_name(e));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == e);
  }
  // both separator styles are accepted
  CHECK(parse_emotion("sorry-for") == Emotion::SorryFor);
  CHECK(parse_emotion("sorry_for") == Emotion::SorryFor);
  CHECK(parse_emotion("Happy_For") == Emotion::HappyFor);
  CHECK_FALSE(parse_emotion("joyy").has_value());
}

TEST_CASE("aggregate keeps the per-group maximum") {
  const auto v = aggregate({{Emotion::Joy, 0.5}, {Emotion::HappyFor, 0.7}});
  CHECK(v.of_index(2) == 0.7);
  for (int k = 1; k <= kGroupCount; ++k)
    if (k != 2) CHECK(v.of_index(k) == 0.0);
}

TEST_CASE("aggregate of nothing is the zero vector") {
  const auto v = aggregate({});
  CHECK(v.is_zero());
}

TEST_CASE("aggregate spreads emotions across their groups") {
  const auto v = aggregate({{Emotion::Fear, 0.4},
                            {Emotion::Anger, 0.4},
                            {Emotion::Resentment, 0.9}});
  CHECK(v.of_index(7) == 0.9);
  CHECK(v.of_index(8) == 0.4);
  for (int k : {1, 2, 3, 4, 5, 6, 9}) CHECK(v.of_index(k) == 0.0);
}

TEST_CASE("aggregate rejects negative intensities by name") {
  CHECK_THROWS_WITH_AS(aggregate({{Emotion::Joy, -0.1}}),
                       doctest::Contains("joy"), ValidationError);
}

TEST_CASE("valence signs per group") {
  CHECK(valence(EmotionGroup(1)) == 1);
  CHECK(valence(EmotionGroup(2)) == 1);
  for (int k = 3; k <= 8; ++k) CHECK(valence(EmotionGroup(k)) == -1);
  CHECK(valence(EmotionGroup(9)) == 0);
}

TEST_CASE("raising a raw intensity never lowers any aggregate entry") {
  std::vector<std::pair<Emotion, double>> raw = {
      {Emotion::Joy, 0.3}, {Emotion::Hate, 0.6}, {Emotion::Shame, 0.2}};
  const auto before = aggregate(raw);
  for (int i = 0; i < kEmotionCount; ++i) {
    auto bumped = raw;
    bumped.emplace_back(static_cast<Emotion>(i), 0.5);
    const auto after = aggregate(bumped);
    for (int k = 1; k <= kGroupCount; ++k)
      CHECK(after.of_index(k) >= before.of_index(k));
  }
}

TEST_CASE("aggregate is idempotent on a per-group representation") {
  // one representative emotion per group carrying the group value
  const std::array<Emotion, kGroupCount> reps = {
      Emotion::Gloating,      Emotion::Joy,      Emotion::SorryFor,
      Emotion::Disappointment, Emotion::Distress, Emotion::Hate,
      Emotion::Anger,         Emotion::Fear,     Emotion::Surprise};
  const std::array<double, kGroupCount> vals = {0.1, 0.2, 0.0, 0.4, 0.5,
                                                0.6, 0.7, 0.8, 0.9};
  std::vector<std::pair<Emotion, double>> raw;
  for (int k = 0; k < kGroupCount; ++k) raw.emplace_back(reps[k], vals[k]);
  const auto v = aggregate(raw);
  CHECK(v.values() == vals);
}

TEST_CASE("emotion vector validation and dominant entry") {
  CHECK_THROWS_AS(
      EmotionVector::from_values({0, 0, -0.1, 0, 0, 0, 0, 0, 0}),
      ValidationError);
  const auto v = EmotionVector::from_values({0, 0.2, 0, 0.9, 0, 0, 0.9, 0, 0});
  CHECK(v.dominant().index() == 4);  // first of the tied maxima
  CHECK(EmotionVector{}.dominant().index() == 1);  // all-zero is all-tied
  CHECK_THROWS_AS(v.of_index(0), ValidationError);
  CHECK_THROWS_AS(v.of_index(10), ValidationError);
  CHECK_THROWS_AS(EmotionGroup(0), ValidationError);
  CHECK_THROWS_AS(EmotionGroup(10), ValidationError);
}
