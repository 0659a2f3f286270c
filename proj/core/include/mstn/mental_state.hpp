#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mstn {

inline constexpr int kStateCount = 7;

/// The seven mental states. Enum order matches the baseline matrix rows.
/// "quiet" is the neutral resting state; "normal" is accepted as an alias
/// on input and used as its label in scenario-table layouts.
enum class MentalState : int {
  Happy = 0,
  Quiet,
  Sad,
  Surprise,
  Angry,
  Fear,
  Disgust,
};

constexpr int state_index(MentalState s) { return static_cast<int>(s); }
MentalState state_from_index(int i);  // throws ValidationError outside 0..6

std::string_view state_name(MentalState s);
std::optional<MentalState> parse_state(std::string_view name);

constexpr std::array<MentalState, kStateCount> all_states() {
  return {MentalState::Happy, MentalState::Quiet,   MentalState::Sad,
          MentalState::Surprise, MentalState::Angry, MentalState::Fear,
          MentalState::Disgust};
}

/// Row order used by the scenario result tables:
/// surprise, happy, sad, angry, disgust, fear, normal.
constexpr std::array<MentalState, kStateCount> scenario_order() {
  return {MentalState::Surprise, MentalState::Happy, MentalState::Sad,
          MentalState::Angry,    MentalState::Disgust, MentalState::Fear,
          MentalState::Quiet};
}

/// Label used in scenario-table layouts ("normal" instead of "quiet").
std::string_view scenario_label(MentalState s);

}  // namespace mstn
