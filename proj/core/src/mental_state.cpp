#include "mstn/mental_state.hpp"

#include "mstn/errors.hpp"
#include "mstn/util.hpp"

namespace mstn {

namespace {
constexpr std::array<std::string_view, kStateCount> kNames = {
    "happy", "quiet", "sad", "surprise", "angry", "fear", "disgust"};
}

MentalState state_from_index(int i) {
  if (i < 0 || i >= kStateCount)
    throw ValidationError("mental state index out of range: " + std::to_string(i));
  return static_cast<MentalState>(i);
}

std::string_view state_name(MentalState s) { return kNames[state_index(s)]; }

std::optional<MentalState> parse_state(std::string_view name) {
  const std::string n = lower_snake(name);
  if (n == "normal") return MentalState::Quiet;
  if (n == "anger") return MentalState::Angry;
  for (int i = 0; i < kStateCount; ++i)
    if (n == kNames[i]) return static_cast<MentalState>(i);
  return std::nullopt;
}

std::string_view scenario_label(MentalState s) {
  return s == MentalState::Quiet ? std::string_view{"normal"} : state_name(s);
}

}  // namespace mstn
