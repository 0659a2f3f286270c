#include "mstn/trait_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mstn/errors.hpp"

namespace mstn {

std::string_view trait_name(Trait t) {
  static constexpr std::array<std::string_view, kTraitCount> kNames = {
      "openness", "conscientiousness", "extraversion", "agreeableness",
      "neuroticism"};
  return kNames[static_cast<int>(t)];
}

void TraitMapping::add(MentalState current, MentalState next, Trait t,
                       int sign) {
  if (sign != 1 && sign != -1)
    throw ValidationError("trait sign must be +1 or -1");
  auto& cell = cells_[state_index(current)][state_index(next)];
  for (const auto& e : cell)
    if (e.trait == t)
      throw ValidationError("duplicate trait annotation in one cell");
  cell.push_back({t, sign});
}

const std::vector<TraitEntry>& TraitMapping::entries(MentalState current,
                                                     MentalState next) const {
  return cells_[state_index(current)][state_index(next)];
}

bool TraitMapping::has(MentalState current, MentalState next) const {
  return !entries(current, next).empty();
}

int TraitMapping::mapped_cell_count() const {
  int n = 0;
  for (const auto& row : cells_)
    for (const auto& cell : row)
      if (!cell.empty()) ++n;
  return n;
}

int TraitMapping::entry_count() const {
  int n = 0;
  for (const auto& row : cells_)
    for (const auto& cell : row) n += static_cast<int>(cell.size());
  return n;
}

const TraitMapping& builtin_trait_mapping() {
  static const TraitMapping kMapping = [] {
    using S = MentalState;
    constexpr Trait O = Trait::Openness;
    constexpr Trait C = Trait::Conscientiousness;
    constexpr Trait E = Trait::Extraversion;
    constexpr Trait A = Trait::Agreeableness;
    constexpr Trait N = Trait::Neuroticism;
    TraitMapping m;
    auto row = [&m](S cur, std::initializer_list<
                               std::pair<S, std::vector<TraitEntry>>> cells) {
      for (const auto& [next, entries] : cells)
        for (const auto& e : entries) m.add(cur, next, e.trait, e.sign);
    };

    row(S::Surprise, {{S::Surprise, {{N, 1}}},
                      {S::Happy, {{C, 1}, {N, 1}}},
                      {S::Sad, {{A, 1}}},
                      {S::Angry, {{E, -1}, {C, -1}}},
                      {S::Disgust, {{C, -1}}},
                      {S::Fear, {{A, 1}}},
                      {S::Quiet, {{O, -1}, {E, 1}}}});
    row(S::Happy, {{S::Surprise, {{N, 1}}},
                   {S::Happy, {{O, 1}, {C, 1}, {N, 1}}},
                   {S::Sad, {{A, 1}}},
                   {S::Angry, {{E, -1}, {C, -1}}},
                   {S::Disgust, {{C, -1}}},
                   {S::Fear, {{A, 1}}},
                   {S::Quiet, {{O, -1}, {E, 1}}}});
    row(S::Sad, {{S::Happy, {{A, 1}}},
                 {S::Sad, {{A, 1}, {E, -1}}},
                 {S::Angry, {{E, -1}, {C, -1}}},
                 {S::Disgust, {{C, -1}}},
                 {S::Fear, {{A, 1}}},
                 {S::Quiet, {{A, -1}, {O, -1}, {E, 1}}}});
    row(S::Angry, {{S::Sad, {{A, 1}}},
                   {S::Angry, {{E, -1}, {C, -1}}},
                   {S::Disgust, {{C, -1}}},
                   {S::Fear, {{A, 1}}},
                   {S::Quiet, {{O, -1}, {E, 1}}}});
    row(S::Fear, {{S::Sad, {{A, 1}}},
                  {S::Angry, {{E, -1}, {C, -1}}},
                  {S::Disgust, {{E, -1}, {C, -1}}},
                  {S::Fear, {{A, 1}}},
                  {S::Quiet, {{O, -1}, {E, 1}}}});
    row(S::Disgust, {{S::Sad, {{A, 1}}},
                     {S::Angry, {{E, -1}, {C, -1}}},
                     {S::Disgust, {{C, -1}}},
                     {S::Fear, {{A, 1}}},
                     {S::Quiet, {{O, -1}, {E, 1}}}});
    row(S::Quiet, {{S::Surprise, {{N, 1}}},
                   {S::Happy, {{O, 1}, {C, 1}, {N, 1}}},
                   {S::Sad, {{A, 1}}},
                   {S::Angry, {{E, -1}, {C, -1}}},
                   {S::Disgust, {{C, -1}}},
                   {S::Fear, {{A, 1}}},
                   {S::Quiet, {{O, -1}, {E, 1}, {C, -1}}}});
    return m;
  }();
  return kMapping;
}

TraitScores trait_scores(const TransitionMatrix& m, const TraitMapping& map) {
  TraitScores out;
  map.for_each([&](MentalState c, MentalState n, const TraitEntry& e) {
    const int t = static_cast<int>(e.trait);
    out.score[t] += e.sign * m.at(c, n);
    out.support[t] += 1;
  });
  return out;
}

std::vector<TraitContribution> top_contributors(const TransitionMatrix& m,
                                                const TraitMapping& map,
                                                Trait t, int k) {
  std::vector<TraitContribution> all;
  map.for_each([&](MentalState c, MentalState n, const TraitEntry& e) {
    if (e.trait == t) all.push_back({c, n, e.sign, e.sign * m.at(c, n)});
  });
  std::stable_sort(all.begin(), all.end(),
                   [](const TraitContribution& a, const TraitContribution& b) {
                     return std::abs(a.weighted) > std::abs(b.weighted);
                   });
  if (k >= 0 && static_cast<int>(all.size()) > k) all.resize(k);
  return all;
}

}  // namespace mstn
