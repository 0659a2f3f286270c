#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "mstn/mental_state.hpp"
#include "mstn/mstn.hpp"

namespace mstn {

inline constexpr int kTraitCount = 5;

enum class Trait : int {
  Openness = 0,
  Conscientiousness,
  Extraversion,
  Agreeableness,
  Neuroticism,
};

std::string_view trait_name(Trait t);

struct TraitEntry {
  Trait trait;
  int sign;  // +1 normal reading, -1 inverse reading
};

/// Sparse (current, next) -> trait annotations. Cells with no entries are
/// unmapped and contribute to no trait.
class TraitMapping {
 public:
  void add(MentalState current, MentalState next, Trait t, int sign);
  const std::vector<TraitEntry>& entries(MentalState current,
                                         MentalState next) const;
  bool has(MentalState current, MentalState next) const;
  int mapped_cell_count() const;
  int entry_count() const;

  template <typename Fn>  // Fn(current, next, TraitEntry)
  void for_each(Fn&& fn) const {
    for (auto c : all_states())
      for (auto n : all_states())
        for (const auto& e : entries(c, n)) fn(c, n, e);
  }

 private:
  std::array<std::array<std::vector<TraitEntry>, kStateCount>, kStateCount>
      cells_;
};

/// The built-in annotation table for the seven-state model.
const TraitMapping& builtin_trait_mapping();

struct TraitScores {
  std::array<double, kTraitCount> score{};
  std::array<int, kTraitCount> support{};  // mapped cells per trait

  double of(Trait t) const { return score[static_cast<int>(t)]; }
  int support_of(Trait t) const { return support[static_cast<int>(t)]; }
};

/// score(T) = sum over annotated cells of sign * probability.
TraitScores trait_scores(const TransitionMatrix& m, const TraitMapping& map);

struct TraitContribution {
  MentalState current;
  MentalState next;
  int sign;
  double weighted;  // sign * probability
};

/// Largest-magnitude contributions to one trait, up to k of them.
std::vector<TraitContribution> top_contributors(const TransitionMatrix& m,
                                                const TraitMapping& map,
                                                Trait t, int k);

}  // namespace mstn
