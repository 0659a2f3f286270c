#include "mstn/mstn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mstn/errors.hpp"

namespace mstn {

namespace {
constexpr double kRowSumTolerance = 1e-9;
}

TransitionMatrix TransitionMatrix::uniform() {
  TransitionMatrix m;
  for (auto& row : m.rows_) row.fill(1.0 / kStateCount);
  return m;
}

TransitionMatrix TransitionMatrix::from_rows(const Matrix7& rows) {
  for (int i = 0; i < kStateCount; ++i) {
    double sum = 0.0;
    for (double v : rows[i]) {
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("transition probability outside [0,1] in row '" +
                              std::string(state_name(state_from_index(i))) + "'");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw ValidationError("row '" +
                            std::string(state_name(state_from_index(i))) +
                            "' does not sum to 1");
  }
  TransitionMatrix m;
  m.rows_ = rows;
  return m;
}

CostMatrix CostMatrix::complement_of(const TransitionMatrix& p) {
  CostMatrix c;
  for (int i = 0; i < kStateCount; ++i)
    for (int j = 0; j < kStateCount; ++j)
      c.rows_[i][j] = 1.0 - p.rows()[i][j];
  return c;
}

CostMatrix CostMatrix::from_rows(const Matrix7& rows) {
  for (const auto& row : rows)
    for (double v : row)
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("transition cost outside [0,1]");
  CostMatrix c;
  c.rows_ = rows;
  return c;
}

long long TransitionCount::row_total(MentalState from) const {
  long long total = 0;
  for (long long v : counts_[state_index(from)]) total += v;
  return total;
}

std::pair<TransitionMatrix, CostMatrix> cost_from_counts(
    const TransitionCount& counts) {
  Matrix7 p{};
  for (auto from : all_states()) {
    const int i = state_index(from);
    const long long total = counts.row_total(from);
    for (int j = 0; j < kStateCount; ++j) {
      p[i][j] = total == 0
                    ? 1.0 / kStateCount
                    : static_cast<double>(counts.at(from, state_from_index(j))) /
                          static_cast<double>(total);
    }
  }
  auto matrix = TransitionMatrix::from_rows(p);
  return {matrix, CostMatrix::complement_of(matrix)};
}

MentalState group_target(EmotionGroup g) {
  static constexpr std::array<MentalState, kGroupCount> kTarget = {
      MentalState::Happy,    // 1
      MentalState::Happy,    // 2
      MentalState::Sad,      // 3
      MentalState::Sad,      // 4
      MentalState::Sad,      // 5
      MentalState::Disgust,  // 6
      MentalState::Angry,    // 7
      MentalState::Fear,     // 8
      MentalState::Surprise  // 9
  };
  return kTarget[g.index() - 1];
}

NextState next_state(MentalState current, const EmotionVector& e,
                     const CostMatrix& costs) {
  if (e.is_zero())
    throw ValidationError(
        "all-zero stimulus has no winning group; take an idle transition");
  int best = -1;
  double best_score = -1.0;
  for (int k = 1; k <= kGroupCount; ++k) {
    const double intensity = e.of_index(k);
    if (intensity == 0.0) continue;  // not a candidate
    const double cost = costs.at(current, group_target(EmotionGroup(k)));
    const double score =
        cost == 0.0 ? std::numeric_limits<double>::infinity() : intensity / cost;
    if (score > best_score) {  // strict: ties keep the lowest index
      best_score = score;
      best = k;
    }
  }
  const EmotionGroup g(best);
  return {group_target(g), g};
}

MentalState idle_transition(MentalState current, const TransitionMatrix& base,
                            Rng& rng) {
  const auto& row = base.rows()[state_index(current)];
  const double u = uniform_unit(rng);
  double cum = 0.0;
  for (int j = 0; j < kStateCount; ++j) {
    cum += row[j];
    if (u < cum) return state_from_index(j);
  }
  return MentalState::Disgust;  // floating-point slack on the last column
}

}  // namespace mstn
