#pragma once

#include <array>
#include <utility>

#include "mstn/emotion.hpp"
#include "mstn/mental_state.hpp"
#include "mstn/rng.hpp"

namespace mstn {

using Matrix7 = std::array<std::array<double, kStateCount>, kStateCount>;

/// Row-stochastic 7x7 matrix over mental states. Every instance is valid:
/// construction rejects rows that do not sum to 1 within 1e-9 or entries
/// outside [0, 1].
class TransitionMatrix {
 public:
  static TransitionMatrix uniform();
  static TransitionMatrix from_rows(const Matrix7& rows);

  double at(MentalState from, MentalState to) const {
    return rows_[state_index(from)][state_index(to)];
  }
  const Matrix7& rows() const { return rows_; }

 private:
  TransitionMatrix() : rows_{} {}
  Matrix7 rows_;
};

/// 7x7 transition costs; cost = 1 - probability throughout.
class CostMatrix {
 public:
  static CostMatrix complement_of(const TransitionMatrix& p);
  static CostMatrix from_rows(const Matrix7& rows);  // entries in [0, 1]

  double at(MentalState from, MentalState to) const {
    return rows_[state_index(from)][state_index(to)];
  }
  const Matrix7& rows() const { return rows_; }

 private:
  CostMatrix() : rows_{} {}
  Matrix7 rows_;
};

/// Observed transition tallies, accumulated over a run.
class TransitionCount {
 public:
  TransitionCount() : counts_{} {}
  void record(MentalState from, MentalState to) {
    ++counts_[state_index(from)][state_index(to)];
  }
  long long at(MentalState from, MentalState to) const {
    return counts_[state_index(from)][state_index(to)];
  }
  long long row_total(MentalState from) const;

 private:
  std::array<std::array<long long, kStateCount>, kStateCount> counts_;
};

/// Empirical probabilities and costs from tallies. A row with no
/// observations falls back to uniform 1/7 (cost 6/7 everywhere).
std::pair<TransitionMatrix, CostMatrix> cost_from_counts(
    const TransitionCount& counts);

/// Mental state that an emotion group pulls toward.
MentalState group_target(EmotionGroup g);

struct NextState {
  MentalState state;
  EmotionGroup group;
};

/// Choose the next state for a stimulus: the group with the best
/// intensity-to-cost ratio wins. Zero-intensity groups never win; a zero
/// cost with positive intensity counts as a certain transition. Ties go to
/// the lowest group index. An all-zero stimulus is a validation error
/// (callers should take an idle transition instead).
NextState next_state(MentalState current, const EmotionVector& e,
                     const CostMatrix& costs);

/// Spontaneous (stimulus-free) transition: sample the next state from the
/// current row of the base matrix.
MentalState idle_transition(MentalState current, const TransitionMatrix& base,
                            Rng& rng);

}  // namespace mstn
