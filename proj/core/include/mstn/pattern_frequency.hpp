#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mstn/mstn.hpp"
#include "mstn/rnn.hpp"

namespace mstn {

inline constexpr int kPatternCount = 511;  // 2^9 - 1 nonempty subsets

/// One probe stimulus: a nonempty subset of the nine group-input nodes,
/// each fired node driven with 1 / |subset|.
struct FiringPattern {
  std::uint16_t mask;  // bits 0..8, bit k-1 = group k

  int fired_count() const;
  double value() const;  // 1 / fired_count
  std::array<double, kGroupCount> group_inputs() const;
};

/// All 511 patterns in ascending mask order.
std::vector<FiringPattern> enumerate_patterns();

enum class FreqMode {
  MeanActivation,  // average output activations, then normalize the row
  ArgmaxCount,     // count winning outputs, divide by the pattern count
};

/// A row-stochastic matrix is extracted from a network by probing it: for
/// each current state the context is clamped, recurrent history is zeroed,
/// and every firing pattern is pushed through one forward step.
using FrequencyMatrix = TransitionMatrix;

std::array<double, kStateCount> state_row_from_patterns(
    const Topology& topo, const NetWeights& w, MentalState current,
    std::span<const FiringPattern> patterns, FreqMode mode);

FrequencyMatrix transition_matrix_from_net(const Topology& topo,
                                           const NetWeights& w, FreqMode mode);

struct CellDelta {
  MentalState from;
  MentalState to;
  double delta;
};

/// Cells where after - before exceeds the threshold, largest delta first
/// (ties in baseline row/column order).
std::vector<CellDelta> compare_matrices(const Matrix7& before,
                                        const Matrix7& after,
                                        double threshold);

/// Cells whose absolute value exceeds the threshold; definitionally
/// compare_matrices against a zero baseline.
std::vector<CellDelta> emphasized_cells(const Matrix7& m, double threshold);

}  // namespace mstn
