#include "mstn/pattern_frequency.hpp"

#include <algorithm>
#include <bit>

#include "mstn/errors.hpp"

namespace mstn {

int FiringPattern::fired_count() const { return std::popcount(mask); }

double FiringPattern::value() const { return 1.0 / fired_count(); }

std::array<double, kGroupCount> FiringPattern::group_inputs() const {
  std::array<double, kGroupCount> v{};
  const double val = value();
  for (int k = 0; k < kGroupCount; ++k)
    if (mask & (1u << k)) v[k] = val;
  return v;
}

std::vector<FiringPattern> enumerate_patterns() {
  std::vector<FiringPattern> out;
  out.reserve(kPatternCount);
  for (std::uint16_t m = 1; m <= kPatternCount; ++m) out.push_back({m});
  return out;
}

std::array<double, kStateCount> state_row_from_patterns(
    const Topology& topo, const NetWeights& w, MentalState current,
    std::span<const FiringPattern> patterns, FreqMode mode) {
  if (patterns.empty()) throw ValidationError("no firing patterns given");
  std::array<double, kStateCount> row{};
  for (const auto& pattern : patterns) {
    TrainingStep step{};
    const auto groups = pattern.group_inputs();
    for (int k = 0; k < kGroupCount; ++k) step.input[k] = groups[k];
    step.input[context_input_slot(current)] = 1.0;
    // single step, so recurrent history is all zero by construction
    const auto trace = forward(topo, w, TrainingSequence{step});
    const int base = topo.output_id(0) - kNetInputs;
    if (mode == FreqMode::MeanActivation) {
      for (int o = 0; o < kStateCount; ++o) row[o] += trace.act[0][base + o];
    } else {
      int winner = 0;
      for (int o = 1; o < kStateCount; ++o)
        if (trace.act[0][base + o] > trace.act[0][base + winner]) winner = o;
      row[winner] += 1.0;
    }
  }
  if (mode == FreqMode::MeanActivation) {
    double sum = 0.0;
    for (double v : row) sum += v;
    if (sum <= 0.0)
      throw NumericalError("degenerate activations: row sums to zero");
    for (double& v : row) v /= sum;
  } else {
    for (double& v : row) v /= static_cast<double>(patterns.size());
  }
  return row;
}

FrequencyMatrix transition_matrix_from_net(const Topology& topo,
                                           const NetWeights& w,
                                           FreqMode mode) {
  const auto patterns = enumerate_patterns();
  Matrix7 rows{};
  for (auto s : all_states())
    rows[state_index(s)] = state_row_from_patterns(topo, w, s, patterns, mode);
  return TransitionMatrix::from_rows(rows);
}

std::vector<CellDelta> compare_matrices(const Matrix7& before,
                                        const Matrix7& after,
                                        double threshold) {
  std::vector<CellDelta> out;
  for (int i = 0; i < kStateCount; ++i)
    for (int j = 0; j < kStateCount; ++j) {
      const double d = after[i][j] - before[i][j];
      if (d > threshold)
        out.push_back({state_from_index(i), state_from_index(j), d});
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const CellDelta& a, const CellDelta& b) {
                     return a.delta > b.delta;
                   });
  return out;
}

std::vector<CellDelta> emphasized_cells(const Matrix7& m, double threshold) {
  return compare_matrices(Matrix7{}, m, threshold);
}

}  // namespace mstn
