#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mstn/mental_state.hpp"
#include "mstn/mstn.hpp"

namespace mstn {

inline constexpr int kNetInputs = 16;  // 9 group intensities + 7-way context
inline constexpr int kNetOutputs = kStateCount;

/// Input vector layout: slots 0..8 carry the group intensities e_1..e_9,
/// slots 9..15 the one-hot current-state context (baseline state order).
constexpr int group_input_slot(int group_index) { return group_index - 1; }
constexpr int context_input_slot(MentalState s) { return 9 + state_index(s); }

/// One weighted edge. Neurons are numbered inputs first (0..15), then
/// hidden units, then the 7 outputs. delay = 0 feeds within the current
/// step, delay = d feeds the source's activation from d steps earlier
/// (zero before the sequence starts).
struct Connection {
  int target;
  int source;
  int delay;
  auto operator<=>(const Connection&) const = default;
};

/// Network wiring. Construction sorts connections into canonical
/// (target, source, delay) order and validates them; a cycle through
/// zero-delay edges is a validation error.
class Topology {
 public:
  Topology(int n_hidden, std::vector<Connection> connections);

  /// Fully connected default: every input feeds every hidden unit and every
  /// output, hidden feeds output, and hidden feeds hidden one step delayed.
  static Topology standard(int n_hidden);

  int n_in() const { return kNetInputs; }
  int n_hidden() const { return n_hidden_; }
  int n_out() const { return kNetOutputs; }
  int neuron_count() const { return kNetInputs + n_hidden_ + kNetOutputs; }
  int computed_count() const { return n_hidden_ + kNetOutputs; }

  int hidden_id(int h) const { return kNetInputs + h; }
  int output_id(int o) const { return kNetInputs + n_hidden_ + o; }
  bool is_input(int id) const { return id < kNetInputs; }
  bool is_output(int id) const { return id >= kNetInputs + n_hidden_; }

  const std::vector<Connection>& connections() const { return connections_; }
  /// Computed-neuron ids in an order that respects zero-delay edges.
  const std::vector<int>& eval_order() const { return eval_order_; }
  /// Edges grouped by target, indices into connections().
  const std::vector<std::vector<int>>& incoming(/*computed*/) const {
    return incoming_;
  }

 private:
  int n_hidden_;
  std::vector<Connection> connections_;
  std::vector<int> eval_order_;
  std::vector<std::vector<int>> incoming_;  // per computed neuron
};

/// Weights parallel to Topology::connections(); shared across all unfolded
/// time steps of a sequence.
using NetWeights = std::vector<double>;
using GradientMap = std::vector<double>;

struct TrainingStep {
  std::array<double, kNetInputs> input;
  std::array<double, kNetOutputs> target;
};
using TrainingSequence = std::vector<TrainingStep>;

/// Pre-activations and activations for every computed neuron at every step.
struct ActivationTrace {
  std::vector<std::vector<double>> pre;  // [t][computed neuron]
  std::vector<std::vector<double>> act;  // [t][computed neuron]
  int steps() const { return static_cast<int>(act.size()); }
};

double logistic(double x);

ActivationTrace forward(const Topology& topo, const NetWeights& w,
                        const TrainingSequence& seq);

/// Half the summed squared output error over the whole sequence.
double sequence_loss(const Topology& topo, const NetWeights& w,
                     const TrainingSequence& seq);

/// Shared-weight gradients via backpropagation through time. Sign follows
/// the delta convention: update_weights ascends these to descend the loss.
GradientMap bptt_gradients(const Topology& topo, const NetWeights& w,
                           const TrainingSequence& seq);

/// w += alpha * gradient. alpha must be > 0 and all values finite.
void update_weights(NetWeights& w, const GradientMap& g, double alpha);

struct TrainConfig {
  double alpha = 0.05;
  int epochs = 200;
  double divergence_limit = 1e6;  // abort when an epoch's loss exceeds this
};

struct TrainResult {
  NetWeights weights;
  std::vector<double> loss_curve;  // summed sequence losses per epoch
};

/// Gradient training in deterministic order: each epoch walks the
/// sequences in order and applies one whole-sequence update per sequence.
/// Throws NumericalError when the loss diverges.
TrainResult train(const Topology& topo, NetWeights initial,
                  const std::vector<TrainingSequence>& data,
                  const TrainConfig& config);

/// Seeded starting weights: context-input -> output edges carry
/// scale * base probability for the corresponding state pair, every other
/// weight is uniform in [-0.1, 0.1].
NetWeights init_weights(const Topology& topo, const TransitionMatrix& base,
                        double scale, std::uint64_t seed);

/// Versioned text document: topology header plus one line per connection
/// in canonical order. Round-trips bit-exactly.
std::string serialize_weights(const Topology& topo, const NetWeights& w);
std::pair<Topology, NetWeights> parse_weights(const std::string& text);

}  // namespace mstn
