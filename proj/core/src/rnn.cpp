#include "mstn/rnn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mstn/errors.hpp"
#include "mstn/rng.hpp"
#include "mstn/util.hpp"

namespace mstn {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Topology::Topology(int n_hidden, std::vector<Connection> connections)
    : n_hidden_(n_hidden), connections_(std::move(connections)) {
  if (n_hidden_ < 0) throw ValidationError("hidden unit count must be >= 0");
  std::sort(connections_.begin(), connections_.end());
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    const auto& c = connections_[i];
    if (c.target < kNetInputs || c.target >= neuron_count())
      throw ValidationError("connection target is not a computed neuron");
    if (c.source < 0 || c.source >= neuron_count())
      throw ValidationError("connection source out of range");
    if (c.delay < 0) throw ValidationError("connection delay must be >= 0");
    if (i > 0 && connections_[i - 1] == c)
      throw ValidationError("duplicate connection");
  }

  incoming_.assign(computed_count(), {});
  for (std::size_t i = 0; i < connections_.size(); ++i)
    incoming_[connections_[i].target - kNetInputs].push_back(
        static_cast<int>(i));

  // Kahn's algorithm over zero-delay edges between computed neurons.
  std::vector<int> indegree(computed_count(), 0);
  std::vector<std::vector<int>> forward_edges(computed_count());
  for (const auto& c : connections_) {
    if (c.delay != 0 || is_input(c.source)) continue;
    forward_edges[c.source - kNetInputs].push_back(c.target - kNetInputs);
    ++indegree[c.target - kNetInputs];
  }
  std::vector<int> ready;
  for (int n = 0; n < computed_count(); ++n)
    if (indegree[n] == 0) ready.push_back(n);
  eval_order_.reserve(computed_count());
  for (std::size_t head = 0; head < ready.size(); ++head) {
    const int n = ready[head];
    eval_order_.push_back(n + kNetInputs);
    for (int succ : forward_edges[n])
      if (--indegree[succ] == 0) ready.push_back(succ);
  }
  if (static_cast<int>(eval_order_.size()) != computed_count())
    throw ValidationError("zero-delay connections form a cycle");
}

Topology Topology::standard(int n_hidden) {
  if (n_hidden < 1) throw ValidationError("hidden unit count must be >= 1");
  std::vector<Connection> cs;
  const int first_hidden = kNetInputs;
  const int first_output = kNetInputs + n_hidden;
  for (int h = 0; h < n_hidden; ++h) {
    for (int i = 0; i < kNetInputs; ++i)
      cs.push_back({first_hidden + h, i, 0});
    for (int g = 0; g < n_hidden; ++g)
      cs.push_back({first_hidden + h, first_hidden + g, 1});
  }
  for (int o = 0; o < kNetOutputs; ++o) {
    for (int h = 0; h < n_hidden; ++h)
      cs.push_back({first_output + o, first_hidden + h, 0});
    for (int i = 0; i < kNetInputs; ++i)
      cs.push_back({first_output + o, i, 0});
  }
  return Topology(n_hidden, std::move(cs));
}

namespace {

// Activation of a source neuron at a given step; inputs read the stimulus,
// anything before the first step is 0.
inline double source_value(const Topology& topo, const TrainingSequence& seq,
                           const ActivationTrace& trace, int source, int t) {
  if (t < 0) return 0.0;
  if (topo.is_input(source)) return seq[t].input[source];
  return trace.act[t][source - kNetInputs];
}

void check_sizes(const Topology& topo, const NetWeights& w) {
  if (w.size() != topo.connections().size())
    throw ValidationError("weight vector does not match topology");
}

}  // namespace

ActivationTrace forward(const Topology& topo, const NetWeights& w,
                        const TrainingSequence& seq) {
  check_sizes(topo, w);
  const int steps = static_cast<int>(seq.size());
  ActivationTrace trace;
  trace.pre.assign(steps, std::vector<double>(topo.computed_count(), 0.0));
  trace.act.assign(steps, std::vector<double>(topo.computed_count(), 0.0));
  for (int t = 0; t < steps; ++t) {
    for (int id : topo.eval_order()) {
      const int n = id - kNetInputs;
      double x = 0.0;
      for (int ci : topo.incoming()[n]) {
        const auto& c = topo.connections()[ci];
        x += w[ci] * source_value(topo, seq, trace, c.source, t - c.delay);
      }
      trace.pre[t][n] = x;
      trace.act[t][n] = logistic(x);
    }
  }
  return trace;
}

double sequence_loss(const Topology& topo, const NetWeights& w,
                     const TrainingSequence& seq) {
  const auto trace = forward(topo, w, seq);
  double loss = 0.0;
  for (int t = 0; t < trace.steps(); ++t)
    for (int o = 0; o < topo.n_out(); ++o) {
      const double diff =
          seq[t].target[o] - trace.act[t][topo.output_id(o) - kNetInputs];
      loss += diff * diff;
    }
  return 0.5 * loss;
}

GradientMap bptt_gradients(const Topology& topo, const NetWeights& w,
                           const TrainingSequence& seq) {
  check_sizes(topo, w);
  const auto trace = forward(topo, w, seq);
  const int steps = trace.steps();

  // Outgoing edges per computed source neuron, for delta propagation.
  std::vector<std::vector<int>> outgoing(topo.computed_count());
  for (std::size_t i = 0; i < topo.connections().size(); ++i) {
    const auto& c = topo.connections()[i];
    if (!topo.is_input(c.source))
      outgoing[c.source - kNetInputs].push_back(static_cast<int>(i));
  }

  std::vector<std::vector<double>> delta(
      steps, std::vector<double>(topo.computed_count(), 0.0));
  for (int t = steps - 1; t >= 0; --t) {
    // reverse evaluation order: successors first within the step
    for (auto it = topo.eval_order().rbegin(); it != topo.eval_order().rend();
         ++it) {
      const int id = *it;
      const int n = id - kNetInputs;
      double sum = 0.0;
      if (topo.is_output(id))
        sum += seq[t].target[id - kNetInputs - topo.n_hidden()] -
               trace.act[t][n];
      for (int ci : outgoing[n]) {
        const auto& c = topo.connections()[ci];
        const int tt = t + c.delay;
        if (tt < steps) sum += w[ci] * delta[tt][c.target - kNetInputs];
      }
      const double y = trace.act[t][n];
      delta[t][n] = sum * y * (1.0 - y);
    }
  }

  GradientMap grad(w.size(), 0.0);
  for (std::size_t i = 0; i < topo.connections().size(); ++i) {
    const auto& c = topo.connections()[i];
    double g = 0.0;
    for (int t = 0; t < steps; ++t)
      g += delta[t][c.target - kNetInputs] *
           source_value(topo, seq, trace, c.source, t - c.delay);
    grad[i] = g;
  }
  return grad;
}

void update_weights(NetWeights& w, const GradientMap& g, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("learning rate must be > 0");
  if (w.size() != g.size())
    throw ValidationError("gradient does not match weight vector");
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] += alpha * g[i];
    if (!std::isfinite(w[i]))
      throw NumericalError("non-finite weight after update");
  }
}

TrainResult train(const Topology& topo, NetWeights initial,
                  const std::vector<TrainingSequence>& data,
                  const TrainConfig& config) {
  if (config.epochs < 1) throw ValidationError("epoch count must be >= 1");
  if (!(config.alpha > 0.0)) throw ValidationError("learning rate must be > 0");
  check_sizes(topo, initial);
  for (const auto& seq : data)
    if (seq.empty()) throw ValidationError("empty training sequence");

  TrainResult result;
  result.weights = std::move(initial);
  result.loss_curve.reserve(config.epochs);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (const auto& seq : data) {
      epoch_loss += sequence_loss(topo, result.weights, seq);
      const auto grad = bptt_gradients(topo, result.weights, seq);
      update_weights(result.weights, grad, config.alpha);
    }
    if (!std::isfinite(epoch_loss) || epoch_loss > config.divergence_limit)
      throw NumericalError("training diverged at epoch " +
                           std::to_string(epoch + 1) + " (loss " +
                           std::to_string(epoch_loss) + ")");
    result.loss_curve.push_back(epoch_loss);
  }
  return result;
}

NetWeights init_weights(const Topology& topo, const TransitionMatrix& base,
                        double scale, std::uint64_t seed) {
  Rng rng(seed);
  NetWeights w(topo.connections().size());
  for (std::size_t i = 0; i < topo.connections().size(); ++i) {
    const auto& c = topo.connections()[i];
    const bool context_to_output =
        topo.is_output(c.target) && topo.is_input(c.source) && c.source >= 9;
    if (context_to_output) {
      const int from = c.source - 9;
      const int to = c.target - kNetInputs - topo.n_hidden();
      w[i] = scale * base.rows()[from][to];
    } else {
      w[i] = uniform_range(rng, -0.1, 0.1);
    }
  }
  return w;
}

std::string serialize_weights(const Topology& topo, const NetWeights& w) {
  check_sizes(topo, w);
  std::ostringstream out;
  out << "mstn-rnn-weights v1\n";
  out << "hidden " << topo.n_hidden() << "\n";
  out << "connections " << topo.connections().size() << "\n";
  for (std::size_t i = 0; i < topo.connections().size(); ++i) {
    const auto& c = topo.connections()[i];
    out << c.target << ' ' << c.source << ' ' << c.delay << ' '
        << format_exact(w[i]) << "\n";
  }
  return out.str();
}

std::pair<Topology, NetWeights> parse_weights(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "mstn-rnn-weights v1")
    throw ValidationError("unrecognized weight document version");
  std::string key;
  int n_hidden = -1;
  std::size_t count = 0;
  in >> key >> n_hidden;
  if (key != "hidden" || n_hidden < 0)
    throw ValidationError("weight document missing hidden count");
  in >> key >> count;
  if (key != "connections")
    throw ValidationError("weight document missing connection count");
  std::vector<std::pair<Connection, double>> entries;
  entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Connection c{};
    std::string value;
    if (!(in >> c.target >> c.source >> c.delay >> value))
      throw ValidationError("weight document truncated at connection " +
                            std::to_string(i));
    entries.emplace_back(c, parse_exact(value));
  }
  std::vector<Connection> cs;
  cs.reserve(count);
  for (const auto& [c, v] : entries) cs.push_back(c);
  Topology topo(n_hidden, std::move(cs));
  // Topology sorts into canonical order; align the weights with it.
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  NetWeights w;
  w.reserve(count);
  for (const auto& [c, v] : entries) w.push_back(v);
  return {std::move(topo), std::move(w)};
}

}  // namespace mstn
