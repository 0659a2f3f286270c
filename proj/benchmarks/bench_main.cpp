// Microbenchmarks for the hot paths: the recurrent forward pass, gradient
// computation, matrix extraction by exhaustive probing, and episode cleanup.

#include <benchmark/benchmark.h>

#include "mstn/pattern_frequency.hpp"
#include "mstn/profit_sharing.hpp"
#include "mstn/rnn.hpp"
#include "mstn/rng.hpp"

namespace {

using namespace mstn;

NetWeights random_weights(const Topology& topo, Rng& rng) {
  NetWeights w(topo.connections().size());
  for (double& v : w) v = uniform_range(rng, -0.5, 0.5);
  return w;
}

TrainingSequence random_sequence(int steps, Rng& rng) {
  TrainingSequence seq(steps);
  for (auto& step : seq) {
    for (auto& v : step.input) v = uniform_range(rng, 0.0, 1.0);
    for (auto& v : step.target) v = uniform_range(rng, 0.0, 1.0);
  }
  return seq;
}

Episode random_episode(int length, Rng& rng) {
  Episode e;
  e.reward = 1.0;
  for (int i = 0; i < length; ++i)
    e.rules.push_back(
        Rule::from_index(static_cast<int>(uniform_index(rng, kRuleCount))));
  return e;
}

void BM_ForwardPass(benchmark::State& state) {
  Rng rng(1);
  const Topology topo = Topology::standard(static_cast<int>(state.range(0)));
  const NetWeights w = random_weights(topo, rng);
  const TrainingSequence seq = random_sequence(8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(forward(topo, w, seq));
}
BENCHMARK(BM_ForwardPass)->Arg(8)->Arg(14)->Arg(28);

void BM_BpttGradients(benchmark::State& state) {
  Rng rng(2);
  const Topology topo = Topology::standard(static_cast<int>(state.range(0)));
  const NetWeights w = random_weights(topo, rng);
  const TrainingSequence seq = random_sequence(8, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(bptt_gradients(topo, w, seq));
}
BENCHMARK(BM_BpttGradients)->Arg(8)->Arg(14)->Arg(28);

void BM_MatrixFromNet(benchmark::State& state) {
  Rng rng(3);
  const Topology topo = Topology::standard(14);
  const NetWeights w = random_weights(topo, rng);
  const FreqMode mode = state.range(0) == 0 ? FreqMode::MeanActivation
                                            : FreqMode::ArgmaxCount;
  for (auto _ : state)
    benchmark::DoNotOptimize(transition_matrix_from_net(topo, w, mode));
}
BENCHMARK(BM_MatrixFromNet)->Arg(0)->Arg(1);

void BM_RemoveDetours(benchmark::State& state) {
  Rng rng(4);
  const Episode e = random_episode(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(remove_detours(e));
}
BENCHMARK(BM_RemoveDetours)->Arg(16)->Arg(64)->Arg(256);

void BM_Reinforce(benchmark::State& state) {
  Rng rng(5);
  const Episode e = random_episode(static_cast<int>(state.range(0)), rng);
  const ReinforceConfig cfg;
  WeightTable weights;
  for (auto _ : state) {
    reinforce(weights, e, cfg);
    benchmark::DoNotOptimize(weights);
  }
}
BENCHMARK(BM_Reinforce)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
