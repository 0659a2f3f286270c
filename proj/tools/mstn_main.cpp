// Command-line front end: simulate, train, freq, traits, check.
// Exit codes: 0 success, 2 validation problem, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mstn/config.hpp"
#include "mstn/errors.hpp"
#include "mstn/pattern_frequency.hpp"
#include "mstn/pipeline.hpp"
#include "mstn/render.hpp"
#include "mstn/rng.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string config_path;
  std::string baseline_path;
  std::string bundle_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> format;
  std::optional<std::string> table_order;
  int self_play_steps = 0;
};

mstn::PipelineConfig resolve_config(const Options& opt,
                                    const std::string& base_text = "") {
  mstn::PipelineConfig cfg;
  if (!base_text.empty()) cfg = mstn::parse_config(base_text, "bundle config");
  if (!opt.config_path.empty()) cfg = mstn::load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.mode) cfg.freq_mode = mstn::parse_freq_mode(*opt.mode);
  if (opt.format) cfg.format = mstn::parse_format(*opt.format);
  if (opt.table_order)
    cfg.table_order = mstn::parse_table_order(*opt.table_order);
  cfg.validate();
  return cfg;
}

mstn::BaselineMatrix resolve_baseline(const Options& opt) {
  const auto path = opt.baseline_path.empty()
                        ? mstn::default_baseline_path()
                        : std::filesystem::path(opt.baseline_path);
  return mstn::load_baseline(path);
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out)
    throw mstn::ValidationError("cannot write output: " + opt.out_path);
  out << text;
}

mstn::BundleLoadResult load_bundle_verbose(const std::string& path) {
  auto loaded = mstn::load_bundle(path);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
  return loaded;
}

int cmd_simulate(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const auto baseline = resolve_baseline(opt);
  if (opt.self_play_steps > 0) {
    mstn::WeightTable weights;
    if (!opt.bundle_path.empty())
      weights = load_bundle_verbose(opt.bundle_path).bundle.ps_weights;
    mstn::Rng rng(cfg.seed);
    const auto trace =
        mstn::self_play(weights, mstn::MentalState::Quiet,
                        opt.self_play_steps, cfg.ps.epsilon, rng);
    emit(mstn::render_self_play(trace, cfg), opt);
    return 0;
  }
  const auto scenario = mstn::load_scenario(opt.scenario);
  const auto report = mstn::simulate_run(scenario, baseline, cfg);
  emit(mstn::render_report(report), opt);
  return 0;
}

int cmd_train(const Options& opt) {
  const auto cfg = resolve_config(opt);
  const auto baseline = resolve_baseline(opt);
  const auto scenario = mstn::load_scenario(opt.scenario);
  auto outcome = mstn::train_run(scenario, baseline, cfg);
  if (!opt.bundle_path.empty()) {
    mstn::save_bundle(outcome.bundle, opt.bundle_path);
    std::cerr << "bundle written to " << opt.bundle_path << "\n";
  }
  emit(mstn::render_report(outcome.report), opt);
  return 0;
}

int cmd_freq(const Options& opt) {
  auto loaded = load_bundle_verbose(opt.bundle_path);
  const auto cfg = resolve_config(opt, loaded.bundle.config_text);
  const auto matrix = mstn::transition_matrix_from_net(
      loaded.bundle.topo, loaded.bundle.rnn_weights, cfg.freq_mode);
  emit(mstn::render_frequency(matrix, cfg), opt);
  return 0;
}

int cmd_traits(const Options& opt) {
  auto loaded = load_bundle_verbose(opt.bundle_path);
  const auto cfg = resolve_config(opt, loaded.bundle.config_text);
  emit(mstn::render_traits(loaded.bundle.frequency, cfg), opt);
  return 0;
}

int cmd_check(const Options& opt) {
  const auto cfg = resolve_config(opt);
  int failures = 0;
  auto outcome = [&](const std::string& name, bool ok,
                     const std::string& why = "") {
    if (ok) {
      std::cout << "[ ok ] " << name << "\n";
    } else {
      ++failures;
      std::cout << "[fail] " << name << (why.empty() ? "" : ": " + why)
                << "\n";
    }
  };

  try {
    resolve_baseline(opt);
    outcome("baseline-fixture", true);
  } catch (const std::exception& e) {
    outcome("baseline-fixture", false, e.what());
  }

  try {
    bool ok = true;
    for (int w = 1; w <= cfg.ps.max_episode_length && ok; ++w)
      ok = mstn::check_suppression(cfg.ps, w);
    outcome("credit-suppression", ok,
            ok ? "" : "tail credit not suppressed at configured l, m");
  } catch (const std::exception& e) {
    outcome("credit-suppression", false, e.what());
  }

  try {
    const auto topo = mstn::Topology::standard(3);
    const auto base = mstn::TransitionMatrix::uniform();
    auto w = mstn::init_weights(topo, base, 1.0, cfg.seed);
    mstn::Rng rng(cfg.seed + 1);
    mstn::TrainingSequence seq(2);
    for (auto& step : seq) {
      for (auto& v : step.input) v = mstn::uniform_range(rng, 0.0, 1.0);
      for (auto& v : step.target) v = mstn::uniform_range(rng, 0.0, 1.0);
    }
    const auto grad = mstn::bptt_gradients(topo, w, seq);
    const double eps = 1e-5;
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto wp = w, wm = w;
      wp[i] += eps;
      wm[i] -= eps;
      const double numeric = -(mstn::sequence_loss(topo, wp, seq) -
                               mstn::sequence_loss(topo, wm, seq)) /
                             (2 * eps);
      const double scale =
          std::max({1e-12, std::abs(numeric), std::abs(grad[i])});
      worst = std::max(worst, std::abs(grad[i] - numeric) / scale);
    }
    outcome("gradient-spot-check", worst < 1e-4,
            "max relative error " + std::to_string(worst));
  } catch (const std::exception& e) {
    outcome("gradient-spot-check", false, e.what());
  }

  outcome("pattern-count",
          mstn::enumerate_patterns().size() == mstn::kPatternCount);

  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seven-state mood transition learner"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_scenario) {
    if (with_scenario)
      cmd->add_option("--scenario", opt.scenario, "scenario document")
          ->required();
    cmd->add_option("--config", opt.config_path, "flat key/value config file");
    cmd->add_option("--seed", opt.seed, "seed override");
    cmd->add_option("--format", opt.format, "text, csv or structured");
    cmd->add_option("--table-order", opt.table_order, "paper1 or paper3");
    cmd->add_option("--baseline", opt.baseline_path,
                    "baseline transition matrix fixture");
    cmd->add_option("--out", opt.out_path, "write output here");
  };

  auto* simulate = app.add_subcommand(
      "simulate", "replay a scenario without learning");
  add_common(simulate, false);
  simulate->add_option("--scenario", opt.scenario, "scenario document");
  simulate->add_option("--self-play", opt.self_play_steps,
                       "generate this many steps from rule weights");
  simulate->add_option("--bundle", opt.bundle_path,
                       "bundle with rule weights for self-play");

  auto* train =
      app.add_subcommand("train", "full learning pass over a scenario");
  add_common(train, true);
  train->add_option("--mode", opt.mode, "frequency mode: mean or argmax");
  train->add_option("--bundle", opt.bundle_path, "write trained bundle here");

  auto* freq = app.add_subcommand(
      "freq", "frequency matrix from a trained bundle");
  freq->add_option("bundle", opt.bundle_path, "trained bundle")->required();
  add_common(freq, false);
  freq->add_option("--mode", opt.mode, "frequency mode: mean or argmax");

  auto* traits =
      app.add_subcommand("traits", "trait scores from a trained bundle");
  traits->add_option("bundle", opt.bundle_path, "trained bundle")->required();
  add_common(traits, false);

  auto* check = app.add_subcommand("check", "internal consistency checks");
  add_common(check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      if (opt.scenario.empty() && opt.self_play_steps <= 0)
        throw mstn::ValidationError(
            "simulate needs --scenario or --self-play N");
      return cmd_simulate(opt);
    }
    if (train->parsed()) return cmd_train(opt);
    if (freq->parsed()) return cmd_freq(opt);
    if (traits->parsed()) return cmd_traits(opt);
    if (check->parsed()) return cmd_check(opt);
  } catch (const mstn::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mstn::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
