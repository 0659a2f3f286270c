#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mstn/emotion.hpp"
#include "mstn/mstn.hpp"
#include "mstn/profit_sharing.hpp"
#include "mstn/rnn.hpp"

namespace mstn {

/// One stimulus: named emotion intensities, or a raw group 9-vector as an
/// escape hatch. An empty event (no intensities at all) is an idle step.
struct EventSpec {
  std::vector<std::pair<Emotion, double>> emotions;
  std::optional<std::array<double, kGroupCount>> direct;
  std::string note;

  EmotionVector to_vector() const;
};

struct EpisodeSpec {
  std::vector<EventSpec> events;
};

struct ScenarioFile {
  std::string name;
  std::vector<EpisodeSpec> episodes;
};

/// Scenario documents are JSON with an explicit version field. Validation
/// errors name the offending episode/event.
ScenarioFile parse_scenario(const std::string& text, const std::string& origin);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// The survey-derived default transition matrix, shipped as a data file.
/// The printed values are kept verbatim for display (three-decimal rounding
/// leaves row sums up to 0.003 away from 1); computation uses the
/// row-renormalized copy.
struct BaselineMatrix {
  Matrix7 verbatim;
  TransitionMatrix renormalized;
};

BaselineMatrix parse_baseline(const std::string& text,
                              const std::string& origin);
/// Checks an FNV-1a checksum over the parsed values; a mismatch means the
/// fixture was tampered with or corrupted.
BaselineMatrix load_baseline(const std::filesystem::path& path);

/// Search order: $MSTN_DATA_DIR, ./data, ../data.
std::filesystem::path default_baseline_path();

/// Rule weights as a text document keyed by "state:group".
std::string serialize_weight_table(const WeightTable& w);
WeightTable parse_weight_table(const std::string& text);

struct Provenance {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string scenario;
};

/// Everything a training run produces, saved as one document.
struct ModelBundle {
  Provenance provenance;
  std::string config_text;  // flat key/value document the run used
  Topology topo;
  NetWeights rnn_weights;
  WeightTable ps_weights;
  TransitionMatrix frequency;
};

std::string serialize_bundle(const ModelBundle& bundle);
void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);

struct BundleLoadResult {
  ModelBundle bundle;
  /// Non-fatal findings, e.g. a provenance hash that no longer matches the
  /// embedded config.
  std::vector<std::string> warnings;
};

BundleLoadResult parse_bundle(const std::string& text,
                              const std::string& origin);
BundleLoadResult load_bundle(const std::filesystem::path& path);

}  // namespace mstn
