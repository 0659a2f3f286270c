#include "mstn/scenario_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mstn/config.hpp"
#include "mstn/errors.hpp"
#include "mstn/util.hpp"

namespace mstn {

using json = nlohmann::json;

namespace {

constexpr const char* kScenarioVersion = "mstn-scenario/1";
constexpr const char* kBundleVersion = "mstn-bundle/1";
constexpr std::uint64_t kBaselineChecksum = 0x68740a6147c2b75eull;

json parse_json(const std::string& text, const std::string& origin) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ValidationError(origin + ": not valid JSON");
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

EmotionVector EventSpec::to_vector() const {
  if (direct) return EmotionVector::from_values(*direct);
  return aggregate(emotions);
}

ScenarioFile parse_scenario(const std::string& text,
                            const std::string& origin) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object() || doc.value("version", "") != kScenarioVersion)
    throw ValidationError(origin + ": missing or unsupported version (want " +
                          std::string(kScenarioVersion) + ")");
  ScenarioFile scenario;
  scenario.name = doc.value("name", "unnamed");
  if (!doc.contains("episodes") || !doc["episodes"].is_array() ||
      doc["episodes"].empty())
    throw ValidationError(origin + ": scenario needs at least one episode");

  int ei = 0;
  for (const auto& ep : doc["episodes"]) {
    ++ei;
    const std::string where = origin + ": episode " + std::to_string(ei);
    if (!ep.is_object() || !ep.contains("events") ||
        !ep["events"].is_array() || ep["events"].empty())
      throw ValidationError(where + " needs at least one event");
    EpisodeSpec episode;
    int vi = 0;
    for (const auto& ev : ep["events"]) {
      ++vi;
      const std::string at = where + ", event " + std::to_string(vi);
      EventSpec event;
      if (!ev.is_object()) throw ValidationError(at + ": not an object");
      event.note = ev.value("note", "");
      if (ev.contains("vector")) {
        if (!ev["vector"].is_array() || ev["vector"].size() != kGroupCount)
          throw ValidationError(at + ": vector must have 9 entries");
        std::array<double, kGroupCount> v{};
        for (int k = 0; k < kGroupCount; ++k) {
          if (!ev["vector"][k].is_number())
            throw ValidationError(at + ": vector entries must be numbers");
          v[k] = ev["vector"][k].get<double>();
          if (v[k] < 0.0)
            throw ValidationError(at + ": negative intensity in vector");
        }
        event.direct = v;
      } else if (ev.contains("emotions")) {
        if (!ev["emotions"].is_object())
          throw ValidationError(at + ": emotions must be an object");
        for (const auto& [name, value] : ev["emotions"].items()) {
          const auto emo = parse_emotion(name);
          if (!emo)
            throw ValidationError(at + ": unknown emotion '" + name + "'");
          if (!value.is_number())
            throw ValidationError(at + ": intensity for '" + name +
                                  "' must be a number");
          const double intensity = value.get<double>();
          if (intensity < 0.0)
            throw ValidationError(at + ": negative intensity for '" + name +
                                  "'");
          event.emotions.emplace_back(*emo, intensity);
        }
      }
      // neither key present: an idle event, kept as all-zero
      episode.events.push_back(std::move(event));
    }
    scenario.episodes.push_back(std::move(episode));
  }
  return scenario;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string());
}

BaselineMatrix parse_baseline(const std::string& text,
                              const std::string& origin) {
  Matrix7 verbatim{};
  std::istringstream in(text);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (row >= kStateCount)
      throw ValidationError(origin + ": more than 7 data rows");
    std::istringstream cells(line);
    std::string cell;
    int col = 0;
    while (std::getline(cells, cell, ',')) {
      if (col >= kStateCount)
        throw ValidationError(origin + ": more than 7 columns in row " +
                              std::to_string(row + 1));
      try {
        verbatim[row][col] = std::stod(cell);
      } catch (const std::exception&) {
        throw ValidationError(origin + ": bad cell '" + cell + "'");
      }
      ++col;
    }
    if (col != kStateCount)
      throw ValidationError(origin + ": row " + std::to_string(row + 1) +
                            " has " + std::to_string(col) + " columns");
    ++row;
  }
  if (row != kStateCount)
    throw ValidationError(origin + ": expected 7 data rows, got " +
                          std::to_string(row));

  // checksum over the values as printed (3 decimals) catches tampering
  std::string canon;
  for (int i = 0; i < kStateCount; ++i) {
    if (i) canon += '\n';
    for (int j = 0; j < kStateCount; ++j) {
      if (j) canon += ',';
      canon += format_fixed(verbatim[i][j], 3);
    }
  }
  if (fnv1a64(canon) != kBaselineChecksum)
    throw ValidationError(origin +
                          ": checksum mismatch, fixture corrupted or edited");

  Matrix7 renorm{};
  for (int i = 0; i < kStateCount; ++i) {
    double sum = 0.0;
    for (double v : verbatim[i]) sum += v;
    // three-decimal rounding in the published rows leaves sums as far as
    // 0.003 from 1 (the happy row is 0.997), so allow a little slack
    if (std::abs(sum - 1.0) > 0.005)
      throw ValidationError(origin + ": row " + std::to_string(i + 1) +
                            " sums to " + format_fixed(sum, 3));
    for (int j = 0; j < kStateCount; ++j) renorm[i][j] = verbatim[i][j] / sum;
  }
  return {verbatim, TransitionMatrix::from_rows(renorm)};
}

BaselineMatrix load_baseline(const std::filesystem::path& path) {
  return parse_baseline(read_file(path), path.string());
}

std::filesystem::path default_baseline_path() {
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates;
  if (const char* dir = std::getenv("MSTN_DATA_DIR"))
    candidates.emplace_back(fs::path(dir) / "baseline_transitions.csv");
  candidates.emplace_back("data/baseline_transitions.csv");
  candidates.emplace_back("../data/baseline_transitions.csv");
  for (const auto& p : candidates)
    if (fs::exists(p)) return p;
  throw ValidationError(
      "baseline matrix not found; set MSTN_DATA_DIR or pass --baseline");
}

std::string serialize_weight_table(const WeightTable& w) {
  json doc = json::object();
  for (int i = 0; i < kRuleCount; ++i) {
    const Rule r = Rule::from_index(i);
    const std::string key = std::string(state_name(r.input)) + ":" +
                            std::to_string(r.action.index());
    doc[key] = format_exact(w.at(r));
  }
  return doc.dump(2);
}

WeightTable parse_weight_table(const std::string& text) {
  const json doc = parse_json(text, "weight table");
  WeightTable w;
  int seen = 0;
  for (const auto& [key, value] : doc.items()) {
    const auto colon = key.find(':');
    if (colon == std::string::npos)
      throw ValidationError("weight table key '" + key +
                            "' is not state:group");
    const auto state = parse_state(key.substr(0, colon));
    if (!state)
      throw ValidationError("weight table key '" + key +
                            "' has an unknown state");
    int group = 0;
    try {
      group = std::stoi(key.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("weight table key '" + key +
                            "' has a bad group index");
    }
    if (!value.is_string())
      throw ValidationError("weight table value for '" + key +
                            "' must be a string");
    w.set({*state, EmotionGroup(group)},
          parse_exact(value.get<std::string>()));
    ++seen;
  }
  if (seen != kRuleCount)
    throw ValidationError("weight table has " + std::to_string(seen) +
                          " entries, expected " + std::to_string(kRuleCount));
  return w;
}

std::string serialize_bundle(const ModelBundle& bundle) {
  json doc;
  doc["version"] = kBundleVersion;
  doc["provenance"] = {{"seed", bundle.provenance.seed},
                       {"config_hash", bundle.provenance.config_hash},
                       {"scenario", bundle.provenance.scenario}};
  doc["config"] = bundle.config_text;
  doc["rnn_weights"] = serialize_weights(bundle.topo, bundle.rnn_weights);
  doc["ps_weights"] = json::parse(serialize_weight_table(bundle.ps_weights));
  json freq = json::array();
  for (const auto& row : bundle.frequency.rows()) {
    json r = json::array();
    for (double v : row) r.push_back(format_exact(v));
    freq.push_back(r);
  }
  doc["frequency"] = freq;
  return doc.dump(2) + "\n";
}

void save_bundle(const ModelBundle& bundle,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write bundle: " + path.string());
  out << serialize_bundle(bundle);
  if (!out) throw ValidationError("short write on bundle: " + path.string());
}

BundleLoadResult parse_bundle(const std::string& text,
                              const std::string& origin) {
  const json doc = parse_json(text, origin);
  if (!doc.is_object() || doc.value("version", "") != kBundleVersion)
    throw ValidationError(origin + ": missing or unsupported bundle version");
  for (const char* key :
       {"provenance", "config", "rnn_weights", "ps_weights", "frequency"})
    if (!doc.contains(key))
      throw ValidationError(origin + ": bundle is missing '" +
                            std::string(key) + "'");

  Provenance prov;
  prov.seed = doc["provenance"].value("seed", 0ull);
  prov.config_hash = doc["provenance"].value("config_hash", "");
  prov.scenario = doc["provenance"].value("scenario", "");

  auto [topo, weights] =
      parse_weights(doc["rnn_weights"].get<std::string>());
  WeightTable ps = parse_weight_table(doc["ps_weights"].dump());

  if (!doc["frequency"].is_array() || doc["frequency"].size() != kStateCount)
    throw ValidationError(origin + ": frequency matrix must have 7 rows");
  Matrix7 freq{};
  for (int i = 0; i < kStateCount; ++i) {
    const auto& row = doc["frequency"][i];
    if (!row.is_array() || row.size() != kStateCount)
      throw ValidationError(origin + ": frequency row " +
                            std::to_string(i + 1) + " must have 7 entries");
    for (int j = 0; j < kStateCount; ++j)
      freq[i][j] = parse_exact(row[j].get<std::string>());
  }

  BundleLoadResult result{
      ModelBundle{prov, doc["config"].get<std::string>(), std::move(topo),
                  std::move(weights), ps, TransitionMatrix::from_rows(freq)},
      {}};

  // provenance self-check: warn, never fail
  const auto cfg = parse_config(result.bundle.config_text, origin + " config");
  if (cfg.hash() != prov.config_hash)
    result.warnings.push_back(
        origin + ": provenance config hash does not match embedded config (" +
        prov.config_hash + " vs " + cfg.hash() + ")");
  return result;
}

BundleLoadResult load_bundle(const std::filesystem::path& path) {
  return parse_bundle(read_file(path), path.string());
}

}  // namespace mstn
